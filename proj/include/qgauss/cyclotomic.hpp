#pragma once

#include <map>
#include <string>
#include <utility>

#include "qgauss/common.hpp"

namespace qgauss {

// Exact element of the cyclotomic field Q(zeta_L) for a dynamic conductor L,
// stored as a dense length-L coefficient vector over the power basis
// {zeta_L^k : 0 <= k < L}. Canonicalization reduces modulo the L-th
// cyclotomic polynomial; equality compares canonical forms after promoting
// both operands to the lcm of their conductors. Conductors only ever grow
// (via lcm); no minimization is attempted.
class Cyclotomic {
 public:
  Cyclotomic() : L_(1), c_(1, Rational(0)) {}
  explicit Cyclotomic(const Rational& r) : L_(1), c_(1, r) {}
  explicit Cyclotomic(const Int& z) : L_(1), c_(1, Rational(z)) {}
  explicit Cyclotomic(long z) : L_(1), c_(1, Rational(z)) {}

  // exp(2*pi*i*r): the root of unity of order dividing den(r).
  static Cyclotomic e(const Rational& r);
  // Build directly from a dense power-basis coefficient vector of length L.
  static Cyclotomic from_coeffs(long L, RatVec coeffs);
  static Cyclotomic zero() { return Cyclotomic(); }
  static Cyclotomic one() { return Cyclotomic(Rational(1)); }

  long conductor() const { return L_; }
  const RatVec& coeffs() const { return c_; }

  // Reduce the representing polynomial modulo Phi_L in place. The result is
  // the unique representative of degree < phi(L).
  Cyclotomic& canonicalize();
  Cyclotomic canonical() const {
    Cyclotomic t(*this);
    t.canonicalize();
    return t;
  }

  // Promote to conductor M (a multiple of L). Lossless.
  Cyclotomic promoted(long M) const;

  bool is_zero() const;
  bool is_rational() const;
  // Requires is_rational(); the constant value.
  Rational rational_value() const;
  bool is_integer() const;
  Int integer_value() const;

  // Complex conjugation: zeta_L -> zeta_L^{-1}. An exact field automorphism.
  Cyclotomic conj() const;

  Cyclotomic pow(unsigned long k) const;

  // Floating evaluation with relative error <= 10^(-digits).
  std::pair<double, double> approx(int digits = 15) const;

  // Human-readable canonical rendering, e.g. "2*e(1/8) + e(1/4)".
  std::string str() const;

  Cyclotomic operator-() const;
  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Rational& r);
  Cyclotomic& operator/=(const Rational& r);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Rational& r) { return a *= r; }
  friend Cyclotomic operator*(const Rational& r, Cyclotomic a) { return a *= r; }
  friend Cyclotomic operator/(Cyclotomic a, const Rational& r) { return a /= r; }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

 private:
  long L_;
  RatVec c_;  // size L_
};

// Shorthand for Cyclotomic::e with an explicit fraction.
Cyclotomic e_frac(const Int& num, const Int& den);

// Exact square root of a nonzero integer, on the principal branch
// (positive real for m > 0; for m < 0 equals sqrt_int(-m) * e(1/4)).
Cyclotomic sqrt_int(const Int& m);

// m^{n/2} for m > 0: integer power for even n, else m^{(n-1)/2} * sqrt(m).
Cyclotomic sqrt_pow(const Int& m, long n);

// i^{n/2} = e(n/8); provided for readability at call sites.
inline Cyclotomic i_pow_half(long n) { return e_frac(Int(n), Int(8)); }

// The L-th cyclotomic polynomial as its integer coefficient vector
// (degree phi(L)), computed by iterated exact division and memoized.
const std::vector<Int>& cyclotomic_polynomial(long L);

// Exact accumulator for sums of roots of unity: collects multiplicities of
// exponents (mod 1) and converts to a Cyclotomic once, at the lcm of all
// exponent denominators. Merging two accumulators is exact and commutative,
// which makes threaded enumeration deterministic.
class ExpSum {
 public:
  void add(const Rational& exponent, const Int& multiplicity = Int(1));
  void merge(const ExpSum& other);
  Cyclotomic to_cyclotomic() const;

 private:
  std::map<Rational, Int> terms_;
};

}  // namespace qgauss
