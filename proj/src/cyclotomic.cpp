#include "qgauss/cyclotomic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qgauss {

namespace {

long lcm_long(long a, long b) { return a / std::gcd(a, b) * b; }

// Exact division of integer polynomials, divisor monic. Throws if the
// division leaves a remainder.
std::vector<Int> exact_poly_div(std::vector<Int> num, const std::vector<Int>& den) {
  const long m = static_cast<long>(den.size()) - 1;
  const long n = static_cast<long>(num.size()) - 1;
  if (den[m] != 1) throw internal_error("exact_poly_div: divisor not monic");
  if (n < m) throw internal_error("exact_poly_div: degree underflow");
  std::vector<Int> quo(n - m + 1);
  for (long i = n - m; i >= 0; --i) {
    Int q = num[i + m];
    quo[i] = q;
    if (q == 0) continue;
    for (long j = 0; j <= m; ++j) num[i + j] -= q * den[j];
  }
  for (const Int& r : num)
    if (r != 0) throw internal_error("exact_poly_div: nonzero remainder");
  return quo;
}

std::mutex g_phi_mutex;
std::unordered_map<long, std::vector<Int>> g_phi_cache;

}  // namespace

const std::vector<Int>& cyclotomic_polynomial(long L) {
  if (L < 1) throw precondition_error("bad_conductor", "conductor must be positive");
  {
    std::lock_guard<std::mutex> lock(g_phi_mutex);
    auto it = g_phi_cache.find(L);
    if (it != g_phi_cache.end()) return it->second;
  }
  // x^L - 1 divided by Phi_d for every proper divisor d of L.
  std::vector<Int> poly(L + 1);
  poly[0] = -1;
  poly[L] = 1;
  for (long d = 1; d < L; ++d) {
    if (L % d != 0) continue;
    poly = exact_poly_div(std::move(poly), cyclotomic_polynomial(d));
  }
  std::lock_guard<std::mutex> lock(g_phi_mutex);
  return g_phi_cache.emplace(L, std::move(poly)).first->second;
}

Cyclotomic Cyclotomic::e(const Rational& r) {
  Rational red = r;
  red.canonicalize();
  Int den = red.get_den();
  Int num = red.get_num();
  Int k;
  mpz_fdiv_r(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Cyclotomic out;
  out.L_ = to_long(den);
  out.c_.assign(out.L_, Rational(0));
  out.c_[to_long(k)] = 1;
  return out;
}

Cyclotomic Cyclotomic::from_coeffs(long L, RatVec coeffs) {
  if (L < 1 || static_cast<long>(coeffs.size()) != L)
    throw precondition_error("bad_coeffs", "coefficient vector must have length equal to the conductor");
  Cyclotomic out;
  out.L_ = L;
  out.c_ = std::move(coeffs);
  return out;
}

Cyclotomic e_frac(const Int& num, const Int& den) {
  if (den == 0) throw precondition_error("bad_fraction", "zero denominator in e()");
  return Cyclotomic::e(Rational(num, den));
}

Cyclotomic& Cyclotomic::canonicalize() {
  if (L_ == 1) return *this;
  const std::vector<Int>& phi = cyclotomic_polynomial(L_);
  const long d = static_cast<long>(phi.size()) - 1;
  for (long k = L_ - 1; k >= d; --k) {
    if (c_[k] == 0) continue;
    Rational q = c_[k];
    c_[k] = 0;
    for (long j = 0; j < d; ++j) {
      if (phi[j] != 0) c_[k - d + j] -= q * Rational(phi[j]);
    }
  }
  return *this;
}

Cyclotomic Cyclotomic::promoted(long M) const {
  if (M % L_ != 0) throw internal_error("promoted: target conductor not a multiple");
  if (M == L_) return *this;
  Cyclotomic out;
  out.L_ = M;
  out.c_.assign(M, Rational(0));
  const long f = M / L_;
  for (long k = 0; k < L_; ++k)
    if (c_[k] != 0) out.c_[k * f] = c_[k];
  return out;
}

bool Cyclotomic::is_zero() const {
  Cyclotomic t = canonical();
  return std::all_of(t.c_.begin(), t.c_.end(), [](const Rational& r) { return r == 0; });
}

bool Cyclotomic::is_rational() const {
  Cyclotomic t = canonical();
  for (long k = 1; k < t.L_; ++k)
    if (t.c_[k] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  Cyclotomic t = canonical();
  for (long k = 1; k < t.L_; ++k)
    if (t.c_[k] != 0) throw precondition_error("not_rational", "value is not rational");
  return t.c_[0];
}

bool Cyclotomic::is_integer() const {
  if (!is_rational()) return false;
  return rational_value().get_den() == 1;
}

Int Cyclotomic::integer_value() const {
  Rational r = rational_value();
  if (r.get_den() != 1) throw precondition_error("not_integer", "value is not an integer");
  return r.get_num();
}

Cyclotomic Cyclotomic::conj() const {
  Cyclotomic out;
  out.L_ = L_;
  out.c_.assign(L_, Rational(0));
  for (long k = 0; k < L_; ++k)
    if (c_[k] != 0) out.c_[(L_ - k) % L_] = c_[k];
  return out;
}

Cyclotomic Cyclotomic::pow(unsigned long k) const {
  Cyclotomic result = one();
  Cyclotomic base = *this;
  while (k > 0) {
    if (k & 1UL) result *= base;
    base *= base;
    k >>= 1UL;
  }
  return result;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic out = *this;
  for (Rational& r : out.c_) r = -r;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  const long M = lcm_long(L_, o.L_);
  if (M != L_) *this = promoted(M);
  Cyclotomic rhs = o.promoted(M);
  for (long k = 0; k < M; ++k) c_[k] += rhs.c_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  const long M = lcm_long(L_, o.L_);
  if (M != L_) *this = promoted(M);
  Cyclotomic rhs = o.promoted(M);
  for (long k = 0; k < M; ++k) c_[k] -= rhs.c_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  const long M = lcm_long(L_, o.L_);
  Cyclotomic a = promoted(M);
  Cyclotomic b = o.promoted(M);
  std::vector<long> ai, bi;
  for (long k = 0; k < M; ++k) {
    if (a.c_[k] != 0) ai.push_back(k);
    if (b.c_[k] != 0) bi.push_back(k);
  }
  L_ = M;
  c_.assign(M, Rational(0));
  for (long i : ai)
    for (long j : bi) c_[(i + j) % M] += a.c_[i] * b.c_[j];
  canonicalize();
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
  for (Rational& x : c_) x *= r;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Rational& r) {
  if (r == 0) throw precondition_error("division_by_zero", "rational divisor is zero");
  for (Rational& x : c_) x /= r;
  return *this;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic diff = a;
  diff -= b;
  return diff.is_zero();
}

std::pair<double, double> Cyclotomic::approx(int digits) const {
  Cyclotomic t = canonical();
  const mpfr_prec_t prec = 64 + 4 * static_cast<mpfr_prec_t>(std::max(digits, 1)) + 32;
  mpfr_t re, im, angle, s, c, coef, tmp, pi;
  mpfr_inits2(prec, re, im, angle, s, c, coef, tmp, pi, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_zero(re, 1);
  mpfr_set_zero(im, 1);
  mpfr_const_pi(pi, MPFR_RNDN);
  for (long k = 0; k < t.L_; ++k) {
    if (t.c_[k] == 0) continue;
    mpfr_set_q(coef, t.c_[k].get_mpq_t(), MPFR_RNDN);
    mpfr_mul_si(angle, pi, 2 * k, MPFR_RNDN);
    mpfr_div_si(angle, angle, t.L_, MPFR_RNDN);
    mpfr_sin_cos(s, c, angle, MPFR_RNDN);
    mpfr_mul(tmp, coef, c, MPFR_RNDN);
    mpfr_add(re, re, tmp, MPFR_RNDN);
    mpfr_mul(tmp, coef, s, MPFR_RNDN);
    mpfr_add(im, im, tmp, MPFR_RNDN);
  }
  std::pair<double, double> out{mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN)};
  mpfr_clears(re, im, angle, s, c, coef, tmp, pi, static_cast<mpfr_ptr>(nullptr));
  return out;
}

std::string Cyclotomic::str() const {
  Cyclotomic t = canonical();
  std::ostringstream os;
  bool first = true;
  for (long k = 0; k < t.L_; ++k) {
    const Rational& q = t.c_[k];
    if (q == 0) continue;
    Rational mag = q < 0 ? Rational(-q) : q;
    if (first) {
      if (q < 0) os << "-";
      first = false;
    } else {
      os << (q < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      Rational ex(k, t.L_);
      ex.canonicalize();
      os << "e(" << ex.get_str() << ")";
    }
  }
  if (first) os << "0";
  return os.str();
}

namespace {

// Square root of a prime embedded via quadratic Gauss sums:
// sqrt(2) = e(1/8) + e(-1/8); for an odd prime p, the sum of e(j^2/p) equals
// sqrt(p) when p = 1 mod 4 and i*sqrt(p) when p = 3 mod 4.
Cyclotomic sqrt_prime(long p) {
  if (p == 2) return e_frac(Int(1), Int(8)) + e_frac(Int(-1), Int(8));
  ExpSum acc;
  for (long j = 0; j < p; ++j) acc.add(ratio(Int(j) * j, Int(p)));
  Cyclotomic g = acc.to_cyclotomic();
  if (p % 4 == 3) g *= e_frac(Int(-1), Int(4));
  return g;
}

}  // namespace

Cyclotomic sqrt_int(const Int& m) {
  if (m == 0) throw precondition_error("sqrt_of_zero", "sqrt_int requires a nonzero integer");
  Int n = abs(m);
  Int square_root(1);
  std::vector<long> squarefree_primes;
  Int rest = n;
  for (long p = 2; Int(p) * p <= rest; p = (p == 2 ? 3 : p + 2)) {
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    int exp = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      rest /= p;
      ++exp;
    }
    for (int i = 0; i < exp / 2; ++i) square_root *= p;
    if (exp % 2 == 1) squarefree_primes.push_back(p);
  }
  if (rest > 1) squarefree_primes.push_back(to_long(rest));
  Cyclotomic out(square_root);
  for (long p : squarefree_primes) out *= sqrt_prime(p);
  if (m < 0) out *= e_frac(Int(1), Int(4));
  return out;
}

Cyclotomic sqrt_pow(const Int& m, long n) {
  if (m <= 0) throw precondition_error("bad_sqrt_pow", "base must be positive");
  if (n < 0) throw precondition_error("bad_sqrt_pow", "exponent must be nonnegative");
  Int base;
  mpz_pow_ui(base.get_mpz_t(), m.get_mpz_t(), static_cast<unsigned long>(n / 2));
  Cyclotomic out{base};
  if (n % 2 == 1) out *= sqrt_int(m);
  return out;
}

void ExpSum::add(const Rational& exponent, const Int& multiplicity) {
  if (multiplicity == 0) return;
  Rational r = exponent;
  r.canonicalize();
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  r -= Rational(fl);
  Int& slot = terms_[r];
  slot += multiplicity;
  if (slot == 0) terms_.erase(r);
}

void ExpSum::merge(const ExpSum& other) {
  for (const auto& [ex, mult] : other.terms_) {
    Int& slot = terms_[ex];
    slot += mult;
    if (slot == 0) terms_.erase(ex);
  }
}

Cyclotomic ExpSum::to_cyclotomic() const {
  Int L(1);
  for (const auto& [ex, mult] : terms_) {
    Int den = ex.get_den();
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), den.get_mpz_t());
  }
  const long Ll = to_long(L);
  RatVec coeffs(Ll, Rational(0));
  for (const auto& [ex, mult] : terms_) {
    long idx = to_long(Int(ex.get_num() * (L / ex.get_den())));
    coeffs[idx] += Rational(mult);
  }
  return Cyclotomic::from_coeffs(Ll, std::move(coeffs)).canonicalize();
}

}  // namespace qgauss
