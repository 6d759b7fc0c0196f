#pragma once

#include "qgauss/cyclotomic.hpp"
#include "qgauss/qform.hpp"

namespace qgauss {

// Parameters of the central sum
//   sum over v mod t of e((a/c) * ((1/2)(v+w)^T G (v+w) + (v+w)^T x)),
// where "v mod t" ranges over prod_j Z/t_j. t defaults to (c, ..., c).
struct GaussSpec {
  EvenSymMatrix G;
  Int a;
  Int c;     // positive, coprime to a
  IntVec t;  // positive entries
  RatVec w;
  RatVec x;
};

GaussSpec make_gauss_spec(const EvenSymMatrix& G, const Int& a, const Int& c,
                          const RatVec& w = {}, const RatVec& x = {}, const IntVec& t = {});

// (a/c) t in Z^n, G w in Z^n, a x in Z^n: the regime in which the sum is
// independent of the choice of representatives.
bool integral_parametric(const GaussSpec& spec);

// Exact enumeration of the defining sum (prod t_j terms); the oracle.
Cyclotomic brute_gauss(const GaussSpec& spec);

// Same sum with representatives v_j in [offset_j, offset_j + t_j); used to
// test representative independence.
Cyclotomic brute_gauss_offset(const GaussSpec& spec, const IntVec& offsets);

// For integral-parametric specs, (prod t_j / c^n) times the t = (c,...,c)
// sum; equals brute_gauss(spec).
Cyclotomic scale_t_to_c(const GaussSpec& spec);

// Closed form in the gcd(N, c) = 1 regime (G merely nonsingular):
//   c^{n/2} (|a|/c)_K^n (D/c)_K e(n sgn(a) (1-c0)/8)
//   * e(-(a/2c) x^T G^{-1} x + (a c'/2)(w+G^{-1}x)^T G (w+G^{-1}x)),
// with c c' = 1 mod |a| N and c0 the odd part of c.
// inverse_lift shifts the chosen modular inverse c' by lift * |a| N; the
// result is independent of it (tested property).
Cyclotomic closed_gauss_coprime(const EvenSymMatrix& G, const Int& a, const Int& c,
                                const RatVec& w, const RatVec& x, int inverse_lift = 0);

// Closed form in the N | c regime (G positive definite):
//   delta c^{n/2} D^{1/2} i^{n/2} mu_G(a, c) e(-a' a^2 x^T G^{-1} x / (2c)),
// a a' = 1 mod c N, delta = 1 iff a (w + G^{-1} x) is integral.
Cyclotomic closed_gauss_divides(const EvenSymMatrix& G, const Int& a, const Int& c,
                                const RatVec& w, const RatVec& x, int inverse_lift = 0);

// The unit mu_G(a, c) of the N | c closed form.
Cyclotomic mu_unit(const EvenSymMatrix& G, const Int& a, const Int& c);

// Normalized finite-quadratic-module Gauss sum
//   (|M| |M[c]|)^{-1/2} sum_{y in M} e(c Q(y) + B(x, y)),
// M[c] the kernel of multiplication by c. Full enumeration.
Cyclotomic fqm_gauss(const FiniteQuadraticModule& M, const Int& c, const IntVec& x);

// |M[c]| without enumeration.
Int fqm_kernel_size(const FiniteQuadraticModule& M, const Int& c);

// Closed values of the normalized sums at x = 0 for the indecomposable
// modules.
Cyclotomic fqm_gauss_indecomposable_closed(FqmKind kind, long p, long r, const Int& a, const Int& c);

// The unnormalized discriminant sum sum_{v in L#/L} e(c Q(v)) for
// gcd(c, D) = 1, in closed form: sqrt(|D|) (|D|/c)_K e(sigma c0/8).
Cyclotomic milgram_extended(const EvenSymMatrix& G, const Int& c);

// |d|^{-n/2} sum_{v in Z^n/dZ^n} e((b/d) Q(w + v)) for w in G^{-1}Z^n.
Cyclotomic lattice_gauss_brute(const EvenSymMatrix& G, const Int& b, const Int& d, const RatVec& w);

// Closed form of the normalized lattice sum at w = 0; supports the
// gcd(N, d) = 1 branch (any b) and the N | d branch (b = 1).
Cyclotomic lattice_gauss_closed(const EvenSymMatrix& G, const Int& b, const Int& d);

// The classical one-variable law: sum_{v=0}^{c-1} e(a v^2 / c) equals
// sqrt(c) (2a/c)_K e((1-c)/8) for odd c, sqrt(2c) (2c/a)_K e(a/8) for 4 | c,
// and 0 for c = 2 mod 4. Requires c >= 1 and gcd(a, c) = 1. Coincides with
// brute_gauss at G = (2), w = x = 0.
Cyclotomic classical_gauss_value(const Int& a, const Int& c);

// ---- shared helpers ----

bool is_integral_vec(const RatVec& v);
RatVec scale_vec(const Rational& s, const RatVec& v);
RatVec add_vec(const RatVec& a, const RatVec& b);
Int sgn(const Int& z);

}  // namespace qgauss
