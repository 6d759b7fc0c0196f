#include "qgauss/hecke.hpp"

#include <algorithm>

namespace qgauss {

namespace {

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int int_pow(const Int& b, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Int exact_div(const Int& num, const Int& den) {
  if (den == 0 || num % den != 0)
    throw internal_error("expected exact division in derived Hecke data");
  return num / den;
}

bool square_free(const Int& d) {
  Int a = abs(d);
  if (a == 0) return false;
  for (Int q(2); q * q <= a; ++q) {
    if (a % (q * q) == 0) return false;
    while (a % q == 0) a /= q;
  }
  return true;
}

}  // namespace

Int resultant(const IntVec& f_in, const IntVec& g_in) {
  IntVec f = f_in, g = g_in;
  while (!f.empty() && f.back() == 0) f.pop_back();
  while (!g.empty() && g.back() == 0) g.pop_back();
  if (f.empty() || g.empty()) return Int(0);
  const long m = static_cast<long>(f.size()) - 1;  // deg f
  const long n = static_cast<long>(g.size()) - 1;  // deg g
  if (m == 0) return int_pow(f[0], n);
  if (n == 0) return int_pow(g[0], m);
  const long size = m + n;
  IntMat syl(size, IntVec(size, Int(0)));
  for (long i = 0; i < n; ++i)  // n rows of f, highest coefficient first
    for (long j = 0; j <= m; ++j) syl[i][i + j] = f[m - j];
  for (long i = 0; i < m; ++i)  // m rows of g
    for (long j = 0; j <= n; ++j) syl[n + i][i + j] = g[n - j];
  return det_bareiss(syl);
}

QuadHeckeSpec make_quad_hecke(const Int& d, const Int& v0, const Int& v1, const Int& c1) {
  QuadHeckeSpec s;
  s.d = d;
  s.v0 = v0;
  s.v1 = v1;
  s.c1 = c1;
  if (d == 0 || d == 1 || !square_free(d))
    throw precondition_error("bad_field", "d must be a square-free integer other than 0 and 1");
  if (c1 < 1) throw precondition_error("bad_modulus", "c1 must be a positive integer");
  if (gcd_int(gcd_int(c1, v0), v1) != 1)
    throw precondition_error("not_coprime", "gcd(c1, v0, v1) must be 1");
  if (v0 == 0 && v1 == 0)
    throw precondition_error("omega_zero", "v0 = v1 = 0 gives omega = 0");
  const bool one_mod_four = ((d % 4) + 4) % 4 == 1;
  s.delta = one_mod_four ? d : 4 * d;
  IntMat g(2, IntVec(2));
  if (one_mod_four) {
    s.a1 = gcd_int(gcd_int(2 * v0, 2 * v1 * d), v0 + v1 * d);
    g[0][0] = exact_div(4 * v0, s.a1);
    g[0][1] = g[1][0] = exact_div(2 * (v0 + v1 * d), s.a1);
    g[1][1] = exact_div(v0 * d + v0 + 2 * v1 * d, s.a1);
  } else {
    s.a1 = gcd_int(2 * v0, 4 * v1 * d);
    g[0][0] = exact_div(4 * v0, s.a1);
    g[0][1] = g[1][0] = exact_div(4 * v1 * d, s.a1);
    g[1][1] = exact_div(4 * v0 * d, s.a1);
  }
  const Int h = gcd_int(s.a1, c1);
  s.a = s.a1 / h;
  s.c = c1 / h;
  s.G = make_even_sym(g);
  if (s.G.det != exact_div(4 * s.delta * (v0 * v0 - v1 * v1 * d), s.a1 * s.a1))
    throw internal_error("det G differs from 4 delta (v0^2 - v1^2 d) / a1^2");
  return s;
}

namespace {

// The matrix Gauss sum at a/c with w = x = 0, closed when the coprimality
// hypothesis holds, else by enumeration (c^n terms, budget-capped).
Cyclotomic matrix_gauss(const EvenSymMatrix& G, const Int& a, const Int& c, const Int& budget) {
  if (gcd_int(c, G.level) == 1) return closed_gauss_coprime(G, a, c, {}, {});
  Int total(1);
  for (int i = 0; i < G.n; ++i) total *= c;
  if (total > budget)
    throw precondition_error("budget_exceeded", "no closed branch applies and c^n exceeds the budget");
  return brute_gauss(make_gauss_spec(G, a, c));
}

void require_quad_norm_regime(const QuadHeckeSpec& s) {
  if (gcd_int(s.c1, s.v0 * s.v0 - s.v1 * s.v1 * s.d) != 1)
    throw precondition_error(
        "norm_undetermined",
        "gcd(c1, v0^2 - v1^2 d) != 1: the norm of the denominator ideal is undetermined; "
        "unsupported");
}

}  // namespace

Cyclotomic hecke_quadratic(const QuadHeckeSpec& spec) {
  require_quad_norm_regime(spec);
  const Rational factor =
      ratio(gcd_int(spec.c1, spec.a1) * gcd_int(spec.c1, spec.a1), gcd_int(spec.c1 * spec.c1, spec.delta));
  return matrix_gauss(spec.G, spec.a, spec.c, Int(1) << 20) * factor;
}

Cyclotomic hecke_quadratic_explicit(const QuadHeckeSpec& spec) {
  require_quad_norm_regime(spec);
  if (gcd_int(spec.c, spec.G.det) != 1)
    throw precondition_error("not_coprime_cdet", "gcd(c, det G) must be 1 for the explicit value");
  const Int c0 = odd_part(spec.c).odd;
  const int sign = ((1 - c0) / 2) % 2 == 0 ? 1 : -1;
  Rational value = ratio(spec.c1 * gcd_int(spec.c1, spec.a1), gcd_int(spec.c1 * spec.c1, spec.delta));
  value *= Rational(sign * kronecker(spec.G.det, spec.c));
  return Cyclotomic(value);
}

Cyclotomic hecke_quadratic_brute(const QuadHeckeSpec& spec, const Int& cap) {
  require_quad_norm_regime(spec);
  if (spec.c1 * spec.c1 > cap)
    throw precondition_error("budget_exceeded", "c1^2 exceeds the enumeration budget");
  // integer matrix (tr(c1 omega b_i b_j))_{ij} over the integral basis
  const bool one_mod_four = ((spec.d % 4) + 4) % 4 == 1;
  IntMat t(2, IntVec(2));
  t[0][0] = 2 * spec.v0;
  if (one_mod_four) {
    t[0][1] = t[1][0] = spec.v0 + spec.v1 * spec.d;
    t[1][1] = exact_div(spec.v0 * (spec.d + 1), Int(2)) + spec.v1 * spec.d;
  } else {
    t[0][1] = t[1][0] = 2 * spec.v1 * spec.d;
    t[1][1] = 2 * spec.v0 * spec.d;
  }
  const long cl = to_long(spec.c1);
  ExpSum acc;
  for (long m1 = 0; m1 < cl; ++m1)
    for (long m2 = 0; m2 < cl; ++m2) {
      Int q = t[0][0] * m1 * m1 + 2 * t[0][1] * m1 * m2 + t[1][1] * m2 * m2;
      acc.add(ratio(q, spec.c1));
    }
  return acc.to_cyclotomic() / Rational(gcd_int(spec.c1 * spec.c1, spec.delta));
}

CycHeckeSpec make_cyc_hecke(const Int& p, const IntVec& v, const Int& c1) {
  CycHeckeSpec s;
  s.p = p;
  s.v = v;
  s.c1 = c1;
  if (!is_prime(p) || p == 2)
    throw precondition_error("not_odd_prime", "p must be an odd prime");
  const long pl = to_long(p);
  const long n = pl - 1;
  if (static_cast<long>(v.size()) != n)
    throw precondition_error("dimension_mismatch", "v must have length p - 1");
  if (c1 < 1) throw precondition_error("bad_modulus", "c1 must be a positive integer");
  Int content = c1;
  for (const Int& vk : v) content = gcd_int(content, vk);
  if (content != 1) throw precondition_error("not_coprime", "gcd(c1, v_1, ..., v_{p-1}) must be 1");
  // trsum[i][j] = sum_k v_k T_k[i, j] with T_k = p [i + j + k = 0 mod p] - 1
  Int total(0);
  for (const Int& vk : v) total += vk;
  IntMat trsum(n, IntVec(n));
  for (long i = 1; i <= n; ++i)
    for (long j = 1; j <= n; ++j) {
      long k = (2 * pl - i - j) % pl;  // the unique k with i + j + k = 0 mod p
      trsum[i - 1][j - 1] = (k >= 1 ? Int(p * v[k - 1]) : Int(0)) - total;
    }
  s.a1 = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j)
      s.a1 = gcd_int(s.a1, i == j ? trsum[i][j] : 2 * trsum[i][j]);
  if (s.a1 == 0) throw precondition_error("omega_zero", "all v_k = 0 gives omega = 0");
  IntMat g(n, IntVec(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) g[i][j] = exact_div(2 * trsum[i][j], s.a1);
  const Int h = gcd_int(s.a1, c1);
  s.a = s.a1 / h;
  s.c = c1 / h;
  s.G = make_even_sym(g);
  // norm as the resultant of sum v_k x^k with the p-th cyclotomic polynomial
  IntVec f(pl, Int(0));
  for (long k = 1; k <= n; ++k) f[k] = v[k - 1];
  IntVec phi(pl, Int(1));
  s.norm = resultant(phi, f);
  return s;
}

Cyclotomic hecke_cyclotomic(const CycHeckeSpec& spec, const Int& budget) {
  if (gcd_int(spec.c1, spec.norm) != 1)
    throw precondition_error("not_coprime_norm",
                             "gcd(c1, N(sum v_k zeta^k)) must be 1; the norm of the "
                             "denominator ideal is undetermined otherwise");
  const long n = to_long(spec.p) - 1;
  const Rational factor = ratio(int_pow(gcd_int(spec.c1, spec.a1), n),
                                gcd_int(int_pow(spec.c1, n), int_pow(spec.p, n - 1)));
  return matrix_gauss(spec.G, spec.a, spec.c, budget) * factor;
}

}  // namespace qgauss
