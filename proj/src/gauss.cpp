#include "qgauss/gauss.hpp"

#include <algorithm>
#include <functional>
#include <thread>

namespace qgauss {

namespace {

int pow_sign(int k, long n) { return (k == -1 && n % 2 != 0) ? -1 : (k == 0 ? (n == 0 ? 1 : 0) : 1); }

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

bool rat_integral(Rational r) {
  r.canonicalize();
  return r.get_den() == 1;
}

// Deterministic parallel enumeration: the index range [0, total) is split
// into thread_count() contiguous chunks, each accumulated into its own
// exact ExpSum, merged in chunk order. The result is independent of the
// chunk count because the merge is exact commutative addition.
ExpSum enumerate_terms(long total, const std::function<void(long, long, ExpSum&)>& work) {
  const int k = static_cast<int>(
      std::max<long>(1, std::min<long>(thread_count(), total > 0 ? total : 1)));
  std::vector<ExpSum> parts(k);
  if (k == 1) {
    work(0, total, parts[0]);
  } else {
    std::vector<std::thread> threads;
    const long chunk = (total + k - 1) / k;
    for (int i = 0; i < k; ++i) {
      long lo = i * chunk;
      long hi = std::min(total, lo + chunk);
      if (lo >= hi) break;
      threads.emplace_back([&work, &parts, i, lo, hi] { work(lo, hi, parts[i]); });
    }
    for (auto& th : threads) th.join();
  }
  ExpSum acc;
  for (const ExpSum& p : parts) acc.merge(p);
  return acc;
}

}  // namespace

Int sgn(const Int& z) { return Int(z > 0 ? 1 : (z < 0 ? -1 : 0)); }

bool is_integral_vec(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return rat_integral(r); });
}

RatVec scale_vec(const Rational& s, const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return out;
}

RatVec add_vec(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

GaussSpec make_gauss_spec(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                          const RatVec& x, const IntVec& t) {
  GaussSpec s;
  s.G = G;
  s.a = a;
  s.c = c;
  if (c < 1) throw precondition_error("bad_modulus", "c must be a positive integer");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  const int n = G.n;
  s.t = t.empty() ? IntVec(n, c) : t;
  s.w = w.empty() ? RatVec(n, Rational(0)) : w;
  s.x = x.empty() ? RatVec(n, Rational(0)) : x;
  if (static_cast<int>(s.t.size()) != n || static_cast<int>(s.w.size()) != n ||
      static_cast<int>(s.x.size()) != n)
    throw precondition_error("bad_dimension", "t, w, x must have length n");
  for (const Int& tj : s.t)
    if (tj < 1) throw precondition_error("bad_t", "t entries must be positive");
  return s;
}

bool integral_parametric(const GaussSpec& spec) {
  for (const Int& tj : spec.t)
    if (!rat_integral(ratio(spec.a * tj, spec.c))) return false;
  if (!is_integral_vec(rat_mat_vec(to_rat_mat(spec.G.g), spec.w))) return false;
  if (!is_integral_vec(scale_vec(Rational(spec.a), spec.x))) return false;
  return true;
}

Cyclotomic brute_gauss_offset(const GaussSpec& spec, const IntVec& offsets) {
  const int n = spec.G.n;
  long total = 1;
  for (const Int& tj : spec.t) total *= to_long(tj);
  const Rational r = ratio(spec.a, spec.c);
  ExpSum acc = enumerate_terms(total, [&](long lo, long hi, ExpSum& out) {
    RatVec u(n);
    for (long idx = lo; idx < hi; ++idx) {
      long rest = idx;
      for (int j = n - 1; j >= 0; --j) {
        long tj = to_long(spec.t[j]);
        long vj = rest % tj;
        rest /= tj;
        u[j] = Rational(vj) + Rational(offsets[j]) + spec.w[j];
      }
      Rational expo = r * (spec.G.q_of(u) + dot(u, spec.x));
      out.add(expo);
    }
  });
  return acc.to_cyclotomic();
}

Cyclotomic brute_gauss(const GaussSpec& spec) {
  return brute_gauss_offset(spec, IntVec(spec.G.n, Int(0)));
}

Cyclotomic scale_t_to_c(const GaussSpec& spec) {
  if (!integral_parametric(spec))
    throw precondition_error("not_integral_parametric",
                             "t-scaling requires an integral-parametric spec");
  Rational factor(1);
  for (const Int& tj : spec.t) factor *= ratio(tj, spec.c);
  GaussSpec base = spec;
  base.t.assign(spec.G.n, spec.c);
  return factor * brute_gauss(base);
}

Cyclotomic closed_gauss_coprime(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                                const RatVec& x_in, int inverse_lift) {
  const int n = G.n;
  const RatVec w = w_in.empty() ? RatVec(n, Rational(0)) : w_in;
  const RatVec x = x_in.empty() ? RatVec(n, Rational(0)) : x_in;
  if (static_cast<int>(w.size()) != n || static_cast<int>(x.size()) != n)
    throw precondition_error("dimension_mismatch", "w and x must have length n");
  if (a == 0) throw precondition_error("a_zero", "closed coprime form requires a != 0");
  if (c < 1) throw precondition_error("bad_modulus", "c must be positive");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (gcd_int(G.level, c) != 1)
    throw precondition_error("not_coprime_nc", "closed coprime form requires gcd(N, c) = 1");
  if (!is_integral_vec(rat_mat_vec(to_rat_mat(G.g), w)))
    throw precondition_error("w_not_lattice", "G w must be integral");
  if (!is_integral_vec(scale_vec(Rational(a), x)))
    throw precondition_error("x_not_lattice", "a x must be integral");

  const Int cp = inv_mod(c, abs(a) * G.level) + Int(inverse_lift) * abs(a) * G.level;
  const OddPart c0 = odd_part(c);
  const Int sa = sgn(a);

  Cyclotomic val = sqrt_pow(c, n);
  val *= Rational(pow_sign(kronecker(abs(a), c), n));
  val *= Rational(kronecker(G.det, c));
  val *= e_frac(Int(n) * sa * (1 - c0.odd), Int(8));
  const RatVec gix = rat_mat_vec(G.inv, x);
  Rational expo = -ratio(a, 2 * c) * dot(x, gix) + Rational(a * cp) * G.q_of(add_vec(w, gix));
  val *= Cyclotomic::e(expo);
  return val;
}

Cyclotomic mu_unit(const EvenSymMatrix& G, const Int& a, const Int& c) {
  const int n = G.n;
  if (mpz_odd_p(a.get_mpz_t())) {
    const Int sa = sgn(a);
    Cyclotomic out{Rational(pow_sign(kronecker(-sa * c, abs(a)), n) * kronecker(G.det, a))};
    out *= e_frac(Int(n) * sa * (1 - a), Int(8));
    return out;
  }
  return Cyclotomic(Rational(kronecker(a, G.det)));
}

Cyclotomic closed_gauss_divides(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                                const RatVec& x_in, int inverse_lift) {
  const int n = G.n;
  const RatVec w = w_in.empty() ? RatVec(n, Rational(0)) : w_in;
  const RatVec x = x_in.empty() ? RatVec(n, Rational(0)) : x_in;
  if (static_cast<int>(w.size()) != n || static_cast<int>(x.size()) != n)
    throw precondition_error("dimension_mismatch", "w and x must have length n");
  if (a == 0) throw precondition_error("a_zero", "closed form requires a != 0");
  if (c < 1) throw precondition_error("bad_modulus", "c must be positive");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (c % G.level != 0)
    throw precondition_error("n_not_dividing_c",
                             "N does not divide c; use coprime path or brute force");
  if (!G.positive_definite())
    throw precondition_error("indefinite", "N | c closed form requires positive definite G");
  if (!is_integral_vec(rat_mat_vec(to_rat_mat(G.g), w)))
    throw precondition_error("w_not_lattice", "G w must be integral");
  if (!is_integral_vec(scale_vec(Rational(a), x)))
    throw precondition_error("x_not_lattice", "a x must be integral");

  const RatVec gix = rat_mat_vec(G.inv, x);
  if (!is_integral_vec(scale_vec(Rational(a), add_vec(w, gix)))) return Cyclotomic::zero();

  const Int ap = inv_mod(a, c * G.level) + Int(inverse_lift) * c * G.level;
  Cyclotomic val = sqrt_pow(c, n);
  val *= sqrt_int(G.det);
  val *= e_frac(Int(n), Int(8));  // i^{n/2}
  val *= mu_unit(G, a, c);
  val *= Cyclotomic::e(-ratio(ap * a * a, 2 * c) * dot(x, gix));
  return val;
}

Int fqm_kernel_size(const FiniteQuadraticModule& M, const Int& c) {
  Int k(1);
  for (long e : M.orders) k *= gcd_int(c, Int(e));
  return k;
}

Cyclotomic fqm_gauss(const FiniteQuadraticModule& M, const Int& c, const IntVec& x) {
  if (x.size() != M.orders.size())
    throw precondition_error("bad_dimension", "element has wrong coordinate count");
  ExpSum acc;
  for (const IntVec& y : M.elements()) acc.add(Rational(c) * M.q_of(y) + M.b_of(x, y));
  Cyclotomic sum = acc.to_cyclotomic();
  const Int norm = Int(M.size()) * fqm_kernel_size(M, c);
  return sum * sqrt_int(norm) / Rational(norm);
}

Cyclotomic fqm_gauss_indecomposable_closed(FqmKind kind, long p, long r, const Int& a, const Int& c) {
  (void)fqm_indecomposable(kind, p, r, kind == FqmKind::A_odd || kind == FqmKind::A_two ? a : Int(0));
  Int pr(1);
  for (long i = 0; i < r; ++i) pr *= p;
  const Int g = gcd_int(pr, c);
  switch (kind) {
    case FqmKind::A_odd: {
      Cyclotomic out{Rational(kronecker(2 * a * c / g, pr / g))};
      out *= e_frac(1 - pr / g, Int(8));
      return out;
    }
    case FqmKind::A_two: {
      if (c % (2 * pr) == 0) return Cyclotomic::one();
      if (g == pr) return Cyclotomic::zero();  // 2^r exactly divides c
      Cyclotomic out{Rational(kronecker(a * c / g, pr / g))};
      out *= e_frac(a * c / g, Int(8));
      return out;
    }
    case FqmKind::B:
      return Cyclotomic(Rational(kronecker(Int(3), pr / g)));
    case FqmKind::C:
      return Cyclotomic::one();
  }
  throw internal_error("unreachable fqm kind");
}

Cyclotomic milgram_extended(const EvenSymMatrix& G, const Int& c) {
  const Int D = abs(G.det);
  if (gcd_int(c, D) != 1)
    throw precondition_error("not_coprime_cd", "milgram extension requires gcd(c, |D|) = 1");
  if (c == 0) return Cyclotomic(Rational(D));  // only D = 1 passes the gcd check
  const OddPart c0 = odd_part(c);
  Cyclotomic out = sqrt_int(D);
  out *= Rational(kronecker(D, c));
  out *= e_frac(Int(G.signature()) * c0.odd, Int(8));
  return out;
}

Cyclotomic lattice_gauss_brute(const EvenSymMatrix& G, const Int& b, const Int& d, const RatVec& w) {
  if (d == 0) throw precondition_error("bad_modulus", "d must be nonzero");
  if (gcd_int(b, d) != 1) throw precondition_error("not_coprime_bd", "gcd(b, d) must be 1");
  if (!is_integral_vec(rat_mat_vec(to_rat_mat(G.g), w)))
    throw precondition_error("w_not_dual", "w must lie in G^{-1}Z^n");
  const int n = G.n;
  const long ad = to_long(abs(d));
  long total = 1;
  for (int j = 0; j < n; ++j) total *= ad;
  const Rational r = ratio(b, d);
  ExpSum acc = enumerate_terms(total, [&](long lo, long hi, ExpSum& out) {
    RatVec u(n);
    for (long idx = lo; idx < hi; ++idx) {
      long rest = idx;
      for (int j = n - 1; j >= 0; --j) {
        u[j] = Rational(rest % ad) + w[j];
        rest /= ad;
      }
      out.add(r * G.q_of(u));
    }
  });
  // Normalize by |d|^{-n/2} = |d|^{n/2} / |d|^n.
  Int dn(1);
  for (int j = 0; j < n; ++j) dn *= abs(d);
  return acc.to_cyclotomic() * sqrt_pow(abs(d), n) / Rational(dn);
}

Cyclotomic lattice_gauss_closed(const EvenSymMatrix& G, const Int& b, const Int& d) {
  const Int Dabs = abs(G.det);
  const int sigma = G.signature();
  if (b == 0) {
    if (d != 1 && d != -1)
      throw precondition_error("bad_fraction", "b = 0 requires d = +-1");
    return Cyclotomic::one();
  }
  if (d == 0) throw precondition_error("bad_modulus", "d must be nonzero");
  if (gcd_int(b, d) != 1) throw precondition_error("not_coprime_bd", "gcd(b, d) must be 1");
  if (gcd_int(G.level, d) == 1) {
    const OddPart d0 = odd_part(d);
    Int bn(1);
    for (int i = 0; i < G.n; ++i) bn *= abs(b);
    Cyclotomic out = e_frac(Int(sigma) * sgn(b) * (sgn(d0.odd) - d0.odd), Int(8));
    out *= Rational(kronecker(bn * Dabs, d));
    return out;
  }
  if (d % G.level == 0 && b == 1) {
    Cyclotomic out = e_frac(Int(sigma) * sgn(d), Int(8));
    out *= sqrt_int(Dabs);
    return out;
  }
  throw precondition_error("general_d_unsupported", "no closed form for this (b, d); use brute");
}

Cyclotomic classical_gauss_value(const Int& a, const Int& c) {
  if (c < 1) throw precondition_error("bad_modulus", "c must be a positive integer");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime", "gcd(a, c) must be 1");
  if (c % 2 == 1) return sqrt_int(c) * Rational(kronecker(2 * a, c)) * e_frac(1 - c, Int(8));
  if (c % 4 == 0) return sqrt_int(2 * c) * Rational(kronecker(2 * c, a)) * e_frac(a, Int(8));
  return Cyclotomic::zero();
}

}  // namespace qgauss
