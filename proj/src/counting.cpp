#include "qgauss/counting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace qgauss {

namespace {

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int mod_pos(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int int_pow(const Int& b, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

int pow_sign(int k, long n) { return (k == -1 && n % 2 != 0) ? -1 : (k == 0 ? (n == 0 ? 1 : 0) : 1); }

// Deterministic parallel integer count over a flat index range.
long count_parallel(long total, const std::function<long(long, long)>& work) {
  const int k = static_cast<int>(
      std::max<long>(1, std::min<long>(thread_count(), total > 0 ? total : 1)));
  if (k == 1) return work(0, total);
  std::vector<long> parts(k, 0);
  std::vector<std::thread> threads;
  const long chunk = (total + k - 1) / k;
  for (int i = 0; i < k; ++i) {
    long lo = i * chunk;
    long hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&work, &parts, i, lo, hi] { parts[i] = work(lo, hi); });
  }
  for (auto& th : threads) th.join();
  long sum = 0;
  for (long p : parts) sum += p;
  return sum;
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

Rational rat_canonical(Rational r) {
  r.canonicalize();
  return r;
}

Int integer_of(const Rational& r) {
  Rational t = rat_canonical(r);
  if (t.get_den() != 1) throw internal_error("expected an integral rational");
  return t.get_num();
}

Int cyclotomic_integer(const Cyclotomic& v, const char* what) {
  Cyclotomic t = v.canonical();
  if (!t.is_integer())
    throw internal_error(std::string(what) + ": closed count did not collapse to a rational integer: " + t.str());
  return t.integer_value();
}

}  // namespace

Int count_quadric_brute(const EvenSymMatrix& G, const IntVec& v, const Int& m, const Int& c) {
  const int n = G.n;
  if (c < 1) throw precondition_error("bad_modulus", "c must be a positive integer");
  if (static_cast<int>(v.size()) != n)
    throw precondition_error("dimension_mismatch", "v must have length n");
  const long cl = to_long(c);
  if (cl > (1L << 28))
    throw precondition_error("enumeration_too_large", "c exceeds the enumeration budget");
  long total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > (1L << 40) / cl)
      throw precondition_error("enumeration_too_large", "c^n exceeds the enumeration budget");
    total *= cl;
  }
  // reduced coefficient tables: f(x) = sum_i half[i] x_i^2
  //   + sum_{i<j} mix[i][j] x_i x_j + sum_i lin[i] x_i - m0 mod c
  std::vector<long> half(n), lin(n);
  std::vector<std::vector<long>> mix(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) {
    half[i] = to_long(mod_pos(G.g[i][i] / 2, c));
    lin[i] = to_long(mod_pos(v[i], c));
    for (int j = i + 1; j < n; ++j) mix[i][j] = to_long(mod_pos(G.g[i][j], c));
  }
  const long m0 = to_long(mod_pos(m, c));
  long hits = count_parallel(total, [&](long lo, long hi) {
    long cnt = 0;
    std::vector<long> x(n);
    for (long idx = lo; idx < hi; ++idx) {
      long rest = idx;
      for (int j = n - 1; j >= 0; --j) {
        x[j] = rest % cl;
        rest /= cl;
      }
      long f = cl - m0;
      for (int i = 0; i < n; ++i) {
        f += (half[i] * x[i] + lin[i]) % cl * x[i] % cl;
        for (int j = i + 1; j < n; ++j) f += mix[i][j] * x[i] % cl * x[j] % cl;
      }
      if (f % cl == 0) ++cnt;
    }
    return cnt;
  });
  return Int(hits);
}

Int count_quadric_closed_general(const EvenSymMatrix& G, const IntVec& v, const Int& m,
                                 const Int& c, int inverse_lift) {
  const int n = G.n;
  if (c < 1) throw precondition_error("bad_modulus", "c must be a positive integer");
  if (static_cast<int>(v.size()) != n)
    throw precondition_error("dimension_mismatch", "v must have length n");
  if (gcd_int(G.det, c) != 1)
    throw precondition_error("not_coprime_dc", "gcd(det G, c) must be 1");
  const RatVec vr = to_rat_vec(v);
  const Rational vgv = dot(vr, rat_mat_vec(G.inv, vr));
  const long cl = to_long(c);
  Cyclotomic sum = Cyclotomic::zero();
  for (long al = 0; al < cl; ++al) {
    const Int a(al);
    const Int g = gcd_int(a, c);
    const Int at = a / g;
    const Int ct = c / g;
    const Int ct0 = odd_part(ct).odd;
    Int ctp = ct == 1 ? Int(1) : inv_mod(ct, at * G.level);
    ctp += Int(inverse_lift) * at * G.level;
    const int kr = pow_sign(kronecker(at, ct), n) * kronecker(G.det, g);
    const Rational phase = ratio(a, c) * (ratio(ct * ctp - 1, Int(2)) * vgv - Rational(m));
    sum += e_frac(Int(n) * (1 - ct0), Int(8)) * sqrt_pow(g, n) * Cyclotomic::e(phase) *
           Rational(kr);
  }
  Cyclotomic total = sqrt_pow(c, n) / Rational(c) * Cyclotomic(Int(kronecker(G.det, c))) * sum;
  Int r = cyclotomic_integer(total, "count_not_integer");
  if (r < 0) throw internal_error("closed count is negative");
  return r;
}

double count_deviation_bound(int n, const Int& c) {
  const long cl = to_long(c);
  double sum = 0;
  for (long d = 1; d < cl; ++d) {
    if (cl % d != 0) continue;
    long q = cl / d;  // phi(q)
    long phi = q;
    long qq = q;
    for (long p = 2; p * p <= qq; ++p) {
      if (qq % p != 0) continue;
      phi -= phi / p;
      while (qq % p == 0) qq /= p;
    }
    if (qq > 1) phi -= phi / qq;
    sum += std::pow(static_cast<double>(d), n / 2.0) * static_cast<double>(phi);
  }
  return std::pow(static_cast<double>(cl), n / 2.0 - 1.0) * sum;
}

Int count_quadric_prime(const EvenSymMatrix& G, const IntVec& v, const Int& m, const Int& p) {
  const int n = G.n;
  if (!is_prime(p)) throw precondition_error("not_prime", "p must be prime");
  if (static_cast<int>(v.size()) != n)
    throw precondition_error("dimension_mismatch", "v must have length n");
  if (mod_pos(G.det, p) == 0)
    throw precondition_error("p_divides_det", "p divides det G; use brute force");
  const EvenSymMatrix gperp = G.perp();
  const Int s = G.level * m + integer_of(gperp.q_of(to_rat_vec(v)));
  if (n % 2 == 0) {
    if (p == 2) {
      const int sign = mod_pos(s, Int(2)) == 0 ? 1 : -1;
      return int_pow(Int(2), n - 1) + Int(kronecker(G.det, Int(2)) * sign) * int_pow(Int(2), n / 2 - 1);
    }
    const Int delta_term = mod_pos(s, p) == 0 ? Int(p - 1) : Int(-1);
    Cyclotomic tail = Cyclotomic(Int(kronecker(G.det, p))) *
                      e_frac(Int(n) * (1 - p), Int(8)) *
                      Cyclotomic(Int(int_pow(p, n / 2 - 1) * delta_term));
    return cyclotomic_integer(Cyclotomic(int_pow(p, n - 1)) + tail, "count_not_integer");
  }
  // odd n: 2 | det G, hence p > 2 here
  const Int tm = mod_pos(inv_mod(G.level, p) * s, p);
  Cyclotomic tail = Cyclotomic(Int(kronecker(2 * G.det, p) * kronecker(-tm, p))) *
                    e_frac(Int(n + 1) * (1 - p), Int(8)) * Cyclotomic(int_pow(p, (n - 1) / 2));
  return cyclotomic_integer(Cyclotomic(int_pow(p, n - 1)) + tail, "count_not_integer");
}

Int singular_binary_count(const Int& g11, const Int& g12, const Int& g22, const Int& v1,
                          const Int& v2, const Int& m, const Int& p) {
  if (!is_prime(p) || p == 2)
    throw precondition_error("not_odd_prime", "p must be an odd prime");
  if (mod_pos(4 * g11 * g22 - g12 * g12, p) != 0)
    throw precondition_error("det_not_divisible", "p must divide 4 g11 g22 - g12^2");
  if (mod_pos(g11, p) == 0)
    throw precondition_error("g11_divisible", "p must not divide g11");
  if (mod_pos(g12 * v1 - 2 * g11 * v2, p) != 0) return p;
  return p * (1 + kronecker(4 * g11 * m + v1 * v1, p));
}

MarkoffCoeffs markoff_coeffs(const Int& a11, const Int& a22, const Int& a33, const Int& a12,
                             const Int& a13, const Int& a23, const Int& d) {
  MarkoffCoeffs co;
  co.a11 = a11;
  co.a22 = a22;
  co.a33 = a33;
  co.a12 = a12;
  co.a13 = a13;
  co.a23 = a23;
  co.d = d;
  co.g = {{2 * a11, a12, a13}, {a12, 2 * a22, a23}, {a13, a23, 2 * a33}};
  co.A11 = 4 * a22 * a33 - a23 * a23;
  co.A22 = 4 * a11 * a33 - a13 * a13;
  co.A33 = 4 * a11 * a22 - a12 * a12;
  co.A12 = -2 * a12 * a33 + a13 * a23;
  co.A13 = a12 * a23 - 2 * a22 * a13;
  co.A23 = -2 * a11 * a23 + a12 * a13;
  co.D = det_bareiss(co.g);
  const IntMat adj = {{co.A11, co.A12, co.A13}, {co.A12, co.A22, co.A23}, {co.A13, co.A23, co.A33}};
  const IntMat ga = mat_mul(co.g, adj);
  const IntMat ag = mat_mul(adj, co.g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Int want = i == j ? co.D : Int(0);
      if (ga[i][j] != want || ag[i][j] != want)
        throw internal_error("G A = A G = D I failed");
    }
  const bool det_ok = co.A22 * co.A33 - co.A23 * co.A23 == co.D * 2 * a11 &&
                      co.A11 * co.A33 - co.A13 * co.A13 == co.D * 2 * a22 &&
                      co.A11 * co.A22 - co.A12 * co.A12 == co.D * 2 * a33 &&
                      -co.A12 * co.A33 + co.A23 * co.A13 == co.D * a12 &&
                      co.A12 * co.A23 - co.A22 * co.A13 == co.D * a13 &&
                      -co.A11 * co.A23 + co.A12 * co.A13 == co.D * a23;
  if (!det_ok) throw internal_error("cofactor determinant identities failed");
  const bool exp_ok = co.D == 2 * a11 * co.A11 + a12 * co.A12 + a13 * co.A13 &&
                      co.D == a12 * co.A12 + 2 * a22 * co.A22 + a23 * co.A23 &&
                      co.D == a13 * co.A13 + a23 * co.A23 + 2 * a33 * co.A33;
  if (!exp_ok) throw internal_error("determinant expansions failed");
  return co;
}

Int markoff_count_brute(const MarkoffCoeffs& co, const Int& p) {
  if (!is_prime(p)) throw precondition_error("not_prime", "p must be prime");
  const long pl = to_long(p);
  const long a11 = to_long(mod_pos(co.a11, p)), a22 = to_long(mod_pos(co.a22, p)),
             a33 = to_long(mod_pos(co.a33, p)), a12 = to_long(mod_pos(co.a12, p)),
             a13 = to_long(mod_pos(co.a13, p)), a23 = to_long(mod_pos(co.a23, p)),
             d = to_long(mod_pos(co.d, p));
  long hits = count_parallel(pl, [&](long lo, long hi) {
    long cnt = 0;
    for (long z = lo; z < hi; ++z)
      for (long y = 0; y < pl; ++y)
        for (long x = 0; x < pl; ++x) {
          long f = a11 * x % pl * x + a22 * y % pl * y + a33 * z % pl * z + a12 * x % pl * y +
                   a13 * x % pl * z + a23 * y % pl * z + (pl - d) * x % pl * y % pl * z;
          if (f % pl == 0) ++cnt;
        }
    return cnt;
  });
  return Int(hits);
}

Int markoff_count_closed(const MarkoffCoeffs& co, const Int& p, int j_choice) {
  if (!is_prime(p)) throw precondition_error("not_prime", "p must be prime");
  if (mod_pos(co.a11 * co.a22 * co.a33 * co.d, p) == 0)
    throw precondition_error("hypothesis_violated",
                             "p divides a11 a22 a33 d; use brute force");
  if (p == 2) {
    const bool e12 = mod_pos(co.a12, p) == 0, e13 = mod_pos(co.a13, p) == 0,
               e23 = mod_pos(co.a23, p) == 0;
    if (e12 && e13 && e23) return Int(5);
    if (!e12 && !e13 && !e23) return Int(1);
    return Int(3);
  }
  const Int diag[3] = {co.A11, co.A22, co.A33};
  if (mod_pos(co.D, p) != 0) {
    Int t(0);
    for (const Int& ajj : diag) t += kronecker(-ajj, p);
    return p * p + t * p + 1;
  }
  std::vector<int> valid;  // indices j with p not dividing Ajj
  for (int j = 0; j < 3; ++j)
    if (mod_pos(diag[j], p) != 0) valid.push_back(j);
  if (valid.size() <= 1) return p * p + 1;
  int j = j_choice == 0 ? valid.front() : j_choice - 1;
  if (j_choice != 0 &&
      (j_choice < 1 || j_choice > 3 || mod_pos(diag[j_choice - 1], p) == 0))
    throw precondition_error("bad_j_choice", "j must satisfy p not dividing Ajj");
  Int t(0);
  for (const Int& ajj : diag) t += kronecker(-ajj, p);
  t -= kronecker(-diag[j], p);
  return p * p + t * p + 1;
}

}  // namespace qgauss
