#pragma once

// Shared randomized-fixture helpers for the test suites.

#include <random>

#include "qgauss/gauss.hpp"
#include "qgauss/subsum.hpp"

namespace qgauss::testutil {

inline IntMat im(std::vector<std::vector<long>> rows) {
  IntMat M(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (long v : rows[i]) M[i].emplace_back(v);
  return M;
}

inline RatVec rv(std::vector<Rational> v) { return v; }

inline long rnd(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

inline EvenSymMatrix random_even_sym(std::mt19937_64& rng, int max_n = 3, long spread = 3,
                                     bool positive_definite = false) {
  for (;;) {
    int n = 1 + static_cast<int>(rng() % max_n);
    IntMat M(n, IntVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        long v = rnd(rng, -spread, spread);
        if (i == j) v = positive_definite ? 2 * rnd(rng, 1, spread) : 2 * v;
        M[i][j] = v;
        M[j][i] = v;
      }
    try {
      EvenSymMatrix G = make_even_sym(M);
      if (positive_definite && !G.positive_definite()) continue;
      return G;
    } catch (const precondition_error&) {
      continue;
    }
  }
}

// w with G w integral: w = G^{-1} y for a small random integer vector y.
inline RatVec random_dual_vec(std::mt19937_64& rng, const EvenSymMatrix& G, long spread = 3) {
  RatVec y(G.n);
  for (auto& e : y) e = Rational(rnd(rng, -spread, spread));
  return rat_mat_vec(G.inv, y);
}

// x with a x integral: x = z / a componentwise.
inline RatVec random_a_vec(std::mt19937_64& rng, int n, const Int& a, long spread = 3) {
  RatVec x(n);
  for (auto& e : x) e = ratio(Int(rnd(rng, -spread, spread)), a == 0 ? Int(1) : a);
  return x;
}

inline Int random_coprime(std::mt19937_64& rng, const Int& c, long lo, long hi) {
  for (;;) {
    Int a(rnd(rng, lo, hi));
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
    if (g == 1) return a;
  }
}

// A random spec meeting gcd(N, c) = 1, with nonzero w and x in the allowed
// lattices (when nonzero = true).
inline GaussSpec random_coprime_spec(std::mt19937_64& rng, long cmax = 20, int max_n = 3,
                                     bool nonzero = true) {
  for (;;) {
    EvenSymMatrix G = random_even_sym(rng, max_n);
    long c = rnd(rng, 1, cmax);
    Int g;
    Int cc(c);
    mpz_gcd(g.get_mpz_t(), cc.get_mpz_t(), G.level.get_mpz_t());
    if (g != 1) continue;
    Int a = random_coprime(rng, cc, -7, 7);
    if (a == 0) continue;
    RatVec w = random_dual_vec(rng, G);
    RatVec x = random_a_vec(rng, G.n, a);
    if (nonzero) {
      bool wz = std::all_of(w.begin(), w.end(), [](const Rational& r) { return r == 0; });
      bool xz = std::all_of(x.begin(), x.end(), [](const Rational& r) { return r == 0; });
      if (wz || xz) continue;
    }
    return make_gauss_spec(G, a, cc, w, x);
  }
}

// A random positive definite spec with N | c <= cmax.
inline GaussSpec random_divides_spec(std::mt19937_64& rng, long cmax = 16, int max_n = 3) {
  for (;;) {
    EvenSymMatrix G = random_even_sym(rng, max_n, 2, /*positive_definite=*/true);
    if (G.level > cmax) continue;
    long nl = to_long(G.level);
    long k = rnd(rng, 1, cmax / nl);
    Int c(k * nl);
    Int a = random_coprime(rng, c, -7, 7);
    if (a == 0) continue;
    RatVec w = random_dual_vec(rng, G);
    RatVec x = random_a_vec(rng, G.n, a);
    return make_gauss_spec(G, a, c, w, x);
  }
}

// A random subgroup of Z^n/cZ^n with one or two generators.
inline SubgroupModC random_subgroup(std::mt19937_64& rng, const Int& c, int n) {
  int k = 1 + static_cast<int>(rng() % 2);
  std::vector<IntVec> gens;
  for (int i = 0; i < k; ++i) {
    IntVec g(n);
    for (auto& e : g) e = rnd(rng, 0, to_long(c) - 1);
    gens.push_back(g);
  }
  return make_subgroup(c, n, gens);
}

}  // namespace qgauss::testutil
