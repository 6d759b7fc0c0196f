#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qgauss/qform.hpp"

using namespace qgauss;

namespace {

IntMat im(std::vector<std::vector<long>> rows) {
  IntMat M(rows.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (long v : rows[i]) M[i].emplace_back(v);
  return M;
}

EvenSymMatrix random_even_sym(std::mt19937_64& rng, int max_n = 3, long spread = 4) {
  for (;;) {
    int n = 1 + static_cast<int>(rng() % max_n);
    IntMat M(n, IntVec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        long v = static_cast<long>(rng() % (2 * spread + 1)) - spread;
        if (i == j) v *= 2;
        M[i][j] = v;
        M[j][i] = v;
      }
    try {
      return make_even_sym(M);
    } catch (const precondition_error&) {
      continue;  // singular draw
    }
  }
}

}  // namespace

TEST_CASE("make_even_sym fixed examples") {
  EvenSymMatrix g2 = make_even_sym(im({{2}}));
  CHECK(g2.det == 2);
  CHECK(g2.level == 4);
  CHECK(g2.inertia == std::pair<int, int>(1, 0));

  EvenSymMatrix a2 = an_matrix(2);
  CHECK(a2.det == 3);
  CHECK(a2.level == 3);

  EvenSymMatrix u = make_even_sym(im({{0, 1}, {1, 0}}));
  CHECK(u.det == -1);
  CHECK(u.level == 1);
  CHECK(u.inertia == std::pair<int, int>(1, 1));
  CHECK(u.signature() == 0);
}

TEST_CASE("make_even_sym distinct rejections") {
  CHECK_THROWS_WITH_AS(make_even_sym(im({{2, 1}, {0, 2}})), doctest::Contains("not_symmetric"),
                       precondition_error);
  CHECK_THROWS_WITH_AS(make_even_sym(im({{1}})), doctest::Contains("odd_diagonal"), precondition_error);
  CHECK_THROWS_WITH_AS(make_even_sym(im({{2, 2}, {2, 2}})), doctest::Contains("singular"), precondition_error);
}

TEST_CASE("an_matrix invariants") {
  for (int n = 1; n <= 6; ++n) {
    EvenSymMatrix A = an_matrix(n);
    CHECK(A.det == n + 1);
    CHECK(A.level == (n % 2 == 1 ? 2 * n + 2 : n + 1));
    CHECK(A.positive_definite());
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j)
        CHECK(A.inv[i][j] == ratio(Int((i + 1) * (n - j)), Int(n + 1)));
  }
  EvenSymMatrix a5 = an_matrix(5);
  for (int j = 0; j < 5; ++j) CHECK(a5.inv[0][j] * 6 == 5 - j);
}

TEST_CASE("level properties on random matrices") {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 30; ++t) {
    EvenSymMatrix G = random_even_sym(rng);
    EvenSymMatrix P = G.perp();  // checks N*G^{-1} is even integral en route
    CHECK(P.n == G.n);
    // Minimality: (N/q)*G^{-1} not even integral for any prime q | N.
    Int N = G.level;
    for (long q = 2; Int(q) <= N; ++q) {
      if (!is_prime(Int(q)) || N % q != 0) continue;
      Int M = N / q;
      bool even_integral = true;
      for (int i = 0; i < G.n && even_integral; ++i)
        for (int j = 0; j < G.n && even_integral; ++j) {
          Rational e = (i == j ? G.inv[i][j] / 2 : G.inv[i][j]) * Rational(M);
          e.canonicalize();
          if (e.get_den() != 1) even_integral = false;
        }
      CHECK(!even_integral);
    }
    // Prime support of N equals prime support of D.
    Int D = abs(G.det);
    for (long q = 2; q <= 100; ++q) {
      if (!is_prime(Int(q))) continue;
      CHECK((N % q == 0) == (D % q == 0));
    }
  }
}

TEST_CASE("discriminant modules") {
  FiniteQuadraticModule m2 = discriminant_module(make_even_sym(im({{2}})));
  CHECK(m2.size() == 2);
  CHECK(m2.q_of({Int(1)}) == ratio(Int(1), Int(4)));

  FiniteQuadraticModule ma2 = discriminant_module(an_matrix(2));
  CHECK(ma2.size() == 3);
  CHECK(ma2.q_of({Int(1)}) == ratio(Int(1), Int(3)));

  FiniteQuadraticModule mu = discriminant_module(make_even_sym(im({{0, 1}, {1, 0}})));
  CHECK(mu.size() == 1);

  std::mt19937_64 rng(2025);
  for (int t = 0; t < 25; ++t) {
    EvenSymMatrix G = random_even_sym(rng);
    Int D = abs(G.det);
    if (D > 200) continue;
    FiniteQuadraticModule M = discriminant_module(G);
    CHECK(Int(M.size()) == D);
    CHECK(M.well_defined());
    CHECK(M.nondegenerate());
  }
}

TEST_CASE("disc group coordinates round-trip") {
  std::mt19937_64 rng(808);
  for (int t = 0; t < 20; ++t) {
    EvenSymMatrix G = random_even_sym(rng);
    if (abs(G.det) > 100) continue;
    DiscGroup D = disc_group(G);
    for (const IntVec& x : D.fqm.elements()) {
      RatVec v = D.representative(x);
      IntVec back = D.coords_of(v);
      CHECK(back == x);
      // Q agrees between the module form and the ambient form mod 1.
      Rational qa = D.fqm.q_of(x);
      Rational qb = G.q_of(v);
      Rational diff = qb - qa;
      diff.canonicalize();
      CHECK(diff.get_den() == 1);
    }
  }
}

TEST_CASE("indecomposable constructors") {
  FiniteQuadraticModule a3 = fqm_indecomposable(FqmKind::A_odd, 3, 1, Int(1));
  CHECK(a3.size() == 3);
  CHECK(a3.q_of({Int(1)}) == ratio(Int(1), Int(3)));

  FiniteQuadraticModule c2 = fqm_indecomposable(FqmKind::C, 2, 1, Int(0));
  CHECK(c2.size() == 4);
  CHECK(c2.q_of({Int(1), Int(1)}) == ratio(Int(1), Int(2)));

  FiniteQuadraticModule b2 = fqm_indecomposable(FqmKind::B, 2, 1, Int(0));
  CHECK(b2.q_of({Int(1), Int(0)}) == ratio(Int(1), Int(2)));
  CHECK(b2.q_of({Int(1), Int(1)}) == ratio(Int(1), Int(2)));

  FiniteQuadraticModule t2 = fqm_indecomposable(FqmKind::A_two, 2, 1, Int(1));
  CHECK(t2.size() == 2);
  CHECK(t2.q_of({Int(1)}) == ratio(Int(1), Int(4)));

  for (auto& m : {a3, c2, b2, t2}) {
    CHECK(m.well_defined());
    CHECK(m.nondegenerate());
  }

  CHECK_THROWS_AS(fqm_indecomposable(FqmKind::A_odd, 4, 1, Int(1)), precondition_error);
  CHECK_THROWS_AS(fqm_indecomposable(FqmKind::A_odd, 3, 1, Int(3)), precondition_error);
  CHECK_THROWS_AS(fqm_indecomposable(FqmKind::A_two, 2, 1, Int(2)), precondition_error);
  CHECK_THROWS_AS(fqm_indecomposable(FqmKind::B, 3, 1, Int(0)), precondition_error);
}

TEST_CASE("direct sums") {
  FiniteQuadraticModule a = fqm_indecomposable(FqmKind::A_odd, 3, 1, Int(1));
  FiniteQuadraticModule sum = fqm_direct_sum(a, a);
  CHECK(sum.size() == 9);
  CHECK(sum.nondegenerate());
  FiniteQuadraticModule trivial;  // empty module
  FiniteQuadraticModule same = fqm_direct_sum(a, trivial);
  CHECK(same.size() == 3);
  CHECK(same.qgram == a.qgram);
  FiniteQuadraticModule mix =
      fqm_direct_sum(fqm_indecomposable(FqmKind::C, 2, 1, Int(0)), fqm_indecomposable(FqmKind::A_two, 2, 1, Int(1)));
  CHECK(mix.size() == 8);
  CHECK(mix.nondegenerate());
}
