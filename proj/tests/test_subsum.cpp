#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "util.hpp"

using namespace qgauss;
using namespace qgauss::testutil;

namespace {
IntVec iv(std::vector<long> v) {
  IntVec out;
  for (long x : v) out.emplace_back(x);
  return out;
}
}  // namespace

TEST_CASE("subgroup construction and orthogonal complements") {
  SubgroupModC h1 = make_subgroup(Int(5), 2, {iv({1, 0})});
  CHECK(h1.order() == 5);
  SubgroupModC p1 = orthogonal_complement(h1);
  CHECK(p1.order() == 5);
  CHECK(p1.contains(iv({0, 1})));
  CHECK(p1.contains(iv({0, 3})));
  CHECK(!p1.contains(iv({1, 0})));

  SubgroupModC h2 = make_subgroup(Int(4), 2, {iv({2, 0})});
  CHECK(h2.order() == 2);
  SubgroupModC p2 = orthogonal_complement(h2);
  CHECK(p2.order() == 8);
  CHECK(p2.contains(iv({2, 0})));
  CHECK(p2.contains(iv({0, 1})));
  CHECK(h2.order() * p2.order() == 16);

  SubgroupModC full = full_subgroup(Int(6), 2);
  CHECK(full.order() == 36);
  CHECK(orthogonal_complement(full).order() == 1);
  SubgroupModC trivial = make_subgroup(Int(6), 2, {});
  CHECK(trivial.order() == 1);
  CHECK(orthogonal_complement(trivial).order() == 36);
}

TEST_CASE("complement invariants on random subgroups") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 30; ++t) {
    long c = rnd(rng, 2, 10);
    int n = 1 + static_cast<int>(rng() % 3);
    SubgroupModC H = random_subgroup(rng, Int(c), n);
    CHECK(H.contains(IntVec(n, Int(0))));
    SubgroupModC P = orthogonal_complement(H);
    Int cn(1);
    for (int i = 0; i < n; ++i) cn *= c;
    CHECK(H.order() * P.order() == cn);
    SubgroupModC PP = orthogonal_complement(P);
    CHECK(PP.elements == H.elements);
    // every pairing vanishes mod c
    for (size_t i = 0; i < H.elements.size() && i < 20; ++i)
      for (size_t j = 0; j < P.elements.size() && j < 20; ++j) {
        Int d(0);
        for (int k = 0; k < n; ++k) d += H.elements[i][k] * P.elements[j][k];
        CHECK(d % c == 0);
      }
  }
}

TEST_CASE("gauss_subsum_brute basics") {
  EvenSymMatrix a2 = an_matrix(2);
  SubgroupModC full = full_subgroup(Int(5), 2);
  CHECK(gauss_subsum_brute(a2, Int(1), Int(5), {}, full) ==
        brute_gauss(make_gauss_spec(a2, Int(1), Int(5))));
  SubgroupModC trivial = make_subgroup(Int(5), 2, {});
  CHECK(gauss_subsum_brute(a2, Int(1), Int(5), {}, trivial) == Cyclotomic::one());
  CHECK_THROWS_AS(gauss_subsum_brute(a2, Int(1), Int(5), rv({ratio(Int(1), Int(5)), Rational(0)}),
                                     full),
                  precondition_error);
}

TEST_CASE("coprime duality fixed examples") {
  EvenSymMatrix a2 = an_matrix(2);
  SubgroupModC h = make_subgroup(Int(5), 2, {iv({1, 0})});
  CHECK(duality_coprime_rhs(a2, Int(1), Int(5), {}, h) ==
        gauss_subsum_brute(a2, Int(1), Int(5), {}, h));
  SubgroupModC full = full_subgroup(Int(5), 2);
  CHECK(duality_coprime_rhs(a2, Int(1), Int(5), {}, full) ==
        closed_gauss_coprime(a2, Int(1), Int(5), {}, {}));
  EvenSymMatrix u = make_even_sym(im({{0, 1}, {1, 0}}));
  SubgroupModC hu = make_subgroup(Int(3), 2, {iv({1, 1})});
  CHECK(duality_coprime_rhs(u, Int(1), Int(3), {}, hu) ==
        gauss_subsum_brute(u, Int(1), Int(3), {}, hu));
}

TEST_CASE("coprime duality on random instances") {
  std::mt19937_64 rng(111);
  for (int t = 0; t < 25; ++t) {
    GaussSpec s = random_coprime_spec(rng, 12, 3, false);
    SubgroupModC H = random_subgroup(rng, s.c, s.G.n);
    CHECK(duality_coprime_rhs(s.G, s.a, s.c, s.w, H) ==
          gauss_subsum_brute(s.G, s.a, s.c, s.w, H));
  }
}

TEST_CASE("dividing duality fixed examples") {
  EvenSymMatrix g2 = make_even_sym(im({{2}}));
  SubgroupModC full4 = full_subgroup(Int(4), 1);
  RatVec half = rv({ratio(Int(1), Int(2))});
  CHECK(duality_divides_rhs(g2, Int(1), Int(4), half, full4) == Cyclotomic::zero());
  CHECK(gauss_subsum_brute(g2, Int(1), Int(4), half, full4) == Cyclotomic::zero());
  CHECK(duality_divides_rhs(g2, Int(1), Int(4), {}, full4) ==
        closed_gauss_divides(g2, Int(1), Int(4), {}, {}));

  EvenSymMatrix a2 = an_matrix(2);
  SubgroupModC h = make_subgroup(Int(3), 2, {iv({1, 0})});
  RatVec w = rat_mat_vec(a2.inv, rv({Rational(1), Rational(0)}));
  CHECK(duality_divides_rhs(a2, Int(1), Int(3), w, h) ==
        gauss_subsum_brute(a2, Int(1), Int(3), w, h));
}

TEST_CASE("dividing duality on random instances") {
  std::mt19937_64 rng(121);
  for (int t = 0; t < 25; ++t) {
    GaussSpec s = random_divides_spec(rng, 12);
    SubgroupModC H = random_subgroup(rng, s.c, s.G.n);
    Cyclotomic lhs = gauss_subsum_brute(s.G, s.a, s.c, s.w, H);
    Cyclotomic rhs = duality_divides_rhs(s.G, s.a, s.c, s.w, H);
    CHECK(rhs == lhs);
    // independent of the modular inverse and of the representatives
    CHECK(duality_divides_rhs(s.G, s.a, s.c, s.w, H, 2) == rhs);
    CHECK(duality_divides_rhs(s.G, s.a, s.c, s.w, H, 0, 1 + t) == rhs);
  }
}

TEST_CASE("poisson identity for arbitrary gcd(N, c)") {
  EvenSymMatrix g2 = make_even_sym(im({{2}}));
  // c = 6: gcd(N, c) = 2 -- neither closed branch covers this.
  SubgroupModC h6 = make_subgroup(Int(6), 1, {iv({2})});
  CHECK(poisson_subsum_rhs(g2, Int(1), Int(6), {}, h6) ==
        gauss_subsum_brute(g2, Int(1), Int(6), {}, h6));
  SubgroupModC full6 = full_subgroup(Int(6), 1);
  CHECK(poisson_subsum_rhs(g2, Int(1), Int(6), {}, full6) ==
        brute_gauss(make_gauss_spec(g2, Int(1), Int(6))));
  SubgroupModC triv6 = make_subgroup(Int(6), 1, {});
  CHECK(poisson_subsum_rhs(g2, Int(1), Int(6), {}, triv6) ==
        gauss_subsum_brute(g2, Int(1), Int(6), {}, triv6));

  std::mt19937_64 rng(131);
  int mixed_gcd = 0;
  for (int t = 0; t < 25; ++t) {
    EvenSymMatrix G = random_even_sym(rng, 2);
    long c = rnd(rng, 2, 8);
    Int a = random_coprime(rng, Int(c), -5, 5);
    RatVec w = random_dual_vec(rng, G, 2);
    SubgroupModC H = random_subgroup(rng, Int(c), G.n);
    Int g;
    Int cc(c);
    mpz_gcd(g.get_mpz_t(), cc.get_mpz_t(), G.level.get_mpz_t());
    if (g != 1 && g != G.level) ++mixed_gcd;
    CHECK(poisson_subsum_rhs(G, a, cc, w, H) == gauss_subsum_brute(G, a, cc, w, H));
  }
  CHECK(mixed_gcd > 0);
}

TEST_CASE("poisson terms are representative-independent") {
  std::mt19937_64 rng(141);
  EvenSymMatrix G = an_matrix(2);
  long c = 5;
  Int a(2);
  RatVec w = random_dual_vec(rng, G, 2);
  for (int t = 0; t < 8; ++t) {
    IntVec y = {Int(rnd(rng, 0, c - 1)), Int(rnd(rng, 0, c - 1))};
    IntVec y2 = {y[0] + c * rnd(rng, -2, 2), y[1] + c * rnd(rng, -2, 2)};
    auto term = [&](const IntVec& yy) {
      RatVec x(2);
      for (int i = 0; i < 2; ++i) x[i] = ratio(-yy[i], a);
      Rational phase = (w[0] * Rational(yy[0]) + w[1] * Rational(yy[1])) / Rational(c);
      return Cyclotomic::e(phase) * brute_gauss(make_gauss_spec(G, a, Int(c), w, x));
    };
    CHECK(term(y) == term(y2));
  }
}

TEST_CASE("hyperplane closed form fixed examples") {
  EvenSymMatrix a2 = an_matrix(2);
  // h = 0 recovers the full closed sum.
  CHECK(hyperplane_subsum_closed(a2, Int(1), Int(5), {}, iv({0, 0})) ==
        closed_gauss_coprime(a2, Int(1), Int(5), {}, {}));
  SubgroupModC perp = orthogonal_complement(make_subgroup(Int(5), 2, {iv({1, 0})}));
  CHECK(hyperplane_subsum_closed(a2, Int(1), Int(5), {}, iv({1, 0})) ==
        gauss_subsum_brute(a2, Int(1), Int(5), {}, perp));
  EvenSymMatrix u = make_even_sym(im({{0, 1}, {1, 0}}));
  SubgroupModC perpu = orthogonal_complement(make_subgroup(Int(5), 2, {iv({1, 1})}));
  CHECK(hyperplane_subsum_closed(u, Int(1), Int(5), {}, iv({1, 1})) ==
        gauss_subsum_brute(u, Int(1), Int(5), {}, perpu));
}

TEST_CASE("hyperplane closed form equals brute subsum across branches") {
  std::mt19937_64 rng(151);
  int branch_one = 0, branch_zero = 0, branch_inner = 0;
  int done = 0;
  while (done < 40) {
    GaussSpec s = random_coprime_spec(rng, 10, 3, false);
    IntVec h(s.G.n);
    for (auto& e : h) e = rnd(rng, -3, 3);
    // classify the branch for coverage accounting
    EvenSymMatrix gp = s.G.perp();
    Int hgh(0);
    for (int i = 0; i < s.G.n; ++i)
      for (int j = 0; j < s.G.n; ++j) hgh += h[i] * gp.g[i][j] * h[j];
    Int nwh(0);
    for (int i = 0; i < s.G.n; ++i) {
      Rational r = Rational(s.G.level) * s.w[i];
      r.canonicalize();
      nwh += r.get_num() * h[i];
    }
    Int m2c, mc, twoc = 2 * s.c;
    mpz_fdiv_r(m2c.get_mpz_t(), hgh.get_mpz_t(), twoc.get_mpz_t());
    mpz_fdiv_r(mc.get_mpz_t(), nwh.get_mpz_t(), s.c.get_mpz_t());
    if (m2c == 0 && mc == 0) ++branch_one;
    else if (m2c == 0) ++branch_zero;
    else ++branch_inner;

    Cyclotomic closed;
    try {
      closed = hyperplane_subsum_closed(s.G, s.a, s.c, s.w, h);
    } catch (const precondition_error& ex) {
      CHECK(std::string(ex.what()).find("no_closed_form_known") != std::string::npos);
      continue;
    }
    SubgroupModC hp = orthogonal_complement(make_subgroup(s.c, s.G.n, {h}));
    CHECK(closed == gauss_subsum_brute(s.G, s.a, s.c, s.w, hp));
    ++done;
  }
  CHECK(branch_one > 0);
  CHECK(branch_zero > 0);
  CHECK(branch_inner > 0);
}

TEST_CASE("vanishing criterion") {
  EvenSymMatrix g2 = make_even_sym(im({{2}}));
  RatVec half = rv({ratio(Int(1), Int(2))});
  SubgroupModC h = make_subgroup(Int(4), 1, {iv({2})});
  CHECK(vanishing_criterion(g2, Int(1), Int(4), half, h) == Cyclotomic::zero());
  CHECK(vanishing_criterion(g2, Int(1), Int(4), half, full_subgroup(Int(4), 1)) ==
        Cyclotomic::zero());
  CHECK(vanishing_coset_sum(g2, Int(1), Int(4), half, iv({1})) == Cyclotomic::zero());
  CHECK(vanishing_coset_sum(g2, Int(1), Int(4), half, iv({0})) == Cyclotomic::zero());

  EvenSymMatrix a2 = an_matrix(2);
  RatVec w = rat_mat_vec(a2.inv, rv({Rational(1), Rational(0)}));
  CHECK(vanishing_criterion(a2, Int(1), Int(3), w, full_subgroup(Int(3), 2)) ==
        Cyclotomic::zero());
  for (long x1 = 0; x1 < 3; ++x1)
    for (long x2 = 0; x2 < 3; ++x2)
      CHECK(vanishing_coset_sum(a2, Int(1), Int(3), w, iv({x1, x2})) == Cyclotomic::zero());

  // hypothesis violations are rejected
  CHECK_THROWS_WITH_AS(vanishing_criterion(g2, Int(1), Int(4), {}, h),
                       doctest::Contains("aw_integral"), precondition_error);
  SubgroupModC small = make_subgroup(Int(4), 1, {});
  CHECK_THROWS_WITH_AS(vanishing_criterion(g2, Int(1), Int(4), half, small),
                       doctest::Contains("kernel_not_contained"), precondition_error);
  CHECK_THROWS_WITH_AS(vanishing_criterion(g2, Int(1), Int(3), half, h),
                       doctest::Contains("n_not_dividing_c"), precondition_error);
}
