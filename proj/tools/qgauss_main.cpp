// Command-line front end: every evaluator with file/JSON input, JSON on
// stdout, diagnostics on stderr. Exit codes: 0 success, 2 precondition
// violation or malformed input, 3 internal-consistency fault.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <string>

#include "qgauss/counting.hpp"
#include "qgauss/hecke.hpp"
#include "qgauss/json_io.hpp"
#include "qgauss/subsum.hpp"
#include "qgauss/weil.hpp"

using namespace qgauss;
using nlohmann::json;

namespace {

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

// A cyclotomic result at the top level, optionally tagged with extra keys.
void emit_value(const Cyclotomic& z, const json& extra = json::object()) {
  json out = cyclotomic_to_json(z);
  for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
  emit(out);
}

struct GaussArgs {
  std::string matrix;
  std::string a, c;
  std::string w, x, t;
};

void add_gauss_flags(CLI::App* cmd, GaussArgs& args, bool with_t, bool with_x = true) {
  cmd->add_option("--matrix", args.matrix, "matrix file or inline JSON array-of-arrays")
      ->required();
  cmd->add_option("--a", args.a, "numerator a")->required();
  cmd->add_option("--c", args.c, "modulus c")->required();
  cmd->add_option("--w", args.w, "shift w, comma-separated rationals");
  if (with_x) cmd->add_option("--x", args.x, "linear twist x, comma-separated rationals");
  if (with_t) cmd->add_option("--t", args.t, "ranges t, comma-separated integers");
}

RatVec rat_vec_or_zero(const std::string& s, int n) {
  if (s.empty()) return RatVec(n, Rational(0));
  RatVec v = parse_rat_list(s);
  if (static_cast<int>(v.size()) != n)
    throw precondition_error("dimension_mismatch", "vector length must equal the matrix size");
  return v;
}

// Dispatch of the closed Gauss-sum formula by the gcd regime.
Cyclotomic closed_gauss_auto(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                             const RatVec& x, std::string* branch) {
  if (gcd_int(G.level, c) == 1) {
    if (branch) *branch = "coprime";
    return closed_gauss_coprime(G, a, c, w, x);
  }
  if (c % G.level == 0) {
    if (branch) *branch = "divides";
    return closed_gauss_divides(G, a, c, w, x);
  }
  throw precondition_error("no_closed_form",
                           "gcd(N, c) is neither 1 nor N; only the brute sum applies");
}

void check_agree(const Cyclotomic& lhs, const Cyclotomic& rhs, const std::string& what) {
  if (lhs != rhs)
    throw internal_error("route disagreement in " + what + ": " + lhs.str() + " vs " + rhs.str());
}

// The unnormalized discriminant sum by enumeration of L#/L.
Cyclotomic milgram_brute(const EvenSymMatrix& G, const Int& c) {
  const FiniteQuadraticModule M = discriminant_module(G);
  ExpSum acc;
  for (const IntVec& v : M.elements()) acc.add(Rational(c) * M.q_of(v));
  return acc.to_cyclotomic();
}

// ---- the seeded oracle-equivalence suite ----

long rnd(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

EvenSymMatrix random_even_sym(std::mt19937_64& rng, int max_n, long spread, bool positive_definite) {
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

RatVec random_dual_vec(std::mt19937_64& rng, const EvenSymMatrix& G) {
  RatVec y(G.n);
  for (auto& e : y) e = Rational(rnd(rng, -3, 3));
  return rat_mat_vec(G.inv, y);
}

RatVec random_a_vec(std::mt19937_64& rng, int n, const Int& a) {
  RatVec x(n);
  for (auto& e : x) e = ratio(Int(rnd(rng, -3, 3)), a);
  return x;
}

Int random_coprime(std::mt19937_64& rng, const Int& c, long lo, long hi) {
  for (;;) {
    Int a(rnd(rng, lo, hi));
    if (a != 0 && gcd_int(a, c) == 1) return a;
  }
}

GaussSpec random_coprime_spec(std::mt19937_64& rng, long cmax) {
  for (;;) {
    EvenSymMatrix G = random_even_sym(rng, 3, 3, false);
    Int c(rnd(rng, 1, cmax));
    if (gcd_int(c, G.level) != 1) continue;
    Int a = random_coprime(rng, c, -7, 7);
    return make_gauss_spec(G, a, c, random_dual_vec(rng, G), random_a_vec(rng, G.n, a));
  }
}

GaussSpec random_divides_spec(std::mt19937_64& rng, long cmax) {
  for (;;) {
    EvenSymMatrix G = random_even_sym(rng, 3, 2, true);
    if (G.level > cmax) continue;
    Int c(rnd(rng, 1, cmax / to_long(G.level)) * G.level);
    Int a = random_coprime(rng, c, -7, 7);
    return make_gauss_spec(G, a, c, random_dual_vec(rng, G), random_a_vec(rng, G.n, a));
  }
}

SubgroupModC random_subgroup(std::mt19937_64& rng, const Int& c, int n) {
  int k = 1 + static_cast<int>(rng() % 2);
  std::vector<IntVec> gens;
  for (int i = 0; i < k; ++i) {
    IntVec g(n);
    for (auto& e : g) e = rnd(rng, 0, to_long(c) - 1);
    gens.push_back(g);
  }
  return make_subgroup(c, n, gens);
}

json run_verify(unsigned long seed) {
  json checks = json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, long trials, bool pass) {
    checks.push_back(json{{"name", name}, {"trials", trials}, {"pass", pass}});
    all_pass = all_pass && pass;
  };

  {
    const EvenSymMatrix two = make_even_sym({{Int(2)}});
    bool ok = true;
    long trials = 0;
    for (long c = 1; c <= 40; ++c)
      for (long a = 1; a <= c; ++a) {
        if (gcd_int(Int(a), Int(c)) != 1) continue;
        ++trials;
        ok = ok && brute_gauss(make_gauss_spec(two, Int(a), Int(c))) ==
                       classical_gauss_value(Int(a), Int(c));
      }
    record("classical_law", trials, ok);
  }

  {
    std::mt19937_64 rng(seed * 2 + 1);
    bool ok = true;
    for (int i = 0; i < 10; ++i) {
      GaussSpec s = random_coprime_spec(rng, 12);
      ok = ok && closed_gauss_coprime(s.G, s.a, s.c, s.w, s.x) == brute_gauss(s);
    }
    record("closed_coprime_vs_brute", 10, ok);
  }

  {
    std::mt19937_64 rng(seed * 3 + 1);
    bool ok = true;
    for (int i = 0; i < 8; ++i) {
      GaussSpec s = random_divides_spec(rng, 12);
      ok = ok && closed_gauss_divides(s.G, s.a, s.c, s.w, s.x) == brute_gauss(s);
    }
    record("closed_divides_vs_brute", 8, ok);
  }

  {
    std::mt19937_64 rng(seed * 5 + 1);
    bool ok = true;
    int done = 0;
    while (done < 8) {
      GaussSpec s = random_coprime_spec(rng, 10);
      SubgroupModC H = random_subgroup(rng, s.c, s.G.n);
      RatVec w = random_dual_vec(rng, s.G);
      ok = ok && gauss_subsum_brute(s.G, s.a, s.c, w, H) ==
                     duality_coprime_rhs(s.G, s.a, s.c, w, H);
      ok = ok && gauss_subsum_brute(s.G, s.a, s.c, w, H) ==
                     poisson_subsum_rhs(s.G, s.a, s.c, w, H);
      ++done;
    }
    record("duality_and_poisson", 8, ok);
  }

  {
    std::mt19937_64 rng(seed * 7 + 1);
    bool ok = true;
    for (int i = 0; i < 12; ++i) {
      EvenSymMatrix G = random_even_sym(rng, 3, 3, false);
      Int c = random_coprime(rng, G.det, 1, 20);
      IntVec v(G.n);
      for (auto& e : v) e = rnd(rng, -4, 4);
      Int m(rnd(rng, -4, 4));
      ok = ok && count_quadric_closed_general(G, v, m, c) == count_quadric_brute(G, v, m, c);
    }
    record("count_general_vs_brute", 12, ok);
  }

  {
    std::mt19937_64 rng(seed * 11 + 1);
    bool ok = true;
    const long primes[] = {2, 3, 5, 7, 11, 13};
    for (int i = 0; i < 12; ++i) {
      Int p(primes[rng() % 6]);
      EvenSymMatrix G = random_even_sym(rng, 3, 3, false);
      if (G.det % p == 0) {
        --i;
        continue;
      }
      IntVec v(G.n);
      for (auto& e : v) e = rnd(rng, -4, 4);
      Int m(rnd(rng, -4, 4));
      ok = ok && count_quadric_prime(G, v, m, p) == count_quadric_brute(G, v, m, p);
    }
    record("count_prime_vs_brute", 12, ok);
  }

  {
    std::mt19937_64 rng(seed * 13 + 1);
    bool ok = true;
    int done = 0;
    const long primes[] = {2, 3, 5, 7};
    while (done < 10) {
      Int p(primes[rng() % 4]);
      Int a11(rnd(rng, -3, 3)), a22(rnd(rng, -3, 3)), a33(rnd(rng, -3, 3));
      Int a12(rnd(rng, -3, 3)), a13(rnd(rng, -3, 3)), a23(rnd(rng, -3, 3));
      Int d(rnd(rng, -3, 3));
      if ((a11 * a22 * a33 * d) % p == 0) continue;
      MarkoffCoeffs co = markoff_coeffs(a11, a22, a33, a12, a13, a23, d);
      ok = ok && markoff_count_closed(co, p) == markoff_count_brute(co, p);
      ++done;
    }
    record("markoff_closed_vs_brute", 10, ok);
  }

  {
    bool ok = true;
    long trials = 0;
    for (int n = 1; n <= 4; ++n) {
      EvenSymMatrix G = an_matrix(n);
      for (long c = 1; c <= 10; ++c) {
        if (gcd_int(Int(c), G.det) != 1) continue;
        ++trials;
        ok = ok && milgram_extended(G, Int(c)) == milgram_brute(G, Int(c));
      }
    }
    record("milgram_vs_enumeration", trials, ok);
  }

  return json{{"seed", seed}, {"checks", checks}, {"all_pass", all_pass}};
}

IntMat parse_sl2(const std::string& s) {
  IntVec entries = parse_int_list(s);
  if (entries.size() != 4)
    throw precondition_error("bad_sl2", "--sl2 expects a,b,c,d (four integers)");
  IntMat A{{entries[0], entries[1]}, {entries[2], entries[3]}};
  if (A[0][0] * A[1][1] - A[0][1] * A[1][0] != 1)
    throw precondition_error("bad_sl2", "the matrix must have determinant 1");
  return A;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact quadratic Gauss sums, Weil matrices, and point counts"};
  app.require_subcommand(1);
  int threads = 1;
  app.add_option("--threads", threads, "worker threads for brute enumeration");

  GaussArgs g_brute, g_closed, g_sub, g_dual;
  std::string method_closed = "closed";

  CLI::App* cmd_gauss = app.add_subcommand("gauss", "brute-force evaluation of the central sum");
  add_gauss_flags(cmd_gauss, g_brute, /*with_t=*/true);

  CLI::App* cmd_closed = app.add_subcommand("gauss-closed", "closed-form evaluation");
  add_gauss_flags(cmd_closed, g_closed, /*with_t=*/false);
  cmd_closed->add_option("--method", method_closed, "closed | both")
      ->check(CLI::IsMember({"closed", "both"}));

  std::string mil_matrix, mil_c, mil_method = "closed";
  CLI::App* cmd_mil = app.add_subcommand("milgram", "discriminant sum in closed form");
  cmd_mil->add_option("--matrix", mil_matrix)->required();
  cmd_mil->add_option("--c", mil_c)->required();
  cmd_mil->add_option("--method", mil_method, "closed | both")
      ->check(CLI::IsMember({"closed", "both"}));

  std::string sub_subgroup, sub_hyperplane, sub_method = "brute";
  CLI::App* cmd_sub = app.add_subcommand("subsum", "Gauss sum restricted to a subgroup");
  add_gauss_flags(cmd_sub, g_sub, /*with_t=*/false, /*with_x=*/false);
  cmd_sub->add_option("--subgroup", sub_subgroup, "JSON {\"c\": c, \"gens\": [[...], ...]}");
  cmd_sub->add_option("--hyperplane", sub_hyperplane,
                      "integer vector h; sums over v with v.h = 0 mod c, closed form");
  cmd_sub->add_option("--method", sub_method, "brute | closed | both")
      ->check(CLI::IsMember({"brute", "closed", "both"}));

  std::string dual_subgroup;
  CLI::App* cmd_dual = app.add_subcommand("duality-check", "both sides of the duality identity");
  add_gauss_flags(cmd_dual, g_dual, /*with_t=*/false, /*with_x=*/false);
  cmd_dual->add_option("--subgroup", dual_subgroup)->required();

  std::string weil_matrix, weil_word_arg, weil_sl2, weil_route = "auto";
  CLI::App* cmd_weil = app.add_subcommand("weil", "Weil representation matrix");
  cmd_weil->add_option("--matrix", weil_matrix)->required();
  cmd_weil->add_option("--word", weil_word_arg, "word over S, T, s, t (lowercase = inverse)");
  cmd_weil->add_option("--sl2", weil_sl2, "a,b,c,d with determinant 1");
  cmd_weil->add_option("--route", weil_route, "auto | shintani | closed | both")
      ->check(CLI::IsMember({"auto", "shintani", "closed", "both"}));

  std::string cnt_matrix, cnt_v, cnt_m, cnt_c, cnt_method = "closed";
  CLI::App* cmd_cnt = app.add_subcommand("count", "solutions of Q(x) + v.x = m mod c");
  cmd_cnt->add_option("--matrix", cnt_matrix)->required();
  cmd_cnt->add_option("--v", cnt_v, "linear term, comma-separated integers");
  cmd_cnt->add_option("--m", cnt_m)->required();
  cmd_cnt->add_option("--c", cnt_c)->required();
  cmd_cnt->add_option("--method", cnt_method, "closed | prime | brute | both")
      ->check(CLI::IsMember({"closed", "prime", "brute", "both"}));

  std::string mar_coeffs, mar_p, mar_method = "closed";
  CLI::App* cmd_mar = app.add_subcommand("markoff", "generalized Markoff counts over F_p");
  cmd_mar->add_option("--coeffs", mar_coeffs, "a11,a22,a33,a12,a13,a23,d")->required();
  cmd_mar->add_option("--p", mar_p)->required();
  cmd_mar->add_option("--method", mar_method, "brute | closed | both")
      ->check(CLI::IsMember({"brute", "closed", "both"}));

  CLI::App* cmd_hecke = app.add_subcommand("hecke", "Hecke Gauss sums");
  cmd_hecke->require_subcommand(1);
  std::string hq_d, hq_v0, hq_v1, hq_c1, hq_method = "closed";
  CLI::App* cmd_hq = cmd_hecke->add_subcommand("quad", "quadratic field Q(sqrt(d))");
  cmd_hq->add_option("--d", hq_d)->required();
  cmd_hq->add_option("--v0", hq_v0)->required();
  cmd_hq->add_option("--v1", hq_v1)->required();
  cmd_hq->add_option("--c1", hq_c1)->required();
  cmd_hq->add_option("--method", hq_method, "closed | explicit | brute | both")
      ->check(CLI::IsMember({"closed", "explicit", "brute", "both"}));
  std::string hc_p, hc_v, hc_c1, hc_budget = "1048576";
  CLI::App* cmd_hc = cmd_hecke->add_subcommand("cyc", "cyclotomic field Q(zeta_p)");
  cmd_hc->add_option("--p", hc_p)->required();
  cmd_hc->add_option("--v", hc_v, "v_1,...,v_{p-1}")->required();
  cmd_hc->add_option("--c1", hc_c1)->required();
  cmd_hc->add_option("--budget", hc_budget, "enumeration budget for the non-closed route");

  std::string th_matrix, th_sl2, th_t;
  long th_radius = 25;
  CLI::App* cmd_th = app.add_subcommand("theta-check", "theta transformation residual at tau = i");
  cmd_th->add_option("--matrix", th_matrix)->required();
  cmd_th->add_option("--sl2", th_sl2)->required();
  cmd_th->add_option("--t", th_t, "discriminant-group coordinates of the component");
  cmd_th->add_option("--radius", th_radius, "truncation radius (default 25)");

  unsigned long seed = 1;
  CLI::App* cmd_ver = app.add_subcommand("verify", "seeded oracle-equivalence suite");
  cmd_ver->add_option("--seed", seed, "random seed (default 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit(json{{"error", "usage"}, {"detail", e.what()}});
    return 2;
  }

  try {
    set_thread_count(threads);

    if (cmd_gauss->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(g_brute.matrix));
      IntVec t = g_brute.t.empty() ? IntVec{} : parse_int_list(g_brute.t);
      GaussSpec spec =
          make_gauss_spec(G, parse_int(g_brute.a), parse_int(g_brute.c),
                          rat_vec_or_zero(g_brute.w, G.n), rat_vec_or_zero(g_brute.x, G.n), t);
      emit_value(brute_gauss(spec));
    } else if (cmd_closed->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(g_closed.matrix));
      Int a = parse_int(g_closed.a), c = parse_int(g_closed.c);
      RatVec w = rat_vec_or_zero(g_closed.w, G.n), x = rat_vec_or_zero(g_closed.x, G.n);
      std::string branch;
      Cyclotomic value = closed_gauss_auto(G, a, c, w, x, &branch);
      if (method_closed == "both")
        check_agree(value, brute_gauss(make_gauss_spec(G, a, c, w, x)), "gauss-closed");
      emit_value(value, json{{"branch", branch}});
    } else if (cmd_mil->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(mil_matrix));
      Int c = parse_int(mil_c);
      Cyclotomic value = milgram_extended(G, c);
      if (mil_method == "both") check_agree(value, milgram_brute(G, c), "milgram");
      emit_value(value);
    } else if (cmd_sub->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(g_sub.matrix));
      Int a = parse_int(g_sub.a), c = parse_int(g_sub.c);
      RatVec w = rat_vec_or_zero(g_sub.w, G.n);
      if (sub_subgroup.empty() == sub_hyperplane.empty())
        throw precondition_error("bad_subgroup",
                                 "give exactly one of --subgroup and --hyperplane");
      if (!sub_subgroup.empty()) {
        if (sub_method != "brute")
          throw precondition_error("no_closed_form",
                                   "closed subsums require --hyperplane input");
        SubgroupModC H = parse_subgroup_arg(sub_subgroup, c, G.n);
        emit_value(gauss_subsum_brute(G, a, c, w, H));
      } else {
        IntVec h = parse_int_list(sub_hyperplane);
        if (static_cast<int>(h.size()) != G.n)
          throw precondition_error("dimension_mismatch", "--hyperplane length must equal n");
        SubgroupModC H = orthogonal_complement(make_subgroup(c, G.n, {h}));
        Cyclotomic value = sub_method == "brute" ? gauss_subsum_brute(G, a, c, w, H)
                                                 : hyperplane_subsum_closed(G, a, c, w, h);
        if (sub_method == "both")
          check_agree(value, gauss_subsum_brute(G, a, c, w, H), "subsum");
        emit_value(value);
      }
    } else if (cmd_dual->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(g_dual.matrix));
      Int a = parse_int(g_dual.a), c = parse_int(g_dual.c);
      RatVec w = rat_vec_or_zero(g_dual.w, G.n);
      SubgroupModC H = parse_subgroup_arg(dual_subgroup, c, G.n);
      const Int g = gcd_int(G.level, c);
      std::string theorem;
      Cyclotomic rhs;
      if (g == 1) {
        theorem = "coprime_duality";
        rhs = duality_coprime_rhs(G, a, c, w, H);
      } else if (c % G.level == 0) {
        theorem = "divides_duality";
        rhs = duality_divides_rhs(G, a, c, w, H);
      } else {
        theorem = "poisson";
        rhs = poisson_subsum_rhs(G, a, c, w, H);
      }
      Cyclotomic lhs = gauss_subsum_brute(G, a, c, w, H);
      if (lhs != rhs) throw internal_error("duality identity " + theorem + " failed");
      emit(json{{"theorem", theorem},
                {"lhs", cyclotomic_to_json(lhs)},
                {"rhs", cyclotomic_to_json(rhs)},
                {"equal", true}});
    } else if (cmd_weil->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(weil_matrix));
      if (weil_word_arg.empty() == weil_sl2.empty())
        throw precondition_error("bad_route", "give exactly one of --word and --sl2");
      WeilMatrix result = weil_identity(G);
      json extra = json::object();
      if (!weil_word_arg.empty()) {
        auto [mp2, mat] = weil_word(G, weil_word_arg);
        result = mat;
        extra["mp2"] = json{{"matrix",
                             json::array({json::array({int_to_json(mp2.mat[0][0]),
                                                       int_to_json(mp2.mat[0][1])}),
                                          json::array({int_to_json(mp2.mat[1][0]),
                                                       int_to_json(mp2.mat[1][1])})})},
                            {"eps", mp2.eps}};
      } else {
        IntMat A = parse_sl2(weil_sl2);
        const Int& cc = A[1][0];
        auto closed = [&](std::string* which) -> WeilMatrix {
          if (cc > 0 && A[0][0] != 0 && gcd_int(G.level, cc) == 1) {
            if (which) *which = "closed_coprime";
            return weil_closed_coprime(G, A);
          }
          if (cc > 0 && cc % G.level == 0) {
            if (which) *which = "closed_divides";
            return weil_closed_divides(G, A);
          }
          throw precondition_error("no_closed_route",
                                   "need c > 0 with gcd(N, c) = 1 (and a != 0) or N | c");
        };
        std::string route_used = "shintani";
        if (weil_route == "shintani" || weil_route == "auto") {
          result = weil_shintani(G, A);
        } else if (weil_route == "closed") {
          result = closed(&route_used);
        } else {  // both
          result = weil_shintani(G, A);
          WeilMatrix other = closed(&route_used);
          if (!weil_equal(result, other))
            throw internal_error("Weil routes disagree: shintani vs " + route_used);
          route_used = "shintani+" + route_used;
        }
        extra["route"] = route_used;
      }
      json out = weil_matrix_to_json(result);
      for (auto it = extra.begin(); it != extra.end(); ++it) out[it.key()] = it.value();
      emit(out);
    } else if (cmd_cnt->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(cnt_matrix));
      IntVec v = cnt_v.empty() ? IntVec(G.n, Int(0)) : parse_int_list(cnt_v);
      if (static_cast<int>(v.size()) != G.n)
        throw precondition_error("dimension_mismatch", "--v length must equal n");
      Int m = parse_int(cnt_m), c = parse_int(cnt_c);
      if (cnt_method == "brute") {
        emit(json{{"count", int_to_json(count_quadric_brute(G, v, m, c))}});
      } else if (cnt_method == "prime") {
        emit(json{{"count", int_to_json(count_quadric_prime(G, v, m, c))}});
      } else if (cnt_method == "closed") {
        emit(json{{"count", int_to_json(count_quadric_closed_general(G, v, m, c))}});
      } else {
        Int brute = count_quadric_brute(G, v, m, c);
        Int closed = count_quadric_closed_general(G, v, m, c);
        if (brute != closed)
          throw internal_error("count routes disagree: brute " + brute.get_str() + " vs closed " +
                               closed.get_str());
        if (is_prime(c) && G.det % c != 0 && count_quadric_prime(G, v, m, c) != brute)
          throw internal_error("prime-count route disagrees with the oracle");
        emit(json{{"brute", int_to_json(brute)}, {"closed", int_to_json(closed)}});
      }
    } else if (cmd_mar->parsed()) {
      IntVec co = parse_int_list(mar_coeffs);
      if (co.size() != 7)
        throw precondition_error("bad_coeffs", "--coeffs expects a11,a22,a33,a12,a13,a23,d");
      MarkoffCoeffs coeffs = markoff_coeffs(co[0], co[1], co[2], co[3], co[4], co[5], co[6]);
      Int p = parse_int(mar_p);
      if (mar_method == "brute") {
        emit(json{{"count", int_to_json(markoff_count_brute(coeffs, p))}});
      } else if (mar_method == "closed") {
        emit(json{{"count", int_to_json(markoff_count_closed(coeffs, p))}});
      } else {
        Int brute = markoff_count_brute(coeffs, p);
        Int closed = markoff_count_closed(coeffs, p);
        if (brute != closed)
          throw internal_error("Markoff routes disagree: brute " + brute.get_str() +
                               " vs closed " + closed.get_str());
        emit(json{{"brute", int_to_json(brute)}, {"closed", int_to_json(closed)}});
      }
    } else if (cmd_hq->parsed()) {
      QuadHeckeSpec spec =
          make_quad_hecke(parse_int(hq_d), parse_int(hq_v0), parse_int(hq_v1), parse_int(hq_c1));
      Cyclotomic value;
      if (hq_method == "brute") {
        value = hecke_quadratic_brute(spec, Int(1) << 20);
      } else if (hq_method == "explicit") {
        value = hecke_quadratic_explicit(spec);
      } else {
        value = hecke_quadratic(spec);
        if (hq_method == "both") {
          check_agree(value, hecke_quadratic_brute(spec, Int(1) << 20), "hecke quad");
          if (gcd_int(spec.c, spec.G.det) == 1)
            check_agree(value, hecke_quadratic_explicit(spec), "hecke quad explicit");
        }
      }
      emit_value(value);
    } else if (cmd_hc->parsed()) {
      CycHeckeSpec spec = make_cyc_hecke(parse_int(hc_p), parse_int_list(hc_v), parse_int(hc_c1));
      emit_value(hecke_cyclotomic(spec, parse_int(hc_budget)));
    } else if (cmd_th->parsed()) {
      EvenSymMatrix G = make_even_sym(parse_matrix_arg(th_matrix));
      IntMat A = parse_sl2(th_sl2);
      IntVec t_coords;
      if (!th_t.empty()) t_coords = parse_int_list(th_t);
      else t_coords.assign(disc_group(G).orders.size(), Int(0));
      std::vector<std::complex<long double>> z(G.n, std::complex<long double>(0.0L, 0.0L));
      double res = theta_transform_residual(G, t_coords, A, {0.0L, 1.0L}, z, th_radius);
      emit(json{{"residual", res}, {"radius", th_radius}});
    } else if (cmd_ver->parsed()) {
      json report = run_verify(seed);
      emit(report);
      if (!report.at("all_pass").get<bool>()) return 3;
    }
  } catch (const precondition_error& e) {
    emit(json{{"error", e.code()}, {"detail", e.detail()}});
    return 2;
  } catch (const internal_error& e) {
    emit(json{{"error", "internal_inconsistency"}, {"detail", e.what()}});
    return 3;
  } catch (const std::exception& e) {
    emit(json{{"error", "unexpected"}, {"detail", e.what()}});
    return 2;
  }
  return 0;
}
