#include "qgauss/subsum.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace qgauss {

namespace {

constexpr long kMaxSubgroupOrder = 100000;

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int mod_pos(const Int& v, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return r;
}

int pow_sign(int k, int n) {
  if (k == 0) return n == 0 ? 1 : 0;
  if (k == -1 && n % 2 != 0) return -1;
  return 1;
}

bool is_int(const Rational& r) {
  Rational t = r;
  t.canonicalize();
  return t.get_den() == 1;
}

Int rat_int(const Rational& r) {
  Rational t = r;
  t.canonicalize();
  return t.get_num();
}

RatVec to_rat_vec(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rational(v[i]);
  return out;
}

// Integral image G w of a dual vector w (throws if not integral).
IntVec integral_gw(const EvenSymMatrix& G, const RatVec& w) {
  RatVec gw = rat_mat_vec(to_rat_mat(G.g), w);
  IntVec out(G.n);
  for (int i = 0; i < G.n; ++i) {
    if (!is_int(gw[i])) throw precondition_error("w_not_lattice", "G w must be integral");
    out[i] = rat_int(gw[i]);
  }
  return out;
}

RatVec expand_w(int n, const RatVec& w) {
  if (w.empty()) return RatVec(n, Rational(0));
  if (static_cast<int>(w.size()) != n)
    throw precondition_error("dimension_mismatch", "w must have length n");
  return w;
}

// sqrt(|H|) / sqrt(|H^perp|) as an exact cyclotomic.
Cyclotomic order_ratio(const Int& h, const Int& hp) {
  return sqrt_int(h) * sqrt_int(hp) / Rational(hp);
}

// True iff G z = d mod c is solvable in z, via the Smith form of G.
bool in_image_mod(const EvenSymMatrix& G, const IntVec& d, const Int& c) {
  for (int i = 0; i < G.n; ++i) {
    Int ud(0);
    for (int j = 0; j < G.n; ++j) ud += G.smith_u[i][j] * d[j];
    Int g = gcd_int(gcd_int(G.smith_diag[i], c), c);
    if (mod_pos(ud, g) != 0) return false;
  }
  return true;
}

}  // namespace

bool SubgroupModC::contains(const IntVec& v) const {
  IntVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = mod_pos(v[i], c);
  return std::binary_search(elements.begin(), elements.end(), r);
}

SubgroupModC make_subgroup(const Int& c, int n, const std::vector<IntVec>& gens) {
  if (c < 1) throw precondition_error("bad_modulus", "c must be positive");
  if (n < 1) throw precondition_error("bad_rank", "n must be positive");
  SubgroupModC H;
  H.c = c;
  H.n = n;
  for (const IntVec& g : gens) {
    if (static_cast<int>(g.size()) != n)
      throw precondition_error("dimension_mismatch", "generator length must equal n");
    IntVec r(n);
    for (int i = 0; i < n; ++i) r[i] = mod_pos(g[i], c);
    H.gens.push_back(r);
  }
  std::set<IntVec> seen;
  std::vector<IntVec> queue;
  IntVec zero(n, Int(0));
  seen.insert(zero);
  queue.push_back(zero);
  while (!queue.empty()) {
    IntVec v = queue.back();
    queue.pop_back();
    for (const IntVec& g : H.gens) {
      IntVec u(n);
      for (int i = 0; i < n; ++i) u[i] = mod_pos(v[i] + g[i], c);
      if (seen.insert(u).second) {
        if (seen.size() > kMaxSubgroupOrder)
          throw precondition_error("subgroup_too_large", "subgroup order exceeds the 10^5 cap");
        queue.push_back(u);
      }
    }
  }
  H.elements.assign(seen.begin(), seen.end());
  return H;
}

SubgroupModC full_subgroup(const Int& c, int n) {
  std::vector<IntVec> gens;
  for (int i = 0; i < n; ++i) {
    IntVec e(n, Int(0));
    e[i] = 1;
    gens.push_back(e);
  }
  return make_subgroup(c, n, gens);
}

SubgroupModC orthogonal_complement(const SubgroupModC& H) {
  const int n = H.n;
  if (H.gens.empty()) return full_subgroup(H.c, n);
  IntMat A;
  for (const IntVec& g : H.gens) A.push_back(g);
  SmithForm f = smith_normal_form(A);  // U A V = S
  const int k = static_cast<int>(A.size());
  std::vector<IntVec> gens;
  for (int i = 0; i < n; ++i) {
    Int s = (i < std::min(k, n)) ? f.S[i][i] : Int(0);
    Int factor = H.c / gcd_int(s, H.c);
    IntVec g(n);
    for (int r = 0; r < n; ++r) g[r] = mod_pos(factor * f.V[r][i], H.c);
    gens.push_back(g);
  }
  return make_subgroup(H.c, n, gens);
}

Cyclotomic gauss_subsum_brute(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                              const SubgroupModC& H) {
  if (H.n != G.n || H.c != c)
    throw precondition_error("dimension_mismatch", "subgroup does not live in Z^n/cZ^n");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  const RatVec w = expand_w(G.n, w_in);
  integral_gw(G, w);
  ExpSum acc;
  const Rational r = ratio(a, c);
  for (const IntVec& v : H.elements) acc.add(r * G.q_of(add_vec(to_rat_vec(v), w)));
  return acc.to_cyclotomic();
}

Cyclotomic duality_coprime_rhs(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                               const SubgroupModC& H) {
  const int n = G.n;
  if (a == 0) throw precondition_error("a_zero", "duality requires a != 0");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (gcd_int(G.level, c) != 1)
    throw precondition_error("not_coprime_nc", "coprime duality requires gcd(N, c) = 1");
  const RatVec w = expand_w(n, w_in);
  IntVec gw = integral_gw(G, w);

  EvenSymMatrix gp = G.perp();
  SubgroupModC hp = orthogonal_complement(H);
  Int aperp = mod_pos(c - inv_mod(a * G.level, c), c);
  IntVec shift(n);
  for (int i = 0; i < n; ++i) shift[i] = -a * gw[i];

  const OddPart c0 = odd_part(c);
  const Int sa = sgn(a);
  Cyclotomic gamma{Rational(pow_sign(kronecker(abs(a), c), n) * kronecker(G.det, c))};
  gamma *= e_frac(Int(n) * sa * (1 - c0.odd), Int(8));
  gamma *= Cyclotomic::e(ratio(a, c) * G.q_of(w));

  return gamma * order_ratio(H.order(), hp.order()) *
         gauss_subsum_brute(gp, aperp, c, to_rat_vec(shift), hp);
}

Cyclotomic duality_divides_rhs(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                               const SubgroupModC& H, int inverse_lift, unsigned offset_seed) {
  const int n = G.n;
  if (a == 0) throw precondition_error("a_zero", "duality requires a != 0");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (c % G.level != 0) throw precondition_error("n_not_dividing_c", "requires N | c");
  if (!G.positive_definite())
    throw precondition_error("indefinite", "N | c duality requires positive definite G");
  const RatVec w = expand_w(n, w_in);
  IntVec gw = integral_gw(G, w);

  EvenSymMatrix gp = G.perp();
  SubgroupModC hp = orthogonal_complement(H);
  const Int ap = inv_mod(a, c * G.level) + Int(inverse_lift) * c * G.level;
  IntVec agw(n);
  for (int i = 0; i < n; ++i) agw[i] = a * gw[i];

  ExpSum acc;
  const Rational scale = -ratio(ap, G.level * c);
  size_t idx = 0;
  for (const IntVec& v : hp.elements) {
    ++idx;
    IntVec d(n);
    for (int i = 0; i < n; ++i) d[i] = v[i] - agw[i];
    if (!in_image_mod(G, d, c)) continue;
    RatVec dr = to_rat_vec(d);
    if (offset_seed != 0) {
      std::mt19937 lrng(offset_seed + static_cast<unsigned>(idx));
      for (int i = 0; i < n; ++i)
        dr[i] += Rational(c * Int(static_cast<long>(lrng() % 5) - 2));
    }
    acc.add(scale * gp.q_of(dr));
  }

  Cyclotomic gamma = e_frac(Int(n), Int(8)) * mu_unit(G, a, c);
  gamma *= Cyclotomic::e(ratio(a, c) * G.q_of(w));
  return gamma * sqrt_int(G.det) * order_ratio(H.order(), hp.order()) * acc.to_cyclotomic();
}

Cyclotomic poisson_subsum_rhs(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                              const SubgroupModC& H) {
  const int n = G.n;
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  const RatVec w = expand_w(n, w_in);
  integral_gw(G, w);
  SubgroupModC hp = orthogonal_complement(H);
  if (a == 0) throw precondition_error("a_zero", "requires a != 0");

  Cyclotomic sum = Cyclotomic::zero();
  for (const IntVec& y : hp.elements) {
    // x = -y/a exactly; the paired phase uses the same representative of y,
    // which makes each term independent of the lift (tested).
    RatVec x(n);
    for (int i = 0; i < n; ++i) x[i] = ratio(-y[i], a);
    Cyclotomic term = Cyclotomic::e(dot(w, to_rat_vec(y)) / Rational(c));
    term *= brute_gauss(make_gauss_spec(G, a, c, w, x));
    sum += term;
  }
  Int cn(1);
  for (int i = 0; i < n; ++i) cn *= c;
  return sum * order_ratio(H.order(), hp.order()) * sqrt_pow(c, n) / Rational(cn);
}

Cyclotomic hyperplane_subsum_closed(const EvenSymMatrix& G, const Int& a, const Int& c,
                                    const RatVec& w_in, const IntVec& h) {
  const int n = G.n;
  if (a == 0) throw precondition_error("a_zero", "requires a != 0");
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (gcd_int(G.level, c) != 1)
    throw precondition_error("not_coprime_nc", "hyperplane closed form requires gcd(N, c) = 1");
  if (static_cast<int>(h.size()) != n)
    throw precondition_error("dimension_mismatch", "h must have length n");
  const RatVec w = expand_w(n, w_in);
  integral_gw(G, w);

  EvenSymMatrix gp = G.perp();
  Int hgh(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) hgh += h[i] * gp.g[i][j] * h[j];
  // N w is integral for w in G^{-1}Z^n.
  Int nwh(0);
  for (int i = 0; i < n; ++i) nwh += rat_int(Rational(G.level) * w[i]) * h[i];

  const OddPart c0 = odd_part(c);
  const Int sa = sgn(a);
  const Int cp = inv_mod(c, abs(a) * G.level);
  Cyclotomic prefactor = sqrt_pow(c, n);
  prefactor *= Rational(pow_sign(kronecker(abs(a), c), n) * kronecker(G.det, c));
  prefactor *= e_frac(Int(n) * sa * (1 - c0.odd), Int(8));
  prefactor *= Cyclotomic::e(Rational(a * cp) * G.q_of(w));

  if (mod_pos(hgh, 2 * c) == 0) {
    if (mod_pos(nwh, c) == 0) return prefactor;
    return Cyclotomic::zero();
  }

  Int g = c;
  for (const Int& hi : h) g = gcd_int(g, hi);
  const Int u = c / g;
  const Int aperp = mod_pos(c - inv_mod(a * G.level, c), c);
  const Rational alpha = ratio(aperp * hgh, 2 * c);
  const Rational beta = ratio(-a * aperp * nwh, c);
  if (!is_int(alpha * Rational(u)) || !is_int(beta * Rational(u)))
    throw internal_error("inner one-dimensional sum failed the period checks");

  Cyclotomic inner;
  if (is_int(alpha)) {
    inner = Cyclotomic(is_int(beta) ? u : Int(0));
  } else {
    Rational ac = alpha;
    ac.canonicalize();
    const Int a1 = ac.get_num();
    const Int c1 = ac.get_den();
    const Rational two_wt = beta / alpha;
    if (!is_int(two_wt))
      throw precondition_error("no_closed_form_known",
                               "inner one-dimensional sum is not integral-parametric; "
                               "fall back to the brute subsum");
    const Rational wt = two_wt / Rational(2);
    EvenSymMatrix g2 = make_even_sym(IntMat{IntVec{Int(2)}});
    Cyclotomic one_dim;
    if (mpz_odd_p(c1.get_mpz_t())) {
      one_dim = closed_gauss_coprime(g2, a1, c1, {wt}, {});
    } else if (mod_pos(c1, Int(4)) == 0) {
      one_dim = closed_gauss_divides(g2, a1, c1, {wt}, {});
    } else {
      one_dim = brute_gauss(make_gauss_spec(g2, a1, c1, {wt}, {}));
    }
    inner = Cyclotomic::e(-alpha * wt * wt) * Rational(u / c1) * one_dim;
  }
  return prefactor * inner / Rational(u);
}

Cyclotomic vanishing_criterion(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                               const SubgroupModC& H) {
  const int n = G.n;
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (c % G.level != 0) throw precondition_error("n_not_dividing_c", "requires N | c");
  if (!G.positive_definite()) throw precondition_error("indefinite", "requires positive definite G");
  const RatVec w = expand_w(n, w_in);
  integral_gw(G, w);
  if (is_integral_vec(scale_vec(Rational(a), w)))
    throw precondition_error("aw_integral", "criterion requires a w not integral");
  // H must contain c G^{-1} Z^n / c Z^n, i.e. the columns of c G^{-1}.
  for (int j = 0; j < n; ++j) {
    IntVec col(n);
    for (int i = 0; i < n; ++i) col[i] = rat_int(Rational(c) * G.inv[i][j]);
    if (!H.contains(col))
      throw precondition_error("kernel_not_contained", "H must contain c G^{-1} Z^n / c Z^n");
  }
  Cyclotomic val = gauss_subsum_brute(G, a, c, w, H);
  if (!val.is_zero()) throw internal_error("vanishing criterion violated: subsum is nonzero");
  return val;
}

Cyclotomic vanishing_coset_sum(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w_in,
                               const IntVec& x) {
  const int n = G.n;
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  if (c % G.level != 0) throw precondition_error("n_not_dividing_c", "requires N | c");
  const RatVec w = expand_w(n, w_in);
  integral_gw(G, w);
  if (static_cast<int>(x.size()) != n)
    throw precondition_error("dimension_mismatch", "x must have length n");
  std::vector<IntVec> gens;
  for (int j = 0; j < n; ++j) {
    IntVec col(n);
    for (int i = 0; i < n; ++i) col[i] = rat_int(Rational(c) * G.inv[i][j]);
    gens.push_back(col);
  }
  SubgroupModC K = make_subgroup(c, n, gens);
  ExpSum acc;
  const Rational r = ratio(a, c);
  for (const IntVec& k : K.elements) {
    RatVec v(n);
    for (int i = 0; i < n; ++i) v[i] = Rational(x[i] + k[i]) + w[i];
    acc.add(r * G.q_of(v));
  }
  return acc.to_cyclotomic();
}

}  // namespace qgauss
