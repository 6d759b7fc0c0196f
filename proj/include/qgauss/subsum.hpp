#pragma once

#include "qgauss/gauss.hpp"

namespace qgauss {

// A subgroup H of Z^n/cZ^n given by generators; elements are enumerated on
// construction (cap 10^5) in lexicographic order of canonical representatives
// in [0, c)^n, fixing deterministic sums.
struct SubgroupModC {
  Int c;
  int n = 0;
  std::vector<IntVec> gens;
  std::vector<IntVec> elements;  // sorted lexicographically
  Int order() const { return Int(elements.size()); }
  bool contains(const IntVec& v) const;  // v reduced mod c first
};

SubgroupModC make_subgroup(const Int& c, int n, const std::vector<IntVec>& gens);

SubgroupModC full_subgroup(const Int& c, int n);

// H^perp = {v : v . g = 0 mod c for all g in H}, computed from the Smith form
// of the generator matrix. Satisfies |H| |H^perp| = c^n and (H^perp)^perp = H.
SubgroupModC orthogonal_complement(const SubgroupModC& H);

// Sum over v in H of e((a/c) Q(v + w)); requires gcd(a, c) = 1 and G w
// integral (which makes the value representative-independent).
Cyclotomic gauss_subsum_brute(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                              const SubgroupModC& H);

// Right-hand side of the coprime duality identity: for gcd(N, c) = 1,
//   gamma sqrt(|H|/|H^perp|) * subsum of G^perp = N G^{-1} over H^perp at
//   a^perp with a^perp a N = -1 mod c and shifted argument -a G w.
// Equals gauss_subsum_brute(G, a, c, w, H).
Cyclotomic duality_coprime_rhs(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                               const SubgroupModC& H);

// Right-hand side of the N | c duality identity (G positive definite):
//   gamma sqrt(D) sqrt(|H|/|H^perp|)
//   * sum over v in H^perp meeting (a G w + G Z^n)/cZ^n of
//     e(-(a'/(N c)) Q_{G^perp}(v - a G w)),  a a' = 1 mod c N.
// Empty intersection gives 0. offset_seed != 0 replaces each representative v
// by v + c r with small pseudorandom r; the value is unchanged (tested).
Cyclotomic duality_divides_rhs(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                               const SubgroupModC& H, int inverse_lift = 0,
                               unsigned offset_seed = 0);

// Poisson identity right-hand side, valid for every c with gcd(a, c) = 1:
//   c^{-n/2} sqrt(|H|/|H^perp|) sum over y in H^perp of
//     e(w^T y / c) * full Gauss sum at x = -a^{-1} y.
// Equals gauss_subsum_brute(G, a, c, w, H).
Cyclotomic poisson_subsum_rhs(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                              const SubgroupModC& H);

// Closed value of the hyperplane subsum
//   sum over v mod c with v^T h = 0 mod c of e((a/c) Q(v + w)),
// for gcd(a, c) = gcd(N, c) = 1 and G w integral. Throws
// "no_closed_form_known" when the inner one-dimensional sum is not
// integral-parametric; callers may fall back to gauss_subsum_brute over
// orthogonal_complement(<h>).
Cyclotomic hyperplane_subsum_closed(const EvenSymMatrix& G, const Int& a, const Int& c,
                                    const RatVec& w, const IntVec& h);

// For N | c, G positive definite, G w integral, a w not integral, and H
// containing c G^{-1} Z^n / c Z^n: evaluates the subsum and verifies it is
// exactly 0 (throws internal_error otherwise). Returns the (zero) value.
Cyclotomic vanishing_criterion(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                               const SubgroupModC& H);

// Coset variant: sum over v in x + c G^{-1} Z^n (mod c) of e((a/c) Q(v + w)),
// which also vanishes under the same hypotheses on (G, a, c, w).
Cyclotomic vanishing_coset_sum(const EvenSymMatrix& G, const Int& a, const Int& c, const RatVec& w,
                               const IntVec& x);

}  // namespace qgauss
