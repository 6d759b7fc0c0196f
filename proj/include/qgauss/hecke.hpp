#pragma once

#include "qgauss/gauss.hpp"

namespace qgauss {

// Gauss sum data for omega = (v0 + v1 sqrt(d)) / c1 in the quadratic field
// Q(sqrt(d)), d square-free, gcd(c1, v0, v1) = 1. a1 is the content of the
// doubled trace form, G the derived even symmetric matrix, a/c the reduced
// fraction a1/c1 and delta the field discriminant (d if d = 1 mod 4, else
// 4d). det G = 4 delta (v0^2 - v1^2 d) / a1^2 (asserted).
struct QuadHeckeSpec {
  Int d, v0, v1, c1;
  Int a1, a, c, delta;
  EvenSymMatrix G;
};

QuadHeckeSpec make_quad_hecke(const Int& d, const Int& v0, const Int& v1, const Int& c1);

// The Hecke Gauss sum sum over mu in O/a of e(tr(mu^2 omega)) in the regime
// gcd(c1, v0^2 - v1^2 d) = 1, where the norm of the denominator ideal is
// c1^2 / gcd(c1^2, delta) without any ideal arithmetic:
//   (c1, a1)^2 / (c1^2, delta) * matrix Gauss sum at a/c,
// the matrix sum taken in closed form when gcd(c, det G) = 1, else by
// enumeration. Outside the regime the norm is undetermined and the input is
// refused.
Cyclotomic hecke_quadratic(const QuadHeckeSpec& spec);

// The fully explicit value
//   c1 (c1, a1) / (c1^2, delta) * (-1)^{(1-c0)/2} * (det G / c)_K
// under the additional hypothesis gcd(c, det G) = 1; c0 the odd part of c.
Cyclotomic hecke_quadratic_explicit(const QuadHeckeSpec& spec);

// Direct enumeration over O/c1 O (c1^2 terms, budget-capped), normalized by
// |a / c1 O| = gcd(c1^2, delta); same gcd regime as hecke_quadratic.
Cyclotomic hecke_quadratic_brute(const QuadHeckeSpec& spec, const Int& cap);

// Gauss sum data for omega = (sum_{k=1}^{p-1} v_k zeta_p^k) / c1 in the
// cyclotomic field Q(zeta_p), p an odd prime, gcd(c1, v_1, ..., v_{p-1}) = 1.
// trsum is the integer matrix (tr(c1 omega b_i b_j))_{ij} over the basis
// b_i = zeta_p^i, G = 2 trsum / a1, and norm = N(sum v_k zeta_p^k), computed
// as a resultant with the p-th cyclotomic polynomial.
struct CycHeckeSpec {
  Int p;
  IntVec v;
  Int c1;
  Int a1, a, c, norm;
  EvenSymMatrix G;
};

CycHeckeSpec make_cyc_hecke(const Int& p, const IntVec& v, const Int& c1);

// (c1, a1)^{p-1} / (c1^{p-1}, p^{p-2}) * matrix Gauss sum at a/c, valid for
// gcd(c1, norm) = 1; closed form when gcd(c, det G) = 1, otherwise
// enumeration of the c^{p-1} terms when that fits the budget.
Cyclotomic hecke_cyclotomic(const CycHeckeSpec& spec, const Int& budget = Int(1 << 20));

// Resultant of two integer polynomials (coefficient vectors, constant term
// first), via the Sylvester matrix and fraction-free elimination.
Int resultant(const IntVec& f, const IntVec& g);

}  // namespace qgauss
