#pragma once

#include <utility>
#include <vector>

#include "qgauss/arith.hpp"
#include "qgauss/common.hpp"

namespace qgauss {

// Nonsingular even integral symmetric matrix G with its cached invariants:
// determinant D, level N (least positive integer with N * G^{-1} even
// integral), adjugate, exact inverse, inertia, and the Smith decomposition
// U * G * V = S used to coordinatize the discriminant group Z^n / G Z^n.
struct EvenSymMatrix {
  int n = 0;
  IntMat g;
  Int det;        // D, nonzero
  Int level;      // N
  IntMat adjugate;
  RatMat inv;     // G^{-1}
  std::pair<int, int> inertia;  // (n_plus, n_minus)
  IntMat smith_u, smith_u_inv;
  IntVec smith_diag;

  bool positive_definite() const { return inertia.second == 0; }
  int signature() const { return inertia.first - inertia.second; }
  // Q(v) = (1/2) v^T G v on arbitrary rational vectors.
  Rational q_of(const RatVec& v) const;
  // v^T G w
  Rational bilinear(const RatVec& v, const RatVec& w) const;
  // The dual form G^perp = N * G^{-1}, itself even integral symmetric.
  EvenSymMatrix perp() const;
};

// Validates and builds an EvenSymMatrix; non-symmetric, odd-diagonal and
// singular inputs are rejected with distinct error codes.
EvenSymMatrix make_even_sym(const IntMat& entries);

// The A_n root lattice Gram matrix (2 on the diagonal, -1 on the
// sub/superdiagonal).
EvenSymMatrix an_matrix(int n);

// Finite quadratic module: coordinates live in prod Z/e_i, Q(x) = x^T q x
// mod 1, B(x, y) = 2 x^T q y mod 1 with q = qgram rational symmetric.
struct FiniteQuadraticModule {
  std::vector<long> orders;
  RatMat qgram;

  long size() const;
  Rational q_of(const IntVec& x) const;        // in [0, 1)
  Rational b_of(const IntVec& x, const IntVec& y) const;  // in [0, 1)
  // All elements in lexicographic coordinate order (last coordinate fastest).
  std::vector<IntVec> elements() const;
  // Check Q is well defined modulo the orders and B is nondegenerate
  // (full enumeration; intended for desk-scale tests).
  bool well_defined() const;
  bool nondegenerate() const;
};

FiniteQuadraticModule fqm_direct_sum(const FiniteQuadraticModule& a, const FiniteQuadraticModule& b);

enum class FqmKind { A_odd, A_two, B, C };

// The indecomposable modules: A_{p^r}^a = (Z/p^r, a x^2 / p^r) for odd p,
// A_{2^r}^a = (Z/2^r, a x^2 / 2^{r+1}), B_{2^r} = ((Z/2^r)^2,
// (x^2+xy+y^2)/2^r), C_{2^r} = ((Z/2^r)^2, xy/2^r).
FiniteQuadraticModule fqm_indecomposable(FqmKind kind, long p, long r, const Int& a);

// Discriminant group of G: G^{-1}Z^n / Z^n, coordinatized by the nontrivial
// Smith invariants of G (ascending; lexicographic element order with the
// last coordinate fastest). reps[j] is the representative in G^{-1}Z^n of
// the j-th coordinate unit vector.
struct DiscGroup {
  EvenSymMatrix form;
  std::vector<long> orders;
  std::vector<RatVec> reps;
  FiniteQuadraticModule fqm;

  long size() const { return fqm.size(); }
  // Representative in G^{-1}Z^n of a coordinate tuple.
  RatVec representative(const IntVec& coords) const;
  // Coordinates of v in G^{-1}Z^n (requires G v integral).
  IntVec coords_of(const RatVec& v) const;
};

DiscGroup disc_group(const EvenSymMatrix& G);

// The finite quadratic module of the discriminant group of G.
FiniteQuadraticModule discriminant_module(const EvenSymMatrix& G);

bool is_prime(const Int& p);

}  // namespace qgauss
