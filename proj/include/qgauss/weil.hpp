#pragma once

#include <complex>
#include <string>

#include "qgauss/gauss.hpp"

namespace qgauss {

// An element (A, eps) of the metaplectic double cover of SL_2(Z).
struct Mp2Element {
  IntMat mat;  // 2x2, determinant 1
  int eps = 1;
};

Mp2Element make_mp2(const IntMat& mat, int eps);
Mp2Element mp2_identity();
Mp2Element mp2_s();  // ((0,-1;1,0), 1)
Mp2Element mp2_t();  // ((1,1;0,1), 1)

// Group law: matrices multiply and eps picks up the cocycle delta in {+-1},
// evaluated with principal square roots at tau = i under a guard band.
Mp2Element mp2_mul(const Mp2Element& g1, const Mp2Element& g2);
Mp2Element mp2_inverse(const Mp2Element& g);
bool mp2_equal(const Mp2Element& g1, const Mp2Element& g2);

// [[a, b], [c, d]] with determinant 1 for coprime (a, c).
IntMat sl2_completion(const Int& a, const Int& c);

// Matrix of the Weil representation attached to a positive definite G, with
// rows/columns indexed by the discriminant group in its fixed Smith ordering.
struct WeilMatrix {
  DiscGroup module;
  std::vector<std::vector<Cyclotomic>> entries;
  long size() const { return static_cast<long>(entries.size()); }
};

enum class WeilGen { S, T };

WeilMatrix weil_identity(const EvenSymMatrix& G);
WeilMatrix weil_generator(const EvenSymMatrix& G, WeilGen which);

// Product of generator matrices for a word over {S, T, s, t} (lowercase are
// inverses), together with the tracked metaplectic element.
std::pair<Mp2Element, WeilMatrix> weil_word(const EvenSymMatrix& G, const std::string& word);

WeilMatrix weil_mul(const WeilMatrix& x, const WeilMatrix& y);
WeilMatrix weil_conj_transpose(const WeilMatrix& x);
bool weil_equal(const WeilMatrix& x, const WeilMatrix& y);
bool weil_unitary(const WeilMatrix& x);

// Shintani's enumeration formula for rho(A, 1) with lower-left entry c != 0:
// entry (y, x) is (-i sgn c)^{n/2} D^{-1/2} |c|^{-n/2}
//   * sum over t in L/cL of e((a Q(y+t) - B(y+t, x) + d Q(x))/c).
WeilMatrix weil_shintani(const EvenSymMatrix& G, const IntMat& A);

// Closed form for c > 0, a != 0, gcd(N, c) = 1:
// D^{-1/2} (-i)^{n/2} (|a|/c)_K^n (D/c)_K e(n sgn a (1 - c0)/8)
//   * e(((b+c')/a) Q(v) - c' B(w, v) + a c' Q(w)),  c c' = 1 mod |a| N.
WeilMatrix weil_closed_coprime(const EvenSymMatrix& G, const IntMat& A, int inverse_lift = 0);

// Closed form for N | c > 0: entry (w, v) is delta_{aw,v} mu_G(a,c) e(abQ(w)).
WeilMatrix weil_closed_divides(const EvenSymMatrix& G, const IntMat& A);

// Floating check of the weight-n/2 theta transformation law: returns
// |LHS - RHS| where both sides are truncated to lattice vectors with
// Q(v) <= radius. t is given in discriminant-group coordinates.
double theta_transform_residual(const EvenSymMatrix& G, const IntVec& t_coords, const IntMat& A,
                                std::complex<long double> tau,
                                const std::vector<std::complex<long double>>& z, long radius);

}  // namespace qgauss
