#pragma once

#include "qgauss/gauss.hpp"

namespace qgauss {

// Number of x in Z^n/cZ^n with (1/2) x^T G x + v^T x = m mod c, by full
// enumeration of the c^n points (deterministically parallelized).
Int count_quadric_brute(const EvenSymMatrix& G, const IntVec& v, const Int& m, const Int& c);

// The same count for gcd(det G, c) = 1 via the Theta(c)-term closed sum
//   c^{n/2-1} (D/c)_K sum_{a=0}^{c-1} e(n(1-ct0)/8) (a,c)^{n/2} (at/ct)_K^n
//     (D/(a,c))_K e((a/c)((ct ct' - 1)/2 v^T G^{-1} v - m)),
// at = a/(a,c), ct = c/(a,c), ct0 the odd part of ct, ct ct' = 1 mod at N.
// Evaluated in exact cyclotomic arithmetic; a non-integer canonical form
// raises internal_error (must never fire). inverse_lift shifts every chosen
// inverse ct' by lift * at N; the result is independent of it.
Int count_quadric_closed_general(const EvenSymMatrix& G, const IntVec& v, const Int& m,
                                 const Int& c, int inverse_lift = 0);

// Upper bound for |count - c^{n-1}| implied by the closed sum:
// c^{n/2-1} sum over proper divisors d of c of d^{n/2} phi(c/d).
double count_deviation_bound(int n, const Int& c);

// The three-case closed count for a prime modulus p with p not dividing
// det G; p | det G is rejected (use brute force instead).
Int count_quadric_prime(const EvenSymMatrix& G, const IntVec& v, const Int& m, const Int& p);

// Number of (x, y) in (Z/pZ)^2 with
//   g11 x^2 + g12 x y + g22 y^2 + v1 x + v2 y = m mod p
// for an odd prime p with p | (4 g11 g22 - g12^2) and p not dividing g11:
// p if p does not divide g12 v1 - 2 g11 v2, else
// p (1 + kronecker(4 g11 m + v1^2, p)).
Int singular_binary_count(const Int& g11, const Int& g12, const Int& g22, const Int& v1,
                          const Int& v2, const Int& m, const Int& p);

// Coefficients of the generalized Markoff equation
//   a11 x^2 + a22 y^2 + a33 z^2 + a12 xy + a13 xz + a23 yz = d xyz
// with the derived symmetric matrix G (doubled diagonal), the cofactor-type
// quantities A_ij and the determinant D. G is kept as a raw matrix because
// it may be singular while brute counting must still work.
struct MarkoffCoeffs {
  Int a11, a22, a33, a12, a13, a23, d;
  IntMat g;  // 3x3, G = [[2a11, a12, a13], [a12, 2a22, a23], [a13, a23, 2a33]]
  Int A11, A22, A33, A12, A13, A23;
  Int D;  // det G
};

// Builds the derived data and asserts the defining identities
// G A = A G = D I_3, the six determinant identities and the three expansions
// of D (internal_error if any fails; they are algebraic identities).
MarkoffCoeffs markoff_coeffs(const Int& a11, const Int& a22, const Int& a33, const Int& a12,
                             const Int& a13, const Int& a23, const Int& d);

// Number of solutions over F_p by enumeration of the p^3 triples.
Int markoff_count_brute(const MarkoffCoeffs& coeffs, const Int& p);

// The four-case closed count for p not dividing a11 a22 a33 d:
//   (1) p not dividing D (then p > 2):
//       p^2 + ((-A11/p) + (-A22/p) + (-A33/p)) p + 1;
//   (2) 2 < p | D, at least two of A11, A22, A33 divisible by p: p^2 + 1;
//   (3) 2 < p | D, at most one divisible: as (1) but dropping the (-Ajj/p)
//       term for one index j with p not dividing Ajj (j-independent);
//   (4) p = 2: 5 / 1 / 3 according to a12, a13, a23 all even / all odd /
//       mixed parity.
// j_choice = 0 picks the smallest admissible j in case (3); an explicit
// choice in {1, 2, 3} must satisfy p not dividing Ajj.
Int markoff_count_closed(const MarkoffCoeffs& coeffs, const Int& p, int j_choice = 0);

}  // namespace qgauss
