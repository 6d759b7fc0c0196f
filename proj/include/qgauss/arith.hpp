#pragma once

#include <tuple>
#include <utility>

#include "qgauss/common.hpp"

namespace qgauss {

// Decomposition input = 2^two_exponent * odd, with the sign carried by the
// odd part (so sgn(odd) = sgn(input)). Input 0 is rejected.
struct OddPart {
  long two_exponent;
  Int odd;
};
OddPart odd_part(const Int& c);

// Kronecker-Jacobi symbol (m/n), defined for all integer pairs:
//  * Legendre symbol for odd prime n;
//  * (m/2) = 0 for even m, else +1 for m = +-1 mod 8 and -1 otherwise;
//  * (m/-1) = 1 for m >= 0, -1 for m < 0;
//  * (m/1) = 1; (m/0) = 1 for m = +-1 and 0 otherwise;
//  * completely multiplicative in n.
int kronecker(const Int& m, const Int& n);

// Inverse of a modulo m >= 1, returned in [0, m); inv_mod(a, 1) = 0.
Int inv_mod(const Int& a, const Int& m);

// Smith normal form: U * M * V = S with U, V unimodular and S diagonal with
// s_1 | s_2 | ... and every s_i >= 0. M may be rectangular.
struct SmithForm {
  IntMat U, S, V;
};
SmithForm smith_normal_form(const IntMat& M);

// Inertia (n_plus, n_minus) of a nonsingular symmetric rational matrix,
// via exact symmetric congruence diagonalization.
std::pair<int, int> rational_inertia(const RatMat& G);

// ---- exact linear algebra helpers ----

IntMat identity_mat(int n);
IntMat mat_mul(const IntMat& A, const IntMat& B);
IntVec mat_vec(const IntMat& A, const IntVec& v);
Int det_bareiss(const IntMat& A);
// Inverse of a nonsingular rational square matrix (Gauss-Jordan, exact).
RatMat rat_inverse(const RatMat& A);
RatMat to_rat_mat(const IntMat& A);
RatVec rat_mat_vec(const RatMat& A, const RatVec& v);
Rational dot(const RatVec& a, const RatVec& b);

}  // namespace qgauss
