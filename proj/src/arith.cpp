#include "qgauss/arith.hpp"

#include <algorithm>
#include <cstdlib>

namespace qgauss {

OddPart odd_part(const Int& c) {
  if (c == 0) throw precondition_error("bad_odd_part", "odd part of zero is undefined");
  Int a = abs(c);
  long e = static_cast<long>(mpz_scan1(a.get_mpz_t(), 0));
  Int odd = c;
  for (long i = 0; i < e; ++i) odd /= 2;
  return {e, odd};
}

int kronecker(const Int& m, const Int& n) {
  if (n == 0) return (m == 1 || m == -1) ? 1 : 0;
  int result = 1;
  Int nn = n;
  if (nn < 0) {
    if (m < 0) result = -result;  // the (m / -1) factor
    nn = -nn;
  }
  // Factors of 2 in the lower argument.
  while (mpz_even_p(nn.get_mpz_t())) {
    if (mpz_even_p(m.get_mpz_t())) return 0;
    nn /= 2;
    unsigned long m8 = mpz_fdiv_ui(m.get_mpz_t(), 8);
    if (m8 == 3 || m8 == 5) result = -result;
  }
  // Jacobi symbol (m / nn) for odd nn > 0, by binary reciprocity.
  Int a;
  mpz_fdiv_r(a.get_mpz_t(), m.get_mpz_t(), nn.get_mpz_t());
  Int b = nn;
  int s = 1;
  while (a != 0) {
    while (mpz_even_p(a.get_mpz_t())) {
      a /= 2;
      unsigned long b8 = mpz_fdiv_ui(b.get_mpz_t(), 8);
      if (b8 == 3 || b8 == 5) s = -s;
    }
    std::swap(a, b);
    if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && mpz_fdiv_ui(b.get_mpz_t(), 4) == 3) s = -s;
    mpz_fdiv_r(a.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  if (b != 1) return 0;
  return result * s;
}

Int inv_mod(const Int& a, const Int& m) {
  if (m < 1) throw precondition_error("bad_modulus", "inv_mod requires modulus >= 1");
  if (m == 1) return Int(0);
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw precondition_error("not_coprime", "inv_mod requires gcd(a, m) = 1");
  return r;
}

namespace {

void swap_rows(IntMat& M, int i, int j) { std::swap(M[i], M[j]); }

void swap_cols(IntMat& M, int i, int j) {
  for (auto& row : M) std::swap(row[i], row[j]);
}

// row_i -= q * row_t
void row_op(IntMat& M, int i, int t, const Int& q) {
  const int cols = static_cast<int>(M[0].size());
  for (int k = 0; k < cols; ++k) M[i][k] -= q * M[t][k];
}

// col_i -= q * col_t
void col_op(IntMat& M, int i, int t, const Int& q) {
  for (auto& row : M) row[i] -= q * row[t];
}

// Eliminate the cross at (t, t) until row t and column t are zero off the
// pivot, starting from position t; the submatrix below/right may change.
void clear_cross(IntMat& S, IntMat& U, IntMat& V, int t) {
  const int r = static_cast<int>(S.size());
  const int c = static_cast<int>(S[0].size());
  for (;;) {
    // Bring a nonzero of minimal absolute value in the trailing block to (t,t).
    int bi = -1, bj = -1;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (S[i][j] != 0 && (bi < 0 || abs(S[i][j]) < abs(S[bi][bj]))) { bi = i; bj = j; }
    if (bi < 0) return;  // trailing block is zero
    if (bi != t) { swap_rows(S, bi, t); swap_rows(U, bi, t); }
    if (bj != t) { swap_cols(S, bj, t); swap_cols(V, bj, t); }
    bool dirty = false;
    for (int i = t + 1; i < r; ++i) {
      if (S[i][t] == 0) continue;
      Int q = S[i][t] / S[t][t];
      row_op(S, i, t, q);
      row_op(U, i, t, q);
      if (S[i][t] != 0) dirty = true;
    }
    for (int j = t + 1; j < c; ++j) {
      if (S[t][j] == 0) continue;
      Int q = S[t][j] / S[t][t];
      col_op(S, j, t, q);
      col_op(V, j, t, q);
      if (S[t][j] != 0) dirty = true;
    }
    if (!dirty) {
      bool clean = true;
      for (int i = t + 1; i < r && clean; ++i) clean = (S[i][t] == 0);
      for (int j = t + 1; j < c && clean; ++j) clean = (S[t][j] == 0);
      if (clean) return;
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMat& M) {
  const int r = static_cast<int>(M.size());
  const int c = r > 0 ? static_cast<int>(M[0].size()) : 0;
  SmithForm f;
  f.S = M;
  f.U = identity_mat(r);
  f.V = identity_mat(c);
  if (r == 0 || c == 0) return f;
  const int k = std::min(r, c);
  for (int t = 0; t < k; ++t) clear_cross(f.S, f.U, f.V, t);
  // Enforce the divisibility chain s_1 | s_2 | ...
  for (;;) {
    int bad = -1;
    for (int i = 0; i + 1 < k; ++i) {
      const Int& a = f.S[i][i];
      const Int& b = f.S[i + 1][i + 1];
      if (a == 0 && b != 0) { bad = i; break; }
      if (a != 0 && b % a != 0) { bad = i; break; }
    }
    if (bad < 0) break;
    // Fold s_{bad+1} into column bad and re-eliminate from there.
    col_op(f.S, bad, bad + 1, Int(-1));
    col_op(f.V, bad, bad + 1, Int(-1));
    for (int t = bad; t < k; ++t) clear_cross(f.S, f.U, f.V, t);
  }
  // Normalize signs.
  for (int i = 0; i < k; ++i) {
    if (f.S[i][i] < 0) {
      for (int j = 0; j < c; ++j) f.S[i][j] = -f.S[i][j];
      for (int j = 0; j < r; ++j) f.U[i][j] = -f.U[i][j];
    }
  }
  return f;
}

std::pair<int, int> rational_inertia(const RatMat& G) {
  const int n = static_cast<int>(G.size());
  RatMat A = G;
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(A[i].size()) != n)
      throw precondition_error("not_square", "inertia requires a square matrix");
    for (int j = 0; j < n; ++j)
      if (A[i][j] != G[j][i]) throw precondition_error("not_symmetric", "inertia requires a symmetric matrix");
  }
  int np = 0, nm = 0;
  for (int t = 0; t < n; ++t) {
    if (A[t][t] == 0) {
      int j = -1;
      for (int s = t + 1; s < n; ++s)
        if (A[t][s] != 0) { j = s; break; }
      if (j < 0) throw precondition_error("singular", "inertia requires a nonsingular matrix");
      // Symmetric pivot repair: row/col t += (or -=) row/col j. One of the
      // two signs must produce a nonzero diagonal entry.
      Rational plus = 2 * A[t][j] + A[j][j];
      Rational sign = plus != 0 ? Rational(1) : Rational(-1);
      for (int s = 0; s < n; ++s) A[t][s] += sign * A[j][s];
      for (int s = 0; s < n; ++s) A[s][t] += sign * A[s][j];
      if (A[t][t] == 0) throw internal_error("inertia: pivot repair failed");
    }
    const Rational p = A[t][t];
    if (p > 0) ++np; else ++nm;
    for (int i = t + 1; i < n; ++i) {
      if (A[i][t] == 0) continue;
      Rational fct = A[i][t] / p;
      for (int s = t; s < n; ++s) A[i][s] -= fct * A[t][s];
      for (int s = t; s < n; ++s) A[s][i] -= fct * A[s][t];
    }
  }
  return {np, nm};
}

IntMat identity_mat(int n) {
  IntMat I(n, IntVec(n, Int(0)));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

IntMat mat_mul(const IntMat& A, const IntMat& B) {
  const int r = static_cast<int>(A.size());
  const int m = r > 0 ? static_cast<int>(A[0].size()) : 0;
  const int c = m > 0 ? static_cast<int>(B[0].size()) : 0;
  IntMat C(r, IntVec(c, Int(0)));
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < m; ++k) {
      if (A[i][k] == 0) continue;
      for (int j = 0; j < c; ++j) C[i][j] += A[i][k] * B[k][j];
    }
  return C;
}

IntVec mat_vec(const IntMat& A, const IntVec& v) {
  IntVec out(A.size(), Int(0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += A[i][j] * v[j];
  return out;
}

Int det_bareiss(const IntMat& A) {
  const int n = static_cast<int>(A.size());
  if (n == 0) return Int(1);
  IntMat M = A;
  Int prev(1);
  int sign = 1;
  for (int t = 0; t < n - 1; ++t) {
    if (M[t][t] == 0) {
      int piv = -1;
      for (int i = t + 1; i < n; ++i)
        if (M[i][t] != 0) { piv = i; break; }
      if (piv < 0) return Int(0);
      std::swap(M[t], M[piv]);
      sign = -sign;
    }
    for (int i = t + 1; i < n; ++i)
      for (int j = t + 1; j < n; ++j) {
        Int num = M[i][j] * M[t][t] - M[i][t] * M[t][j];
        M[i][j] = num / prev;
      }
    prev = M[t][t];
  }
  return sign > 0 ? M[n - 1][n - 1] : Int(-M[n - 1][n - 1]);
}

RatMat rat_inverse(const RatMat& A) {
  const int n = static_cast<int>(A.size());
  RatMat M = A;
  RatMat I(n, RatVec(n, Rational(0)));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  for (int t = 0; t < n; ++t) {
    int piv = -1;
    for (int i = t; i < n; ++i)
      if (M[i][t] != 0) { piv = i; break; }
    if (piv < 0) throw precondition_error("singular", "matrix is singular");
    std::swap(M[t], M[piv]);
    std::swap(I[t], I[piv]);
    Rational p = M[t][t];
    for (int j = 0; j < n; ++j) { M[t][j] /= p; I[t][j] /= p; }
    for (int i = 0; i < n; ++i) {
      if (i == t || M[i][t] == 0) continue;
      Rational fct = M[i][t];
      for (int j = 0; j < n; ++j) {
        M[i][j] -= fct * M[t][j];
        I[i][j] -= fct * I[t][j];
      }
    }
  }
  return I;
}

RatMat to_rat_mat(const IntMat& A) {
  RatMat R(A.size());
  for (size_t i = 0; i < A.size(); ++i) {
    R[i].reserve(A[i].size());
    for (const Int& z : A[i]) R[i].emplace_back(z);
  }
  return R;
}

RatVec rat_mat_vec(const RatMat& A, const RatVec& v) {
  RatVec out(A.size(), Rational(0));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) out[i] += A[i][j] * v[j];
  return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace qgauss
