#include "qgauss/qform.hpp"

#include <algorithm>
#include <numeric>

namespace qgauss {

namespace {

Rational mod1(Rational r) {
  r.canonicalize();
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  r -= Rational(fl);
  return r;
}

bool integral(const Rational& r) {
  Rational t(r);
  t.canonicalize();
  return t.get_den() == 1;
}

}  // namespace

bool is_prime(const Int& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

Rational EvenSymMatrix::q_of(const RatVec& v) const {
  Rational s(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += v[i] * Rational(g[i][j]) * v[j];
  return s / 2;
}

Rational EvenSymMatrix::bilinear(const RatVec& v, const RatVec& w) const {
  Rational s(0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += v[i] * Rational(g[i][j]) * w[j];
  return s;
}

EvenSymMatrix EvenSymMatrix::perp() const {
  IntMat p(n, IntVec(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rational entry = Rational(level) * inv[i][j];
      entry.canonicalize();
      if (entry.get_den() != 1) throw internal_error("perp: N * G^{-1} not integral");
      p[i][j] = entry.get_num();
    }
  return make_even_sym(p);
}

EvenSymMatrix make_even_sym(const IntMat& entries) {
  EvenSymMatrix M;
  M.n = static_cast<int>(entries.size());
  for (const auto& row : entries)
    if (static_cast<int>(row.size()) != M.n)
      throw precondition_error("not_square", "matrix must be square");
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j)
      if (entries[i][j] != entries[j][i])
        throw precondition_error("not_symmetric", "matrix must be symmetric");
  for (int i = 0; i < M.n; ++i)
    if (mpz_odd_p(entries[i][i].get_mpz_t()))
      throw precondition_error("odd_diagonal", "diagonal entries must be even");
  M.g = entries;
  M.det = det_bareiss(entries);
  if (M.det == 0) throw precondition_error("singular", "matrix must be nonsingular");
  M.inv = rat_inverse(to_rat_mat(entries));
  M.adjugate.assign(M.n, IntVec(M.n));
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j) {
      Rational adj = M.inv[i][j] * Rational(M.det);
      adj.canonicalize();
      if (adj.get_den() != 1) throw internal_error("adjugate not integral");
      M.adjugate[i][j] = adj.get_num();
    }
  // Level: least N with N * G^{-1} even integral.
  Int N(1);
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j) {
      Rational entry = i == j ? M.inv[i][j] / 2 : M.inv[i][j];
      entry.canonicalize();
      Int den = entry.get_den();
      mpz_lcm(N.get_mpz_t(), N.get_mpz_t(), den.get_mpz_t());
    }
  M.level = N;
  M.inertia = rational_inertia(to_rat_mat(entries));
  SmithForm sf = smith_normal_form(entries);
  M.smith_u = sf.U;
  M.smith_u_inv.assign(M.n, IntVec(M.n));
  RatMat uinv = rat_inverse(to_rat_mat(sf.U));
  for (int i = 0; i < M.n; ++i)
    for (int j = 0; j < M.n; ++j) {
      Rational entry = uinv[i][j];
      entry.canonicalize();
      if (entry.get_den() != 1) throw internal_error("U^{-1} not integral");
      M.smith_u_inv[i][j] = entry.get_num();
    }
  M.smith_diag.resize(M.n);
  for (int i = 0; i < M.n; ++i) M.smith_diag[i] = sf.S[i][i];
  return M;
}

EvenSymMatrix an_matrix(int n) {
  if (n < 1) throw precondition_error("bad_rank", "A_n requires n >= 1");
  IntMat g(n, IntVec(n, Int(0)));
  for (int i = 0; i < n; ++i) {
    g[i][i] = 2;
    if (i + 1 < n) {
      g[i][i + 1] = -1;
      g[i + 1][i] = -1;
    }
  }
  return make_even_sym(g);
}

long FiniteQuadraticModule::size() const {
  long s = 1;
  for (long e : orders) s *= e;
  return s;
}

Rational FiniteQuadraticModule::q_of(const IntVec& x) const {
  Rational s(0);
  const size_t k = orders.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) s += Rational(x[i]) * qgram[i][j] * Rational(x[j]);
  return mod1(s);
}

Rational FiniteQuadraticModule::b_of(const IntVec& x, const IntVec& y) const {
  Rational s(0);
  const size_t k = orders.size();
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) s += Rational(x[i]) * qgram[i][j] * Rational(y[j]);
  return mod1(2 * s);
}

std::vector<IntVec> FiniteQuadraticModule::elements() const {
  const size_t k = orders.size();
  std::vector<IntVec> out;
  out.reserve(static_cast<size_t>(size()));
  IntVec cur(k, Int(0));
  for (;;) {
    out.push_back(cur);
    size_t i = k;
    while (i > 0) {
      --i;
      cur[i] += 1;
      if (cur[i] < orders[i]) break;
      cur[i] = 0;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

bool FiniteQuadraticModule::well_defined() const {
  const size_t k = orders.size();
  for (auto& x : elements()) {
    for (size_t i = 0; i < k; ++i) {
      IntVec shifted = x;
      shifted[i] += orders[i];
      Rational a = q_of(x);
      Rational b;
      {
        Rational s(0);
        for (size_t p = 0; p < k; ++p)
          for (size_t q = 0; q < k; ++q) s += Rational(shifted[p]) * qgram[p][q] * Rational(shifted[q]);
        b = mod1(s);
      }
      if (a != b) return false;
    }
  }
  return true;
}

bool FiniteQuadraticModule::nondegenerate() const {
  auto elems = elements();
  for (auto& x : elems) {
    bool zero_row = true;
    bool is_origin = std::all_of(x.begin(), x.end(), [](const Int& z) { return z == 0; });
    if (is_origin) continue;
    for (auto& y : elems)
      if (b_of(x, y) != 0) { zero_row = false; break; }
    if (zero_row) return false;
  }
  return true;
}

FiniteQuadraticModule fqm_direct_sum(const FiniteQuadraticModule& a, const FiniteQuadraticModule& b) {
  FiniteQuadraticModule out;
  out.orders = a.orders;
  out.orders.insert(out.orders.end(), b.orders.begin(), b.orders.end());
  const size_t ka = a.orders.size(), kb = b.orders.size();
  out.qgram.assign(ka + kb, RatVec(ka + kb, Rational(0)));
  for (size_t i = 0; i < ka; ++i)
    for (size_t j = 0; j < ka; ++j) out.qgram[i][j] = a.qgram[i][j];
  for (size_t i = 0; i < kb; ++i)
    for (size_t j = 0; j < kb; ++j) out.qgram[ka + i][ka + j] = b.qgram[i][j];
  return out;
}

FiniteQuadraticModule fqm_indecomposable(FqmKind kind, long p, long r, const Int& a) {
  if (r < 1) throw precondition_error("bad_fqm_params", "exponent r must be >= 1");
  Int pr(1);
  for (long i = 0; i < r; ++i) pr *= p;
  FiniteQuadraticModule out;
  switch (kind) {
    case FqmKind::A_odd: {
      if (p == 2 || !is_prime(Int(p)))
        throw precondition_error("bad_fqm_params", "A_odd requires an odd prime p");
      if (a % p == 0) throw precondition_error("bad_fqm_params", "A_odd requires p not dividing a");
      out.orders = {to_long(pr)};
      out.qgram = {{ratio(a, pr)}};
      break;
    }
    case FqmKind::A_two: {
      if (p != 2) throw precondition_error("bad_fqm_params", "A_two requires p = 2");
      if (mpz_even_p(a.get_mpz_t()))
        throw precondition_error("bad_fqm_params", "A_two requires odd a");
      out.orders = {to_long(pr)};
      out.qgram = {{ratio(a, 2 * pr)}};
      break;
    }
    case FqmKind::B: {
      if (p != 2) throw precondition_error("bad_fqm_params", "B requires p = 2");
      out.orders = {to_long(pr), to_long(pr)};
      out.qgram = {{ratio(Int(1), pr), ratio(Int(1), 2 * pr)}, {ratio(Int(1), 2 * pr), ratio(Int(1), pr)}};
      break;
    }
    case FqmKind::C: {
      if (p != 2) throw precondition_error("bad_fqm_params", "C requires p = 2");
      out.orders = {to_long(pr), to_long(pr)};
      out.qgram = {{Rational(0), ratio(Int(1), 2 * pr)}, {ratio(Int(1), 2 * pr), Rational(0)}};
      break;
    }
  }
  return out;
}

DiscGroup disc_group(const EvenSymMatrix& G) {
  DiscGroup D;
  D.form = G;
  std::vector<int> positions;
  for (int i = 0; i < G.n; ++i) {
    if (G.smith_diag[i] < 0) throw internal_error("negative Smith invariant");
    if (G.smith_diag[i] != 1) {
      positions.push_back(i);
      D.orders.push_back(to_long(G.smith_diag[i]));
    }
  }
  for (int pos : positions) {
    // representative of the unit coordinate: G^{-1} U^{-1} e_pos
    RatVec col(G.n, Rational(0));
    for (int i = 0; i < G.n; ++i) col[i] = Rational(G.smith_u_inv[i][pos]);
    D.reps.push_back(rat_mat_vec(G.inv, col));
  }
  const size_t k = positions.size();
  D.fqm.orders = D.orders;
  D.fqm.qgram.assign(k, RatVec(k, Rational(0)));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) D.fqm.qgram[i][j] = G.bilinear(D.reps[i], D.reps[j]) / 2;
  return D;
}

RatVec DiscGroup::representative(const IntVec& coords) const {
  RatVec v(form.n, Rational(0));
  for (size_t j = 0; j < reps.size(); ++j)
    for (int i = 0; i < form.n; ++i) v[i] += Rational(coords[j]) * reps[j][i];
  return v;
}

IntVec DiscGroup::coords_of(const RatVec& v) const {
  // y = G v must be integral; coordinates are U y modulo the invariants.
  RatVec y = rat_mat_vec(to_rat_mat(form.g), v);
  IntVec yi(form.n);
  for (int i = 0; i < form.n; ++i) {
    Rational e = y[i];
    e.canonicalize();
    if (!integral(e)) throw precondition_error("not_in_dual", "vector is not in G^{-1}Z^n");
    yi[i] = e.get_num();
  }
  IntVec full = mat_vec(form.smith_u, yi);
  IntVec coords;
  int j = 0;
  for (int i = 0; i < form.n; ++i) {
    if (form.smith_diag[i] == 1) continue;
    Int c;
    mpz_fdiv_r(c.get_mpz_t(), full[i].get_mpz_t(), form.smith_diag[i].get_mpz_t());
    coords.push_back(c);
    ++j;
  }
  return coords;
}

FiniteQuadraticModule discriminant_module(const EvenSymMatrix& G) { return disc_group(G).fqm; }

}  // namespace qgauss
