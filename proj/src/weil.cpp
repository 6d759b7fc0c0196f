#include "qgauss/weil.hpp"

#include <cmath>

namespace qgauss {

namespace {

using Cplx = std::complex<long double>;

Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

int pow_sign(int k, int n) {
  if (k == 0) return n == 0 ? 1 : 0;
  if (k == -1 && n % 2 != 0) return -1;
  return 1;
}

void check_sl2(const IntMat& A) {
  if (A.size() != 2 || A[0].size() != 2 || A[1].size() != 2)
    throw precondition_error("bad_matrix", "A must be 2x2");
  if (A[0][0] * A[1][1] - A[0][1] * A[1][0] != 1)
    throw precondition_error("bad_determinant", "A must have determinant 1");
}

// The cocycle delta in {+-1}, by evaluating the three principal square roots
// at tau = i. delta is bounded away from 0, so double precision with a guard
// band of 0.01 proves the sign per call.
int cocycle_delta(const IntMat& m1, const IntMat& m2) {
  const std::complex<double> tau(0.0, 1.0);
  auto d = [](const Int& z) { return z.get_d(); };
  std::complex<double> num2 = d(m2[0][0]) * tau + d(m2[0][1]);
  std::complex<double> j2 = d(m2[1][0]) * tau + d(m2[1][1]);
  std::complex<double> lhs =
      std::sqrt(d(m1[1][0]) * (num2 / j2) + d(m1[1][1])) * std::sqrt(j2);
  std::complex<double> rhs = std::sqrt(d(m1[1][0]) * num2 + d(m1[1][1]) * j2);
  std::complex<double> delta = lhs / rhs;
  if (std::abs(delta - 1.0) < 0.01) return 1;
  if (std::abs(delta + 1.0) < 0.01) return -1;
  throw internal_error("metaplectic cocycle did not evaluate to +-1 within the guard band");
}

IntMat mat2_mul(const IntMat& x, const IntMat& y) {
  IntMat r(2, IntVec(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
  return r;
}

DiscGroup module_of(const EvenSymMatrix& G) {
  if (!G.positive_definite())
    throw precondition_error("indefinite", "the representation requires positive definite G");
  return disc_group(G);
}

IntVec mul_coords(const FiniteQuadraticModule& M, const Int& a, const IntVec& coords) {
  IntVec out(coords.size());
  for (size_t i = 0; i < coords.size(); ++i) {
    Int v = a * coords[i];
    Int m(M.orders[i]);
    mpz_fdiv_r(out[i].get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  }
  return out;
}

long double pi_ld() { return acosl(-1.0L); }

Cplx e_of(const Cplx& w) { return std::exp(Cplx(0.0L, 2.0L * pi_ld()) * w); }

Cplx approx_c(const Cyclotomic& v) {
  auto [re, im] = v.approx(18);
  return Cplx(re, im);
}

long double rat_ld(const Rational& r) {
  return static_cast<long double>(r.get_num().get_d()) /
         static_cast<long double>(r.get_den().get_d());
}

}  // namespace

Mp2Element make_mp2(const IntMat& mat, int eps) {
  check_sl2(mat);
  if (eps != 1 && eps != -1) throw precondition_error("bad_eps", "eps must be +-1");
  return Mp2Element{mat, eps};
}

Mp2Element mp2_identity() {
  return Mp2Element{{{Int(1), Int(0)}, {Int(0), Int(1)}}, 1};
}

Mp2Element mp2_s() { return Mp2Element{{{Int(0), Int(-1)}, {Int(1), Int(0)}}, 1}; }

Mp2Element mp2_t() { return Mp2Element{{{Int(1), Int(1)}, {Int(0), Int(1)}}, 1}; }

Mp2Element mp2_mul(const Mp2Element& g1, const Mp2Element& g2) {
  Mp2Element r;
  r.mat = mat2_mul(g1.mat, g2.mat);
  r.eps = g1.eps * g2.eps * cocycle_delta(g1.mat, g2.mat);
  return r;
}

Mp2Element mp2_inverse(const Mp2Element& g) {
  IntMat inv = {{g.mat[1][1], -g.mat[0][1]}, {-g.mat[1][0], g.mat[0][0]}};
  int delta = cocycle_delta(g.mat, inv);
  return Mp2Element{inv, g.eps * delta};
}

bool mp2_equal(const Mp2Element& g1, const Mp2Element& g2) {
  return g1.mat == g2.mat && g1.eps == g2.eps;
}

IntMat sl2_completion(const Int& a, const Int& c) {
  if (gcd_int(a, c) != 1) throw precondition_error("not_coprime_ac", "gcd(a, c) must be 1");
  Int b, d, g;
  mpz_gcdext(g.get_mpz_t(), d.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  // a d + c b = 1, so [[a, -b], [c, d]] has determinant 1.
  return {{a, -b}, {c, d}};
}

WeilMatrix weil_identity(const EvenSymMatrix& G) {
  WeilMatrix w{module_of(G), {}};
  long m = w.module.size();
  w.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  for (long i = 0; i < m; ++i) w.entries[i][i] = Cyclotomic::one();
  return w;
}

WeilMatrix weil_generator(const EvenSymMatrix& G, WeilGen which) {
  WeilMatrix w{module_of(G), {}};
  const FiniteQuadraticModule& M = w.module.fqm;
  std::vector<IntVec> elems = M.elements();
  long m = static_cast<long>(elems.size());
  w.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  if (which == WeilGen::T) {
    for (long i = 0; i < m; ++i) w.entries[i][i] = Cyclotomic::e(M.q_of(elems[i]));
  } else {
    Cyclotomic factor = e_frac(Int(-G.n), Int(8)) * sqrt_int(G.det) / Rational(G.det);
    for (long y = 0; y < m; ++y)
      for (long x = 0; x < m; ++x)
        w.entries[y][x] = factor * Cyclotomic::e(-M.b_of(elems[x], elems[y]));
  }
  return w;
}

WeilMatrix weil_mul(const WeilMatrix& x, const WeilMatrix& y) {
  long m = x.size();
  if (y.size() != m) throw precondition_error("dimension_mismatch", "matrix sizes differ");
  WeilMatrix r{x.module, {}};
  r.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  for (long i = 0; i < m; ++i)
    for (long k = 0; k < m; ++k) {
      if (x.entries[i][k].is_zero()) continue;
      for (long j = 0; j < m; ++j) r.entries[i][j] += x.entries[i][k] * y.entries[k][j];
    }
  return r;
}

WeilMatrix weil_conj_transpose(const WeilMatrix& x) {
  long m = x.size();
  WeilMatrix r{x.module, {}};
  r.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) r.entries[i][j] = x.entries[j][i].conj();
  return r;
}

bool weil_equal(const WeilMatrix& x, const WeilMatrix& y) {
  if (x.size() != y.size()) return false;
  for (long i = 0; i < x.size(); ++i)
    for (long j = 0; j < x.size(); ++j)
      if (x.entries[i][j] != y.entries[i][j]) return false;
  return true;
}

bool weil_unitary(const WeilMatrix& x) {
  WeilMatrix prod = weil_mul(x, weil_conj_transpose(x));
  for (long i = 0; i < x.size(); ++i)
    for (long j = 0; j < x.size(); ++j) {
      const Cyclotomic& want = (i == j) ? Cyclotomic::one() : Cyclotomic::zero();
      if (prod.entries[i][j] != want) return false;
    }
  return true;
}

std::pair<Mp2Element, WeilMatrix> weil_word(const EvenSymMatrix& G, const std::string& word) {
  Mp2Element g = mp2_identity();
  WeilMatrix m = weil_identity(G);
  WeilMatrix s = weil_generator(G, WeilGen::S);
  WeilMatrix t = weil_generator(G, WeilGen::T);
  WeilMatrix s_inv = weil_conj_transpose(s);
  WeilMatrix t_inv = weil_conj_transpose(t);
  for (char ch : word) {
    switch (ch) {
      case 'S':
        g = mp2_mul(g, mp2_s());
        m = weil_mul(m, s);
        break;
      case 'T':
        g = mp2_mul(g, mp2_t());
        m = weil_mul(m, t);
        break;
      case 's':
        g = mp2_mul(g, mp2_inverse(mp2_s()));
        m = weil_mul(m, s_inv);
        break;
      case 't':
        g = mp2_mul(g, mp2_inverse(mp2_t()));
        m = weil_mul(m, t_inv);
        break;
      default:
        throw precondition_error("bad_word", "word letters must be S, T, s or t");
    }
  }
  return {g, m};
}

WeilMatrix weil_shintani(const EvenSymMatrix& G, const IntMat& A) {
  check_sl2(A);
  const Int &a = A[0][0], &b = A[0][1], &c = A[1][0], &d = A[1][1];
  (void)b;
  if (c == 0) throw precondition_error("c_zero", "Shintani's formula requires c != 0; use the word route");
  WeilMatrix w{module_of(G), {}};
  const int n = G.n;
  std::vector<IntVec> elems = w.module.fqm.elements();
  long m = static_cast<long>(elems.size());
  std::vector<RatVec> reps(m);
  for (long i = 0; i < m; ++i) reps[i] = w.module.representative(elems[i]);

  Int ca = abs(c);
  long cl = to_long(ca);
  Int can(1);
  for (int i = 0; i < n; ++i) can *= ca;
  Cyclotomic prefactor = e_frac(Int(-n) * sgn(c), Int(8)) * sqrt_int(G.det) / Rational(G.det);
  prefactor *= sqrt_pow(ca, n) / Rational(can);

  w.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  for (long yi = 0; yi < m; ++yi)
    for (long xi = 0; xi < m; ++xi) {
      ExpSum acc;
      IntVec t(n, Int(0));
      const Rational qx = G.q_of(reps[xi]);
      for (;;) {
        RatVec yt = reps[yi];
        for (int i = 0; i < n; ++i) yt[i] += Rational(t[i]);
        acc.add((Rational(a) * G.q_of(yt) - G.bilinear(yt, reps[xi]) + Rational(d) * qx) /
                Rational(c));
        int pos = n - 1;
        while (pos >= 0) {
          t[pos] += 1;
          if (t[pos] < cl) break;
          t[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
      w.entries[yi][xi] = prefactor * acc.to_cyclotomic();
    }
  return w;
}

WeilMatrix weil_closed_coprime(const EvenSymMatrix& G, const IntMat& A, int inverse_lift) {
  check_sl2(A);
  const Int &a = A[0][0], &b = A[0][1], &c = A[1][0];
  if (c <= 0) throw precondition_error("bad_modulus", "requires c > 0");
  if (a == 0) throw precondition_error("a_zero", "requires a != 0");
  if (gcd_int(G.level, c) != 1)
    throw precondition_error("not_coprime_nc", "requires gcd(N, c) = 1");
  WeilMatrix w{module_of(G), {}};
  const int n = G.n;
  const FiniteQuadraticModule& M = w.module.fqm;
  std::vector<IntVec> elems = M.elements();
  long m = static_cast<long>(elems.size());

  const Int cp = inv_mod(c, abs(a) * G.level) + Int(inverse_lift) * abs(a) * G.level;
  Rational kq = ratio(b + cp, a);
  kq.canonicalize();
  if (kq.get_den() != 1) throw internal_error("(b + c')/a failed to be an integer");
  const Int k = kq.get_num();
  const OddPart c0 = odd_part(c);
  const Int sa = sgn(a);

  Cyclotomic prefactor = sqrt_int(G.det) / Rational(G.det);
  prefactor *= e_frac(Int(-n), Int(8));
  prefactor *= Rational(pow_sign(kronecker(abs(a), c), n) * kronecker(G.det, c));
  prefactor *= e_frac(Int(n) * sa * (1 - c0.odd), Int(8));

  w.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  for (long wi = 0; wi < m; ++wi)
    for (long vi = 0; vi < m; ++vi) {
      Rational expo = Rational(k) * M.q_of(elems[vi]) - Rational(cp) * M.b_of(elems[wi], elems[vi]) +
                      Rational(a * cp) * M.q_of(elems[wi]);
      w.entries[wi][vi] = prefactor * Cyclotomic::e(expo);
    }
  return w;
}

WeilMatrix weil_closed_divides(const EvenSymMatrix& G, const IntMat& A) {
  check_sl2(A);
  const Int &a = A[0][0], &b = A[0][1], &c = A[1][0];
  if (c <= 0) throw precondition_error("bad_modulus", "requires c > 0");
  if (c % G.level != 0) throw precondition_error("n_not_dividing_c", "requires N | c");
  WeilMatrix w{module_of(G), {}};
  const FiniteQuadraticModule& M = w.module.fqm;
  std::vector<IntVec> elems = M.elements();
  long m = static_cast<long>(elems.size());
  Cyclotomic mu = mu_unit(G, a, c);

  w.entries.assign(m, std::vector<Cyclotomic>(m, Cyclotomic::zero()));
  for (long wi = 0; wi < m; ++wi) {
    IntVec aw = mul_coords(M, a, elems[wi]);
    Cyclotomic val = mu * Cyclotomic::e(Rational(a * b) * M.q_of(elems[wi]));
    for (long vi = 0; vi < m; ++vi)
      if (elems[vi] == aw) w.entries[wi][vi] = val;
  }
  return w;
}

double theta_transform_residual(const EvenSymMatrix& G, const IntVec& t_coords, const IntMat& A,
                                std::complex<long double> tau,
                                const std::vector<std::complex<long double>>& z, long radius) {
  check_sl2(A);
  const Int &a = A[0][0], &b = A[0][1], &c = A[1][0], &d = A[1][1];
  if (c <= 0) throw precondition_error("bad_modulus", "requires c > 0");
  if (a == 0) throw precondition_error("a_zero", "requires a != 0");
  if (gcd_int(G.level, c) != 1)
    throw precondition_error("not_coprime_nc", "requires gcd(N, c) = 1");
  if (radius < 0) throw precondition_error("bad_radius", "radius must be nonnegative");
  if (tau.imag() <= 0) throw precondition_error("bad_tau", "requires Im(tau) > 0");
  const int n = G.n;
  if (static_cast<int>(z.size()) != n)
    throw precondition_error("dimension_mismatch", "z must have length n");
  DiscGroup disc = module_of(G);
  RatVec t = disc.representative(t_coords);

  // Exact gamma and c' data.
  const Int cp = inv_mod(c, abs(a) * G.level);
  Rational kq = ratio(b + cp, a);
  kq.canonicalize();
  if (kq.get_den() != 1) throw internal_error("(b + c')/a failed to be an integer");
  const Int k = kq.get_num();
  const OddPart c0 = odd_part(c);
  Cyclotomic gamma = sqrt_int(G.det) / Rational(G.det);
  gamma *= e_frac(Int(-n), Int(8));
  gamma *= Rational(pow_sign(kronecker(abs(a), c), n) * kronecker(G.det, c));
  gamma *= e_frac(Int(n) * sgn(a) * (1 - c0.odd), Int(8));

  auto bilinear_c = [&](const RatVec& v, const std::vector<Cplx>& zz) {
    Cplx out(0.0L, 0.0L);
    for (int i = 0; i < n; ++i) {
      long double gv = 0.0L;
      for (int j = 0; j < n; ++j) gv += G.g[i][j].get_d() * rat_ld(v[j]);
      out += gv * zz[i];
    }
    return out;
  };
  Cplx qz(0.0L, 0.0L);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) qz += 0.5L * G.g[i][j].get_d() * z[i] * z[j];

  const Rational rad(radius);
  Cplx jt = Cplx(c.get_d(), 0.0L) * tau + Cplx(d.get_d(), 0.0L);
  Cplx tau2 = (Cplx(a.get_d(), 0.0L) * tau + Cplx(b.get_d(), 0.0L)) / jt;
  std::vector<Cplx> z2(n);
  for (int i = 0; i < n; ++i) z2[i] = z[i] / jt;

  // LHS: truncated theta over t + Z^n. Its series converges at rate
  // Im(tau') = Im(tau)/|c tau + d|^2, so the cutoff is scaled by |c tau + d|^2
  // to keep terms of the same magnitude as on the right-hand side.
  const long double lhs_cut = static_cast<long double>(radius) * std::norm(jt);
  Cplx lhs_sum(0.0L, 0.0L);
  {
    std::vector<long> lo(n), hi(n), u(n);
    for (int i = 0; i < n; ++i) {
      double bound = std::sqrt(2.0 * static_cast<double>(lhs_cut) *
                               std::abs(G.inv[i][i].get_d())) + 1.0;
      double ti = rat_ld(t[i]);
      lo[i] = static_cast<long>(std::floor(-bound - ti));
      hi[i] = static_cast<long>(std::ceil(bound - ti));
      u[i] = lo[i];
    }
    for (;;) {
      RatVec v(n);
      for (int i = 0; i < n; ++i) v[i] = t[i] + Rational(u[i]);
      Rational qv = G.q_of(v);
      if (rat_ld(qv) <= lhs_cut)
        lhs_sum += e_of(tau2 * Cplx(rat_ld(qv), 0.0L) + bilinear_c(v, z2));
      int pos = n - 1;
      while (pos >= 0) {
        ++u[pos];
        if (u[pos] <= hi[pos]) break;
        u[pos] = lo[pos];
        --pos;
      }
      if (pos < 0) break;
    }
  }
  Cplx lhs = std::pow(jt, Cplx(-0.5L * n, 0.0L)) *
             e_of(-(Cplx(c.get_d(), 0.0L) / jt) * qz) * lhs_sum;

  // RHS: gamma * sum over v in the dual lattice with Q(v) <= radius.
  Cplx rhs_sum(0.0L, 0.0L);
  {
    std::vector<long> lo(n), hi(n), mm(n);
    for (int i = 0; i < n; ++i) {
      double bound = std::sqrt(2.0 * static_cast<double>(radius) * G.g[i][i].get_d()) + 1.0;
      lo[i] = static_cast<long>(std::floor(-bound));
      hi[i] = static_cast<long>(std::ceil(bound));
      mm[i] = lo[i];
    }
    const Rational act = Rational(a * cp) * G.q_of(t);
    for (;;) {
      RatVec mv(n);
      for (int i = 0; i < n; ++i) mv[i] = Rational(mm[i]);
      RatVec v = rat_mat_vec(G.inv, mv);
      Rational qv = G.q_of(v);
      if (qv <= rad) {
        Rational expo = Rational(k) * qv - Rational(cp) * G.bilinear(t, v) + act;
        Cplx coeff = approx_c(Cyclotomic::e(expo));
        rhs_sum += coeff * e_of(tau * Cplx(rat_ld(qv), 0.0L) + bilinear_c(v, z));
      }
      int pos = n - 1;
      while (pos >= 0) {
        ++mm[pos];
        if (mm[pos] <= hi[pos]) break;
        mm[pos] = lo[pos];
        --pos;
      }
      if (pos < 0) break;
    }
  }
  Cplx rhs = approx_c(gamma) * rhs_sum;
  return static_cast<double>(std::abs(lhs - rhs));
}

}  // namespace qgauss
