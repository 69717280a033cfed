#include "hodgehh/snf.hpp"

#include <algorithm>
#include <random>

#include "hodgehh/util.hpp"

namespace hodgehh {
namespace {

using Dense = std::vector<std::vector<mpz_class>>;

Dense dense_identity(int n) {
  Dense A(n, std::vector<mpz_class>(n, 0));
  for (int i = 0; i < n; ++i) A[i][i] = 1;
  return A;
}

Dense to_dense_int(const SMat& M) {
  require(M.is_integral(), "matrix has non-integer entries, integer arithmetic required");
  Dense A(M.nr, std::vector<mpz_class>(M.nc, 0));
  for (int i = 0; i < M.nr; ++i)
    for (auto& [j, v] : M.row[i]) A[i][j] = v.get_num();
  return A;
}

SMat to_smat(const Dense& A, int nr, int nc) {
  SMat M(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j)
      if (A[i][j] != 0) M.row[i][j] = mpq_class(A[i][j]);
  return M;
}

// quotient with symmetric remainder: |a - q*b| <= b/2, b > 0
mpz_class sym_quot(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (r * 2 > b) ++q;
  return q;
}

// Elimination state. Invariants: M = U * M0 * V, Uinv = U^-1, Vinv = V^-1.
struct SnfWork {
  int nr, nc;
  Dense M, U, Uinv, V, Vinv;

  explicit SnfWork(const SMat& M0)
      : nr(M0.nr),
        nc(M0.nc),
        M(to_dense_int(M0)),
        U(dense_identity(M0.nr)),
        Uinv(dense_identity(M0.nr)),
        V(dense_identity(M0.nc)),
        Vinv(dense_identity(M0.nc)) {}

  void row_swap(int i, int k) {
    if (i == k) return;
    std::swap(M[i], M[k]);
    std::swap(U[i], U[k]);
    for (int a = 0; a < nr; ++a) std::swap(Uinv[a][i], Uinv[a][k]);
  }
  void row_negate(int i) {
    for (auto& v : M[i]) v = -v;
    for (auto& v : U[i]) v = -v;
    for (int a = 0; a < nr; ++a) Uinv[a][i] = -Uinv[a][i];
  }
  // row_i += c * row_k
  void row_axpy(int i, int k, const mpz_class& c) {
    for (int j = 0; j < nc; ++j)
      if (M[k][j] != 0) M[i][j] += c * M[k][j];
    for (int j = 0; j < nr; ++j)
      if (U[k][j] != 0) U[i][j] += c * U[k][j];
    for (int a = 0; a < nr; ++a)
      if (Uinv[a][i] != 0) Uinv[a][k] -= c * Uinv[a][i];
  }
  void col_swap(int j, int l) {
    if (j == l) return;
    for (int i = 0; i < nr; ++i) std::swap(M[i][j], M[i][l]);
    for (int a = 0; a < nc; ++a) std::swap(V[a][j], V[a][l]);
    std::swap(Vinv[j], Vinv[l]);
  }
  void col_negate(int j) {
    for (int i = 0; i < nr; ++i) M[i][j] = -M[i][j];
    for (int a = 0; a < nc; ++a) V[a][j] = -V[a][j];
    for (auto& v : Vinv[j]) v = -v;
  }
  // col_j += c * col_l
  void col_axpy(int j, int l, const mpz_class& c) {
    for (int i = 0; i < nr; ++i)
      if (M[i][l] != 0) M[i][j] += c * M[i][l];
    for (int a = 0; a < nc; ++a)
      if (V[a][l] != 0) V[a][j] += c * V[a][l];
    for (int b = 0; b < nc; ++b)
      if (Vinv[j][b] != 0) Vinv[l][b] -= c * Vinv[j][b];
  }

  // min |value| in the active submatrix, ties broken by Markowitz fill count
  bool find_pivot(int t, int& pi, int& pj) const {
    std::vector<int> rn(nr, 0), cn(nc, 0);
    for (int i = t; i < nr; ++i)
      for (int j = t; j < nc; ++j)
        if (M[i][j] != 0) ++rn[i], ++cn[j];
    bool found = false;
    mpz_class best;
    long bestscore = 0;
    for (int i = t; i < nr; ++i)
      for (int j = t; j < nc; ++j) {
        if (M[i][j] == 0) continue;
        mpz_class a = abs(M[i][j]);
        long score = static_cast<long>(rn[i] - 1) * (cn[j] - 1);
        if (!found || a < best || (a == best && score < bestscore)) {
          found = true;
          best = a;
          bestscore = score;
          pi = i;
          pj = j;
        }
      }
    return found;
  }

  // make row t and column t zero away from the pivot
  void clear_pivot(int t) {
    while (true) {
      bool colclean = false;
      while (!colclean) {
        colclean = true;
        for (int i = t + 1; i < nr; ++i) {
          if (M[i][t] == 0) continue;
          mpz_class q = sym_quot(M[i][t], M[t][t]);
          if (q != 0) row_axpy(i, t, -q);
          if (M[i][t] != 0) {
            row_swap(t, i);
            if (M[t][t] < 0) row_negate(t);
            colclean = false;
          }
        }
      }
      bool dirty = false;
      for (int j = t + 1; j < nc; ++j) {
        if (M[t][j] == 0) continue;
        mpz_class q = sym_quot(M[t][j], M[t][t]);
        if (q != 0) col_axpy(j, t, -q);
        if (M[t][j] != 0) {
          col_swap(t, j);
          if (M[t][t] < 0) col_negate(t);
          dirty = true;
        }
      }
      if (!dirty) return;
    }
  }
};

std::vector<mpq_class> rand_vec(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-(1L << 20), 1L << 20);
  std::vector<mpq_class> x(n);
  for (auto& v : x) v = dist(rng);
  return x;
}

bool vec_eq(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
  return a == b;
}

// Factorization self-check: exhaustive on small matrices, randomized
// matrix-vector probes on large ones (exact arithmetic, fixed seed).
void verify_snf(const SMat& M0, const SNFResult& s) {
  if (std::max(M0.nr, M0.nc) <= 48) {
    require_property(s.U * M0 * s.V == s.D, "U*M*V != D in Smith form");
    require_property(s.U * s.Uinv == SMat::identity(M0.nr), "U*Uinv != I in Smith form");
    require_property(s.V * s.Vinv == SMat::identity(M0.nc), "V*Vinv != I in Smith form");
    return;
  }
  std::mt19937_64 rng(0x5eed5eedULL);
  for (int rep = 0; rep < 3; ++rep) {
    auto x = rand_vec(M0.nc, rng);
    require_property(vec_eq(s.U.apply(M0.apply(s.V.apply(x))), s.D.apply(x)),
                     "U*M*V != D in Smith form (probe)");
    require_property(vec_eq(s.V.apply(s.Vinv.apply(x)), x), "V*Vinv != I in Smith form (probe)");
    auto y = rand_vec(M0.nr, rng);
    require_property(vec_eq(s.U.apply(s.Uinv.apply(y)), y), "U*Uinv != I in Smith form (probe)");
  }
}

}  // namespace

SNFResult smith_normal_form(const SMat& M0) {
  BudgetLease lease(16LL * (static_cast<long long>(M0.nr) * M0.nc + 2LL * M0.nr * M0.nr +
                            2LL * M0.nc * M0.nc),
                    "smith normal form workspace");
  SnfWork w(M0);
  int lim = std::min(w.nr, w.nc);
  int t = 0;
  while (t < lim) {
    int pi, pj;
    if (!w.find_pivot(t, pi, pj)) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    if (w.M[t][t] < 0) w.row_negate(t);
    while (true) {
      w.clear_pivot(t);
      // pivot must divide the whole remaining block for the factor chain
      int bi = -1;
      for (int i = t + 1; i < w.nr && bi < 0; ++i)
        for (int j = t + 1; j < w.nc; ++j)
          if (w.M[i][j] % w.M[t][t] != 0) {
            bi = i;
            break;
          }
      if (bi < 0) break;
      w.row_axpy(t, bi, 1);
    }
    if (w.M[t][t] < 0) w.row_negate(t);
    ++t;
  }
  SNFResult s;
  s.D = to_smat(w.M, w.nr, w.nc);
  s.U = to_smat(w.U, w.nr, w.nr);
  s.Uinv = to_smat(w.Uinv, w.nr, w.nr);
  s.V = to_smat(w.V, w.nc, w.nc);
  s.Vinv = to_smat(w.Vinv, w.nc, w.nc);
  s.rank = t;
  for (int k = 0; k < t; ++k) s.invariant_factors.push_back(w.M[k][k]);
  for (size_t k = 0; k + 1 < s.invariant_factors.size(); ++k)
    require_property(s.invariant_factors[k + 1] % s.invariant_factors[k] == 0,
                     "invariant factor chain not divisible");
  verify_snf(M0, s);
  return s;
}

RREFResult rref(const SMat& M, const Ring& ring) {
  require(ring.is_field(), "row reduction needs a field");
  int nr = M.nr, nc = M.nc;
  BudgetLease lease(24LL * (static_cast<long long>(nr) * nc + 2LL * nr * nr),
                    "row reduction workspace");
  std::vector<std::vector<mpq_class>> R(nr, std::vector<mpq_class>(nc, 0));
  for (int i = 0; i < nr; ++i)
    for (auto& [j, v] : M.row[i]) R[i][j] = ring.normalize(v);
  std::vector<std::vector<mpq_class>> T(nr, std::vector<mpq_class>(nr, 0)),
      Tinv(nr, std::vector<mpq_class>(nr, 0));
  for (int i = 0; i < nr; ++i) T[i][i] = Tinv[i][i] = 1;

  RREFResult out;
  int r = 0;
  for (int j = 0; j < nc && r < nr; ++j) {
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (R[i][j] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      std::swap(R[piv], R[r]);
      std::swap(T[piv], T[r]);
      for (int a = 0; a < nr; ++a) std::swap(Tinv[a][piv], Tinv[a][r]);
    }
    mpq_class pval = R[r][j];
    mpq_class pinv = ring.inv(pval);
    for (int l = j; l < nc; ++l)
      if (R[r][l] != 0) R[r][l] = ring.mul(R[r][l], pinv);
    for (int l = 0; l < nr; ++l)
      if (T[r][l] != 0) T[r][l] = ring.mul(T[r][l], pinv);
    for (int a = 0; a < nr; ++a)
      if (Tinv[a][r] != 0) Tinv[a][r] = ring.mul(Tinv[a][r], pval);
    for (int i = 0; i < nr; ++i) {
      if (i == r || R[i][j] == 0) continue;
      mpq_class c = R[i][j];
      for (int l = j; l < nc; ++l)
        if (R[r][l] != 0) R[i][l] = ring.sub(R[i][l], ring.mul(c, R[r][l]));
      for (int l = 0; l < nr; ++l)
        if (T[r][l] != 0) T[i][l] = ring.sub(T[i][l], ring.mul(c, T[r][l]));
      for (int a = 0; a < nr; ++a)
        if (Tinv[a][i] != 0) Tinv[a][r] = ring.add(Tinv[a][r], ring.mul(c, Tinv[a][i]));
    }
    out.pivot_cols.push_back(j);
    ++r;
  }
  out.rank = r;
  auto pack = [](const std::vector<std::vector<mpq_class>>& A) {
    SMat S(static_cast<int>(A.size()), A.empty() ? 0 : static_cast<int>(A[0].size()));
    for (size_t i = 0; i < A.size(); ++i)
      for (size_t j = 0; j < A[i].size(); ++j)
        if (A[i][j] != 0) S.row[i][static_cast<int>(j)] = A[i][j];
    return S;
  };
  out.R = pack(R);
  out.R.nc = nc;  // pack loses width when nr == 0
  out.T = pack(T);
  out.T.nr = out.T.nc = nr;
  out.Tinv = pack(Tinv);
  out.Tinv.nr = out.Tinv.nc = nr;
  require_property(out.T * M == out.R || ring.kind == RingKind::Fp,
                   "T*M != R in row reduction");
  if (ring.kind == RingKind::Fp) {
    SMat P = out.T * M;
    bool ok = P.nr == out.R.nr && P.nc == out.R.nc;
    for (int i = 0; ok && i < P.nr; ++i)
      for (int j = 0; ok && j < P.nc; ++j)
        if (ring.normalize(P.at(i, j)) != out.R.at(i, j)) ok = false;
    require_property(ok, "T*M != R in row reduction");
  }
  return out;
}

SMat kernel_basis(const SMat& M, const Ring& ring) {
  if (ring.kind == RingKind::Z) {
    auto s = smith_normal_form(M);
    std::vector<int> sel;
    for (int j = s.rank; j < M.nc; ++j) sel.push_back(j);
    return s.V.columns(sel);
  }
  auto rr = rref(M, ring);
  std::vector<bool> is_piv(M.nc, false);
  for (int j : rr.pivot_cols) is_piv[j] = true;
  std::vector<int> free_cols;
  for (int j = 0; j < M.nc; ++j)
    if (!is_piv[j]) free_cols.push_back(j);
  SMat K(M.nc, static_cast<int>(free_cols.size()));
  for (size_t k = 0; k < free_cols.size(); ++k) {
    int fj = free_cols[k];
    K.set(fj, static_cast<int>(k), 1);
    for (int p = 0; p < rr.rank; ++p) {
      mpq_class v = rr.R.at(p, fj);
      if (v != 0) K.set(rr.pivot_cols[p], static_cast<int>(k), ring.sub(0, v));
    }
  }
  return K;
}

int rank_of(const SMat& M, const Ring& ring) {
  return rref(M, ring.is_field() ? ring : Ring::QQ()).rank;
}

mpz_class det_bareiss(const SMat& M) {
  require(M.nr == M.nc, "determinant of a non-square matrix");
  int n = M.nr;
  if (n == 0) return 1;
  Dense a = to_dense_int(M);
  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      std::swap(a[k], a[sw]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

LinSolver::LinSolver(const SMat& M, const Ring& ring) : M_(M), ring_(ring) {
  if (ring.kind == RingKind::Z)
    snf_ = smith_normal_form(M);
  else
    rref_ = rref(M, ring);
}

std::optional<std::vector<mpq_class>> LinSolver::solve(const std::vector<mpq_class>& b) const {
  require(static_cast<int>(b.size()) == M_.nr, "solve: right-hand side has wrong length");
  if (ring_.kind == RingKind::Z) {
    for (auto& v : b)
      if (v.get_den() != 1) return std::nullopt;
    auto c = snf_.U.apply(b);
    std::vector<mpq_class> y(M_.nc, 0);
    for (int i = 0; i < M_.nr; ++i) {
      if (i < snf_.rank) {
        mpz_class num = c[i].get_num();
        const mpz_class& d = snf_.invariant_factors[i];
        if (num % d != 0) return std::nullopt;
        y[i] = mpq_class(num / d);
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return snf_.V.apply(y);
  }
  std::vector<mpq_class> bb(b.size());
  for (size_t i = 0; i < b.size(); ++i) bb[i] = ring_.normalize(b[i]);
  auto c = rref_.T.apply(bb);
  for (auto& v : c) v = ring_.normalize(v);
  for (int i = rref_.rank; i < M_.nr; ++i)
    if (c[i] != 0) return std::nullopt;
  std::vector<mpq_class> x(M_.nc, 0);
  for (int k = 0; k < rref_.rank; ++k) x[rref_.pivot_cols[k]] = c[k];
  return x;
}

std::optional<SMat> LinSolver::solve_mat(const SMat& B) const {
  require(B.nr == M_.nr, "solve_mat: row count mismatch");
  SMat X(M_.nc, B.nc);
  for (int j = 0; j < B.nc; ++j) {
    auto x = solve(B.column(j));
    if (!x) return std::nullopt;
    X.set_column(j, *x);
  }
  return X;
}

}  // namespace hodgehh
