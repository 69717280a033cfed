#include "hodgehh/chain.hpp"

#include <algorithm>

#include "hodgehh/util.hpp"

namespace hodgehh {

SMat normalized(const SMat& M, const Ring& ring) {
  SMat N(M.nr, M.nc);
  for (int i = 0; i < M.nr; ++i)
    for (auto& [j, v] : M.row[i]) {
      mpq_class w = ring.normalize(v);
      if (w != 0) N.row[i][j] = w;
    }
  return N;
}

namespace {

SMat rows_select(const SMat& M, const std::vector<int>& sel) {
  SMat R(static_cast<int>(sel.size()), M.nc);
  for (size_t i = 0; i < sel.size(); ++i) R.row[i] = M.row[sel[i]];
  return R;
}

}  // namespace

bool is_zero_in(const SMat& M, const Ring& ring) {
  for (auto& r : M.row)
    for (auto& [j, v] : r)
      if (!ring.is_zero(v)) return false;
  return true;
}

bool equal_in(const SMat& A, const SMat& B, const Ring& ring) {
  return A.nr == B.nr && A.nc == B.nc && is_zero_in(A - B, ring);
}

int ChainComplex::dim(int n) const {
  auto it = dims.find(n);
  return it == dims.end() ? 0 : it->second;
}

SMat ChainComplex::boundary(int n) const {
  auto it = diff.find(n);
  if (it != diff.end()) return it->second;
  return SMat::zero(dim(n - 1), dim(n));
}

int ChainComplex::lo() const { return dims.empty() ? 0 : dims.begin()->first; }
int ChainComplex::hi() const { return dims.empty() ? -1 : dims.rbegin()->first; }
bool ChainComplex::in_range(int n) const { return !dims.empty() && n >= lo() && n <= hi(); }

mpz_class ChainComplex::euler_char() const {
  mpz_class chi = 0;
  for (auto& [n, r] : dims) chi += (n % 2 == 0 ? r : -r);
  return chi;
}

HomologyRecord ChainComplex::homology(int n) const {
  require(in_range(n), cat("homology degree ", n, " outside complex range [", lo(), ",", hi(), "]"));
  HomologyRecord rec;
  rec.degree = n;
  Ring field = ring.is_field() ? ring : Ring::QQ();
  SMat dn = boundary(n), dn1 = boundary(n + 1);
  rec.betti = dim(n) - rank_of(dn, field) - rank_of(dn1, field);
  if (ring.kind == RingKind::Z) {
    for (auto& f : smith_normal_form(dn1).invariant_factors)
      if (f > 1) rec.torsion.push_back(f);
  }
  return rec;
}

std::vector<HomologyRecord> ChainComplex::homology_range(int from, int to) const {
  std::vector<HomologyRecord> out;
  for (int n = from; n <= to; ++n) out.push_back(homology(n));
  return out;
}

std::vector<long> ChainComplex::weight_values() const {
  std::vector<long> vals;
  for (auto& [n, ws] : weights)
    for (long w : ws) vals.push_back(w);
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

ChainComplex ChainComplex::weight_block(long w) const {
  std::map<int, std::vector<int>> sel;
  for (auto& [n, r] : dims) {
    require(r == 0 || weights.count(n), cat("no weights in degree ", n));
    std::vector<int> s;
    if (r > 0) {
      auto& ws = weights.at(n);
      for (int i = 0; i < r; ++i)
        if (ws[i] == w) s.push_back(i);
    }
    sel[n] = s;
  }
  std::map<int, int> bdims;
  std::map<int, SMat> bdiff;
  std::map<int, std::vector<long>> bweights;
  std::map<int, std::vector<std::string>> blabels;
  for (auto& [n, s] : sel) {
    bdims[n] = static_cast<int>(s.size());
    bweights[n].assign(s.size(), w);
    if (labels.count(n)) {
      auto& ls = labels.at(n);
      for (int i : s) blabels[n].push_back(ls[i]);
    }
  }
  for (auto& [n, s] : sel) {
    if (!sel.count(n - 1)) continue;
    bdiff[n] = rows_select(boundary(n).columns(s), sel.at(n - 1));
  }
  return make_complex(ring, bdims, bdiff, bweights, blabels);
}

ChainComplex make_complex(const Ring& ring, std::map<int, int> dims, std::map<int, SMat> diff,
                          std::map<int, std::vector<long>> weights,
                          std::map<int, std::vector<std::string>> labels) {
  ChainComplex C;
  C.ring = ring;
  C.dims = std::move(dims);
  C.weights = std::move(weights);
  C.labels = std::move(labels);
  for (auto& [n, r] : C.dims) require(r >= 0, cat("negative rank in degree ", n));
  long long total = 0;
  for (auto& [n, r] : C.dims) total += r;
  charge_budget(8 * total, "chain complex");
  for (auto& [n, M] : diff) {
    require(M.nr == C.dim(n - 1) && M.nc == C.dim(n),
            cat("differential in degree ", n, " has shape ", M.nr, "x", M.nc, ", expected ",
                C.dim(n - 1), "x", C.dim(n)));
    SMat N = normalized(M, ring);
    if (!N.is_zero()) C.diff[n] = std::move(N);
  }
  for (auto& [n, M] : C.diff) {
    if (!C.diff.count(n + 1)) continue;
    if (!is_zero_in(M * C.diff.at(n + 1), ring))
      require(false, cat("d*d != 0 between degrees ", n + 1, " and ", n - 1));
  }
  for (auto& [n, ws] : C.weights)
    require(static_cast<int>(ws.size()) == C.dim(n),
            cat("weight list in degree ", n, " has wrong length"));
  for (auto& [n, ls] : C.labels)
    require(static_cast<int>(ls.size()) == C.dim(n),
            cat("label list in degree ", n, " has wrong length"));
  if (!C.weights.empty()) {
    for (auto& [n, M] : C.diff) {
      if (!C.weights.count(n) || !C.weights.count(n - 1)) continue;
      auto& wsrc = C.weights.at(n);
      auto& wtgt = C.weights.at(n - 1);
      for (int i = 0; i < M.nr; ++i)
        for (auto& [j, v] : M.row[i]) {
          (void)v;
          if (wtgt[i] != wsrc[j])
            require(false, cat("differential in degree ", n, " moves weight ", wsrc[j], " to ",
                               wtgt[i]));
        }
    }
  }
  return C;
}

ChainComplex to_rational(const ChainComplex& C) {
  require(C.ring.kind == RingKind::Z, "rationalization expects an integral complex");
  ChainComplex Q = C;
  Q.ring = Ring::QQ();
  return Q;
}

ChainComplex direct_sum(const ChainComplex& A, const ChainComplex& B) {
  require(A.ring == B.ring, "direct sum needs a common ring");
  std::map<int, int> dims;
  std::map<int, SMat> diff;
  for (auto& [n, r] : A.dims) dims[n] += r;
  for (auto& [n, r] : B.dims) dims[n] += r;
  for (auto& [n, r] : dims) {
    (void)r;
    if (!dims.count(n - 1)) continue;
    // block order per degree: A's basis then B's
    SMat D(A.dim(n - 1) + B.dim(n - 1), A.dim(n) + B.dim(n));
    D.insert_block(0, 0, A.boundary(n));
    D.insert_block(A.dim(n - 1), A.dim(n), B.boundary(n));
    diff[n] = D;
  }
  bool weighted = true;
  for (auto& [n, r] : dims)
    if (r > 0 && ((A.dim(n) > 0 && !A.weights.count(n)) || (B.dim(n) > 0 && !B.weights.count(n))))
      weighted = false;
  std::map<int, std::vector<long>> ws;
  if (weighted && (!A.weights.empty() || !B.weights.empty())) {
    for (auto& [n, r] : dims) {
      (void)r;
      std::vector<long> v;
      if (A.weights.count(n)) v = A.weights.at(n);
      v.resize(A.dim(n), 0);
      std::vector<long> vb;
      if (B.weights.count(n)) vb = B.weights.at(n);
      vb.resize(B.dim(n), 0);
      v.insert(v.end(), vb.begin(), vb.end());
      ws[n] = v;
    }
  }
  return make_complex(A.ring, dims, diff, ws);
}

HomologyBasis homology_basis(const ChainComplex& C, int n) {
  HomologyBasis H;
  H.ring = C.ring;
  H.degree = n;
  if (!C.in_range(n)) {
    H.cycle_reps = SMat::zero(C.dim(n), 0);
    H.torsion_reps = SMat::zero(C.dim(n), 0);
    H.proj_free = SMat::zero(0, 0);
    H.proj_tor = SMat::zero(0, 0);
    H.ksolve = std::make_shared<LinSolver>(SMat::zero(C.dim(n), 0), C.ring);
    return H;
  }
  SMat K = kernel_basis(C.boundary(n), C.ring);
  int k = K.nc;
  auto ksolve = std::make_shared<LinSolver>(K, C.ring);
  auto Y = ksolve->solve_mat(C.boundary(n + 1));
  require_property(Y.has_value(), "boundaries do not lie in the kernel lattice");
  H.ksolve = ksolve;
  if (C.ring.kind == RingKind::Z) {
    auto s = smith_normal_form(*Y);
    std::vector<int> free_rows, tor_rows;
    for (int i = 0; i < s.rank; ++i)
      if (s.invariant_factors[i] > 1) {
        tor_rows.push_back(i);
        H.torsion.push_back(s.invariant_factors[i]);
      }
    for (int i = s.rank; i < k; ++i) free_rows.push_back(i);
    H.betti = static_cast<long>(free_rows.size());
    H.proj_free = rows_select(s.U, free_rows);
    H.proj_tor = rows_select(s.U, tor_rows);
    H.cycle_reps = K * s.Uinv.columns(free_rows);
    H.torsion_reps = K * s.Uinv.columns(tor_rows);
  } else {
    auto rr = rref(Y->transpose(), C.ring);
    std::vector<bool> is_piv(k, false);
    for (int p : rr.pivot_cols) is_piv[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < k; ++j)
      if (!is_piv[j]) free_cols.push_back(j);
    H.betti = static_cast<long>(free_cols.size());
    H.proj_free = SMat(static_cast<int>(free_cols.size()), k);
    for (size_t rix = 0; rix < free_cols.size(); ++rix) {
      int j = free_cols[rix];
      H.proj_free.set(static_cast<int>(rix), j, 1);
      for (int i = 0; i < rr.rank; ++i) {
        mpq_class v = rr.R.at(i, j);
        if (v != 0) H.proj_free.set(static_cast<int>(rix), rr.pivot_cols[i], C.ring.sub(0, v));
      }
    }
    H.proj_tor = SMat::zero(0, k);
    H.cycle_reps = K.columns(free_cols);
    H.torsion_reps = SMat::zero(C.dim(n), 0);
  }
  // the chosen representatives must read back as the standard basis
  for (int i = 0; i < H.betti; ++i) {
    auto coords = H.class_coords(H.cycle_reps.column(i));
    for (long j = 0; j < H.betti; ++j)
      require_property(coords[j] == (j == i ? 1 : 0), "homology basis does not read back");
  }
  return H;
}

std::vector<mpq_class> HomologyBasis::class_coords(const std::vector<mpq_class>& cycle) const {
  auto x = ksolve->solve(cycle);
  require_property(x.has_value(), "class_coords input is not a cycle");
  auto out = proj_free.apply(*x);
  for (auto& v : out) v = ring.normalize(v);
  return out;
}

std::vector<mpz_class> HomologyBasis::torsion_coords(const std::vector<mpq_class>& cycle) const {
  auto x = ksolve->solve(cycle);
  require_property(x.has_value(), "torsion_coords input is not a cycle");
  auto t = proj_tor.apply(*x);
  std::vector<mpz_class> out(t.size());
  for (size_t i = 0; i < t.size(); ++i) {
    mpz_class v = t[i].get_num() % torsion[i];
    if (v < 0) v += torsion[i];
    out[i] = v;
  }
  return out;
}

bool HomologyBasis::is_boundary(const std::vector<mpq_class>& cycle) const {
  for (auto& v : class_coords(cycle))
    if (v != 0) return false;
  for (auto& v : torsion_coords(cycle))
    if (v != 0) return false;
  return true;
}

SMat ChainMap::at(int n) const {
  auto it = f.find(n);
  if (it != f.end()) return it->second;
  return SMat::zero(tgt->dim(n), src->dim(n));
}

ChainMap make_chain_map(std::shared_ptr<const ChainComplex> src,
                        std::shared_ptr<const ChainComplex> tgt, std::map<int, SMat> f) {
  require(src && tgt, "chain map needs both endpoints");
  require(src->ring == tgt->ring, "chain map endpoints over different rings");
  ChainMap m;
  m.src = src;
  m.tgt = tgt;
  const Ring& ring = src->ring;
  for (auto& [n, M] : f) {
    require(M.nr == tgt->dim(n) && M.nc == src->dim(n),
            cat("chain map component in degree ", n, " has shape ", M.nr, "x", M.nc,
                ", expected ", tgt->dim(n), "x", src->dim(n)));
    SMat N = normalized(M, ring);
    if (!N.is_zero()) m.f[n] = std::move(N);
  }
  int from = std::min(src->lo(), tgt->lo());
  int to = std::max(src->hi(), tgt->hi());
  for (int n = from; n <= to; ++n) {
    SMat lhs = tgt->boundary(n) * m.at(n);
    SMat rhs = m.at(n - 1) * src->boundary(n);
    require(equal_in(lhs, rhs, ring), cat("chain map does not commute with d in degree ", n));
  }
  if (!src->weights.empty() && !tgt->weights.empty()) {
    for (auto& [n, M] : m.f) {
      if (!src->weights.count(n) || !tgt->weights.count(n)) continue;
      auto& wsrc = src->weights.at(n);
      auto& wtgt = tgt->weights.at(n);
      for (int i = 0; i < M.nr; ++i)
        for (auto& [j, v] : M.row[i]) {
          (void)v;
          require(wtgt[i] == wsrc[j],
                  cat("chain map in degree ", n, " moves weight ", wsrc[j], " to ", wtgt[i]));
        }
    }
  }
  return m;
}

ChainMap identity_map(std::shared_ptr<const ChainComplex> C) {
  std::map<int, SMat> f;
  for (auto& [n, r] : C->dims) f[n] = SMat::identity(r);
  return make_chain_map(C, C, std::move(f));
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  require(g.src == f.tgt || (g.src->ring == f.tgt->ring && g.src->dims == f.tgt->dims &&
                             g.src->diff == f.tgt->diff),
          "chain map composition endpoints do not match");
  std::map<int, SMat> h;
  int from = std::min(f.src->lo(), g.tgt->lo());
  int to = std::max(f.src->hi(), g.tgt->hi());
  for (int n = from; n <= to; ++n) {
    SMat M = g.at(n) * f.at(n);
    if (!M.is_zero()) h[n] = M;
  }
  return make_chain_map(f.src, g.tgt, std::move(h));
}

SMat induced_map(const ChainMap& f, int n) {
  auto hs = homology_basis(*f.src, n);
  auto ht = homology_basis(*f.tgt, n);
  SMat A(static_cast<int>(ht.betti), static_cast<int>(hs.betti));
  SMat fn = f.at(n);
  for (long i = 0; i < hs.betti; ++i)
    A.set_column(static_cast<int>(i), ht.class_coords(fn.apply(hs.cycle_reps.column(static_cast<int>(i)))));
  return A;
}

MappingFiber mapping_fiber(const ChainMap& fmap) {
  const ChainComplex& A = *fmap.src;
  const ChainComplex& B = *fmap.tgt;
  MappingFiber out;
  out.A = fmap.src;
  out.B = fmap.tgt;
  out.fmap = fmap;
  std::map<int, int> dims;
  for (auto& [n, r] : A.dims) dims[n] += r;
  for (auto& [n, r] : B.dims) dims[n - 1] += r;
  std::map<int, SMat> diff;
  for (auto& [n, r] : dims) {
    (void)r;
    if (!dims.count(n - 1)) continue;
    SMat D(A.dim(n - 1) + B.dim(n), A.dim(n) + B.dim(n + 1));
    D.insert_block(0, 0, A.boundary(n));
    D.insert_block(A.dim(n - 1), 0, fmap.at(n).scaled(-1));
    D.insert_block(A.dim(n - 1), A.dim(n), B.boundary(n + 1).scaled(-1));
    diff[n] = D;
  }
  std::map<int, std::vector<long>> ws;
  bool weighted = !A.weights.empty() && !B.weights.empty();
  for (auto& [n, r] : dims) {
    if (!weighted) break;
    if (r > 0 && ((A.dim(n) > 0 && !A.weights.count(n)) ||
                  (B.dim(n + 1) > 0 && !B.weights.count(n + 1))))
      weighted = false;
  }
  if (weighted) {
    for (auto& [n, r] : dims) {
      (void)r;
      std::vector<long> v;
      if (A.weights.count(n)) v = A.weights.at(n);
      v.resize(A.dim(n), 0);
      std::vector<long> vb;
      if (B.weights.count(n + 1)) vb = B.weights.at(n + 1);
      vb.resize(B.dim(n + 1), 0);
      v.insert(v.end(), vb.begin(), vb.end());
      ws[n] = v;
    }
  }
  out.fiber = std::make_shared<const ChainComplex>(make_complex(A.ring, dims, diff, ws));
  std::map<int, SMat> proj;
  for (auto& [n, r] : out.fiber->dims) {
    (void)r;
    SMat P(A.dim(n), out.fiber->dim(n));
    P.insert_block(0, 0, SMat::identity(A.dim(n)));
    proj[n] = P;
  }
  out.proj = make_chain_map(out.fiber, fmap.src, std::move(proj));
  return out;
}

SMat MappingFiber::include_b(int n) const {
  SMat I(fiber->dim(n), B->dim(n + 1));
  I.insert_block(A->dim(n), 0, SMat::identity(B->dim(n + 1)));
  return I;
}

namespace {

// matrix of a chain-level map between chosen homology bases
SMat matrix_on_homology(const SMat& M, const HomologyBasis& hs, const HomologyBasis& ht) {
  SMat A(static_cast<int>(ht.betti), static_cast<int>(hs.betti));
  for (long i = 0; i < hs.betti; ++i)
    A.set_column(static_cast<int>(i),
                 ht.class_coords(M.apply(hs.cycle_reps.column(static_cast<int>(i)))));
  return A;
}

}  // namespace

void verify_fiber_les(const MappingFiber& fib, int from, int to) {
  Ring field = fib.A->ring.is_field() ? fib.A->ring : Ring::QQ();
  ChainComplex FA = *fib.A, FB = *fib.B, FF = *fib.fiber;
  FA.ring = FB.ring = FF.ring = field;
  std::map<int, HomologyBasis> ha, hb, hf;
  for (int n = from - 1; n <= to + 1; ++n) {
    ha.emplace(n, homology_basis(FA, n));
    hb.emplace(n, homology_basis(FB, n));
    hf.emplace(n, homology_basis(FF, n));
  }
  auto rank = [&](const SMat& M) { return rank_of(M, field); };
  // induced families p: H_n(F) -> H_n(A), f: H_n(A) -> H_n(B),
  // delta: H_n(B) -> H_{n-1}(F) with delta[b] = [(0, b)]
  std::map<int, SMat> p, f, delta;
  for (int n = from - 1; n <= to + 1; ++n) {
    p[n] = matrix_on_homology(fib.proj.at(n), hf.at(n), ha.at(n));
    f[n] = matrix_on_homology(fib.fmap.at(n), ha.at(n), hb.at(n));
    if (n - 1 >= from - 1) delta[n] = matrix_on_homology(fib.include_b(n - 1), hb.at(n), hf.at(n - 1));
  }
  for (int n = from; n <= to; ++n) {
    // exact at H_n(A): im p = ker f
    require_property((f.at(n) * p.at(n)).is_zero(), cat("fiber sequence: f*p != 0 in degree ", n));
    require_property(rank(p.at(n)) + rank(f.at(n)) == ha.at(n).betti,
                     cat("fiber sequence not exact at H_", n, " of the base"));
    // exact at H_n(B): im f = ker delta
    require_property((delta.at(n) * f.at(n)).is_zero(),
                     cat("fiber sequence: delta*f != 0 in degree ", n));
    require_property(rank(f.at(n)) + rank(delta.at(n)) == hb.at(n).betti,
                     cat("fiber sequence not exact at H_", n, " of the target"));
    // exact at H_{n-1}(F): im delta = ker p
    require_property((p.at(n - 1) * delta.at(n)).is_zero(),
                     cat("fiber sequence: p*delta != 0 out of degree ", n));
    require_property(rank(delta.at(n)) + rank(p.at(n - 1)) == hf.at(n - 1).betti,
                     cat("fiber sequence not exact at H_", n - 1, " of the fiber"));
  }
}

void verify_euler(const ChainComplex& C) {
  Ring field = C.ring.is_field() ? C.ring : Ring::QQ();
  ChainComplex F = C;
  F.ring = field;
  mpz_class bsum = 0;
  for (int n = C.lo(); n <= C.hi(); ++n) {
    long b = F.homology(n).betti;
    bsum += (n % 2 == 0 ? b : -b);
  }
  require_property(bsum == C.euler_char(), "Euler characteristic does not match Betti numbers");
}

}  // namespace hodgehh
