#include "hodgehh/holim.hpp"

#include <algorithm>

#include "hodgehh/util.hpp"

namespace hodgehh {

std::optional<int> Poset::minimum() const {
  for (int m = 0; m < n; ++m) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = le(m, b);
    if (ok) return m;
  }
  return std::nullopt;
}

std::optional<int> Poset::maximum() const {
  for (int m = 0; m < n; ++m) {
    bool ok = true;
    for (int b = 0; b < n && ok; ++b) ok = le(b, m);
    if (ok) return m;
  }
  return std::nullopt;
}

std::vector<std::vector<int>> Poset::chains() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  // depth-first, extending with strictly larger elements in index order
  auto grow = [&](auto&& self, int last) -> void {
    out.push_back(cur);
    for (int next = 0; next < n; ++next) {
      if (!lt(last, next)) continue;
      cur.push_back(next);
      self(self, next);
      cur.pop_back();
    }
  };
  for (int start = 0; start < n; ++start) {
    cur = {start};
    grow(grow, start);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

Poset make_poset(int n, const std::vector<std::pair<int, int>>& le_pairs) {
  require(n >= 0, "poset size must be nonnegative");
  Poset P;
  P.n = n;
  P.leq.assign(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) P.leq[i][i] = true;
  for (auto& [a, b] : le_pairs) {
    require(a >= 0 && a < n && b >= 0 && b < n, "poset relation out of range");
    P.leq[a][b] = true;
  }
  for (int k = 0; k < n; ++k)  // transitive closure
    for (int i = 0; i < n; ++i)
      if (P.leq[i][k])
        for (int j = 0; j < n; ++j)
          if (P.leq[k][j]) P.leq[i][j] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      require(!(P.leq[i][j] && P.leq[j][i]), cat("poset relation has a cycle through ", i, " and ", j));
  return P;
}

Poset chain_poset(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.push_back({i, i + 1});
  return make_poset(n, rel);
}

Poset antichain_poset(int n) { return make_poset(n, {}); }

const ChainMap& PosetDiagram::res_at(int v, int w) const {
  auto it = res.find({v, w});
  require(it != res.end(), cat("diagram has no restriction ", v, " -> ", w));
  return it->second;
}

PosetDiagram make_diagram(Poset P, std::vector<std::shared_ptr<const ChainComplex>> value,
                          std::map<std::pair<int, int>, ChainMap> res) {
  require(static_cast<int>(value.size()) == P.n, "diagram needs one complex per element");
  for (auto& v : value) require(v != nullptr, "diagram value missing");
  PosetDiagram D;
  D.P = P;
  D.value = std::move(value);
  D.res = std::move(res);
  for (int v = 0; v < P.n; ++v)
    for (int w = 0; w < P.n; ++w) {
      if (!P.lt(v, w)) {
        require(!D.res.count({v, w}), cat("restriction ", v, " -> ", w, " not along the order"));
        continue;
      }
      auto& m = D.res_at(v, w);
      require(m.src == D.value[v] && m.tgt == D.value[w],
              cat("restriction ", v, " -> ", w, " endpoints do not match the diagram"));
    }
  for (int v = 0; v < P.n; ++v)
    for (int w = 0; w < P.n; ++w)
      for (int u = 0; u < P.n; ++u) {
        if (!(P.lt(v, w) && P.lt(w, u))) continue;
        auto lhs = compose(D.res_at(w, u), D.res_at(v, w));
        auto& rhs = D.res_at(v, u);
        for (int n = D.value[v]->lo(); n <= D.value[v]->hi(); ++n)
          require(equal_in(lhs.at(n), rhs.at(n), D.value[v]->ring),
                  cat("diagram does not commute on ", v, " < ", w, " < ", u, " in degree ", n));
      }
  return D;
}

PosetDiagram restrict_diagram(const PosetDiagram& D, const std::vector<int>& keep) {
  int m = static_cast<int>(keep.size());
  Poset Q;
  Q.n = m;
  Q.leq.assign(m, std::vector<bool>(m, false));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Q.leq[i][j] = D.P.le(keep[i], keep[j]);
  std::vector<std::shared_ptr<const ChainComplex>> vals(m);
  std::map<std::pair<int, int>, ChainMap> res;
  for (int i = 0; i < m; ++i) vals[i] = D.value[keep[i]];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (Q.leq[i][j] && i != j) res.emplace(std::make_pair(i, j), D.res_at(keep[i], keep[j]));
  return make_diagram(Q, vals, res);
}

int HolimResult::flag_index(const std::vector<int>& flag) const {
  auto it = std::find(flags.begin(), flags.end(), flag);
  require(it != flags.end(), "no such flag in the limit layout");
  return static_cast<int>(it - flags.begin());
}

int HolimResult::offset(int flag_id, int q) const {
  auto it = block_start.find({flag_id, q});
  if (it == block_start.end())
    require(false, cat("no block for flag ", flag_id, " in inner degree ", q));
  return it->second;
}

HolimResult poset_holim(const PosetDiagram& D) {
  require(D.P.n > 0, "limit over the empty poset is not supported");
  const Ring ring = D.value[0]->ring;
  for (auto& v : D.value) require(v->ring == ring, "diagram values over different rings");

  HolimResult H;
  H.diagram = D;
  H.flags = D.P.chains();

  // lay out blocks: flag f (s = |f|-1) contributes D(last)_q to degree q - s
  std::map<int, int> dims;
  for (size_t fid = 0; fid < H.flags.size(); ++fid) {
    int s = static_cast<int>(H.flags[fid].size()) - 1;
    const auto& C = *D.value[H.flags[fid].back()];
    for (auto& [q, r] : C.dims) {
      if (r == 0) continue;
      int t = q - s;
      H.block_start[{static_cast<int>(fid), q}] = dims[t];
      dims[t] += r;
    }
  }
  long long total_rank = 0;
  for (auto& [t, r] : dims) total_rank += r;
  charge_budget(48 * total_rank, "limit total complex");

  std::map<int, SMat> diff;
  for (auto& [t, r] : dims) {
    (void)r;
    if (!dims.count(t - 1)) continue;
    diff[t] = SMat::zero(dims.at(t - 1), dims.at(t));
  }
  auto place = [&](int t, int row0, int col0, const SMat& B, int sign) {
    if (B.is_zero()) return;
    auto it = diff.find(t);
    require(it != diff.end(), "block landed outside the layout");
    it->second.insert_block(row0, col0, sign > 0 ? B : B.scaled(-1));
  };

  for (size_t fid = 0; fid < H.flags.size(); ++fid) {
    const auto& f = H.flags[fid];
    int s = static_cast<int>(f.size()) - 1;
    const auto& C = *D.value[f.back()];
    for (auto& [q, r] : C.dims) {
      if (r == 0) continue;
      int t = q - s;
      // inner differential, sign +1
      if (C.dim(q - 1) > 0) {
        SMat b = C.boundary(q);
        if (!b.is_zero())
          place(t, H.offset(static_cast<int>(fid), q - 1), H.offset(static_cast<int>(fid), q), b, 1);
      }
      // flag coboundary, overall sign (-1)^q: insert an element into f
      int qsign = (q % 2 == 0) ? 1 : -1;
      for (int e = 0; e < D.P.n; ++e) {
        // insertion keeping the chain strict and ascending
        for (int pos = 0; pos <= s + 1; ++pos) {
          bool ok = (pos == 0 || D.P.lt(f[pos - 1], e)) && (pos == s + 1 || D.P.lt(e, f[pos]));
          if (!ok) continue;
          std::vector<int> g = f;
          g.insert(g.begin() + pos, e);
          int gid = H.flag_index(g);
          int isign = (pos % 2 == 0) ? 1 : -1;
          if (pos <= s) {
            // omission of e recovers f; last element unchanged
            if (!H.block_start.count({gid, q})) continue;
            place(t, H.offset(gid, q), H.offset(static_cast<int>(fid), q),
                  SMat::identity(C.dim(q)), qsign * isign);
          } else {
            // e sits on top: restriction off the old top, sign (-1)^{s+1}
            SMat rm = D.res_at(f.back(), e).at(q);
            if (rm.is_zero() || !H.block_start.count({gid, q})) continue;
            place(t, H.offset(gid, q), H.offset(static_cast<int>(fid), q), rm, qsign * isign);
          }
        }
      }
    }
  }
  H.total = std::make_shared<const ChainComplex>(make_complex(ring, dims, diff));
  return H;
}

ChainMap holim_cone(const HolimResult& H, std::shared_ptr<const ChainComplex> C,
                    const std::map<int, ChainMap>& legs) {
  const PosetDiagram& D = H.diagram;
  for (int v = 0; v < D.P.n; ++v) {
    require(legs.count(v), cat("cone is missing the leg at ", v));
    auto& g = legs.at(v);
    require(g.src == C && g.tgt == D.value[v], cat("cone leg at ", v, " has wrong endpoints"));
  }
  for (int v = 0; v < D.P.n; ++v)
    for (int w = 0; w < D.P.n; ++w) {
      if (!D.P.lt(v, w)) continue;
      auto lhs = compose(D.res_at(v, w), legs.at(v));
      for (int n = C->lo(); n <= C->hi(); ++n)
        require(equal_in(lhs.at(n), legs.at(w).at(n), C->ring),
                cat("cone legs do not commute with the restriction ", v, " -> ", w));
    }
  std::map<int, SMat> f;
  for (auto& [t, r] : H.total->dims) f[t] = SMat::zero(r, C->dim(t));
  for (size_t fid = 0; fid < H.flags.size(); ++fid) {
    if (H.flags[fid].size() != 1) continue;
    int v = H.flags[fid][0];
    for (auto& [q, r] : D.value[v]->dims) {
      if (r == 0 || C->dim(q) == 0) continue;
      SMat blk = legs.at(v).at(q);
      if (blk.is_zero()) continue;
      f.at(q).insert_block(H.offset(static_cast<int>(fid), q), 0, blk);
    }
  }
  return make_chain_map(C, H.total, std::move(f));
}

ChainMap holim_restrict_map(const HolimResult& big, const HolimResult& small,
                            const std::vector<int>& inj) {
  require(static_cast<int>(inj.size()) == small.diagram.P.n,
          "injection must cover the small poset");
  std::map<int, SMat> f;
  for (auto& [t, r] : small.total->dims) f[t] = SMat::zero(r, big.total->dim(t));
  for (size_t fid = 0; fid < small.flags.size(); ++fid) {
    std::vector<int> bf;
    for (int v : small.flags[fid]) bf.push_back(inj[v]);
    int bid = big.flag_index(bf);
    const auto& C = *small.diagram.value[small.flags[fid].back()];
    for (auto& [q, r] : C.dims) {
      if (r == 0) continue;
      int t = q - (static_cast<int>(small.flags[fid].size()) - 1);
      f.at(t).insert_block(small.offset(static_cast<int>(fid), q), big.offset(bid, q),
                           SMat::identity(r));
    }
  }
  return make_chain_map(big.total, small.total, std::move(f));
}

ChainMap holim_transport(const HolimResult& src, const HolimResult& dst,
                         const std::vector<int>& phi, const std::map<int, ChainMap>& g) {
  const Poset& P = src.diagram.P;
  const Poset& Q = dst.diagram.P;
  require(static_cast<int>(phi.size()) == P.n && Q.n == P.n, "transport needs a poset bijection");
  for (int a = 0; a < P.n; ++a)
    for (int b = 0; b < P.n; ++b)
      require(P.le(a, b) == Q.le(phi[a], phi[b]), "transport map is not order preserving");
  std::map<int, SMat> f;
  for (auto& [t, r] : dst.total->dims) f[t] = SMat::zero(r, src.total->dim(t));
  for (size_t fid = 0; fid < src.flags.size(); ++fid) {
    const auto& sf = src.flags[fid];
    std::vector<int> df;
    for (int v : sf) df.push_back(phi[v]);
    int did = dst.flag_index(df);
    require(g.count(sf.back()), cat("transport is missing the value map at ", sf.back()));
    auto& gv = g.at(sf.back());
    require(gv.src == src.diagram.value[sf.back()] && gv.tgt == dst.diagram.value[df.back()],
            "transport value map has wrong endpoints");
    for (auto& [q, r] : src.diagram.value[sf.back()]->dims) {
      if (r == 0) continue;
      int t = q - (static_cast<int>(sf.size()) - 1);
      SMat blk = gv.at(q);
      if (blk.is_zero()) continue;
      f.at(t).insert_block(dst.offset(did, q), src.offset(static_cast<int>(fid), q), blk);
    }
  }
  return make_chain_map(src.total, dst.total, std::move(f));
}

void verify_holim_collapse(const HolimResult& H, int from, int to) {
  auto m = H.diagram.P.minimum();
  require(m.has_value(), "collapse check needs a minimum element");
  const ChainComplex& V = *H.diagram.value[*m];
  for (int n = from; n <= to; ++n) {
    bool vr = V.in_range(n), tr = H.total->in_range(n);
    HomologyRecord hv = vr ? V.homology(n) : HomologyRecord{n, 0, {}, std::nullopt};
    HomologyRecord ht = tr ? H.total->homology(n) : HomologyRecord{n, 0, {}, std::nullopt};
    require_property(hv.betti == ht.betti && hv.torsion == ht.torsion,
                     cat("limit does not collapse to the minimum in degree ", n));
  }
}

}  // namespace hodgehh
