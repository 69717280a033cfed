#include <algorithm>
#include <functional>

#include "hodgehh/loday.hpp"

namespace hodgehh {

namespace {

bool is_circle_model(const SimplicialSet& S) {
  if (S.ngen.size() < 2 || S.ngen[0] != 1 || S.ngen[1] != 1) return false;
  for (size_t m = 2; m < S.ngen.size(); ++m)
    if (S.ngen[m] != 0) return false;
  SimplexRef pt{0, {}, 0};
  return S.face_of[1][0][0] == pt && S.face_of[1][0][1] == pt;
}

// position of the nondegenerate edge of a circle q-simplex over the 1-generator:
// the simplex is a monotone surjection [q] -> [1], the edge sits where it jumps
int jump_of(const SimplexRef& x, int q) {
  auto v = word_to_map(x.word, q);
  for (int i = 0; i <= q; ++i)
    if (v[i] == 1) return i;
  return -1;
}

// tensor coordinates in degree q: every q-simplex, the basepoint one removed
// when a module sits on it, circle coordinates in the classical cyclic order
std::vector<SimplexRef> coords_at(const SimplicialSet& S, int q, bool circle, bool module) {
  auto all = S.all_simplices(q);
  if (circle) {
    std::vector<SimplexRef> out(q + 1);
    for (const auto& x : all)
      out[static_cast<int>(x.word.size()) == q ? 0 : jump_of(x, q)] = x;
    if (module) out.erase(out.begin());
    return out;
  }
  if (module) {
    std::vector<SimplexRef> out;
    int dropped = 0;
    for (const auto& x : all) {
      if (S.over_basepoint(x)) {
        ++dropped;
        continue;
      }
      out.push_back(x);
    }
    require(dropped == 1, "reduced simplicial set must have one simplex over the basepoint");
    return out;
  }
  return all;
}

struct DegreeData {
  std::vector<SimplexRef> cs;
  std::map<SimplexRef, int> pos;          // index in cs, basepoint simplex absent
  std::vector<std::vector<char>> in_im;   // [i][y]: cs[y] lies in the image of s_i
};

LodayComplex build_loday(std::shared_ptr<const AugAlgebra> R, std::shared_ptr<const AlgModule> M,
                         std::shared_ptr<const SimplicialSet> X, int N) {
  require(R != nullptr && X != nullptr, "null input");
  require(N >= 0, "negative degree bound");
  require(X->N >= N + 1, cat("simplicial set truncated at ", X->N, ", need at least ", N + 1));
  if (M) require(X->reduced(), "coefficients need a reduced simplicial set");
  const AugAlgebra& A = *R;
  bool module = M != nullptr;

  LodayComplex L;
  L.R = R;
  L.M = M;
  L.X = X;
  L.N = N;
  L.circle = is_circle_model(*X);

  int top = N + 1;
  std::vector<DegreeData> D(top + 1);
  for (int q = 0; q <= top; ++q) {
    D[q].cs = coords_at(*X, q, L.circle, module);
    for (size_t y = 0; y < D[q].cs.size(); ++y) D[q].pos[D[q].cs[y]] = static_cast<int>(y);
    D[q].in_im.assign(q, {});
    for (int i = 0; i < q; ++i) {
      D[q].in_im[i].resize(D[q].cs.size());
      for (size_t y = 0; y < D[q].cs.size(); ++y) {
        const SimplexRef& x = D[q].cs[y];
        D[q].in_im[i][y] = X->degen(X->face(x, i + 1), i) == x;
      }
    }
  }

  int B = A.dim();
  int nm = module ? M->dim() : 1;
  std::map<int, int> dims;
  std::map<int, SMat> diff;
  std::map<int, std::vector<long>> weights;
  std::map<int, std::vector<std::string>> labels;
  L.coords.resize(top + 1);
  L.basis.resize(top + 1);
  L.lookup.resize(top + 1);

  for (int q = 0; q <= top; ++q) {
    L.coords[q] = D[q].cs;
    weights[q];
    labels[q];
    int c = static_cast<int>(D[q].cs.size());
    // a tensor is degenerate when its support lies in the image of one s_i
    auto degenerate = [&](const std::vector<int>& entry) {
      for (int i = 0; i < q; ++i) {
        bool covered = true;
        for (int y = 0; y < c && covered; ++y)
          if (entry[y] != 0 && !D[q].in_im[i][y]) covered = false;
        if (covered) return true;
      }
      return false;
    };
    std::vector<int> entry(c, 0);
    std::function<void(int, int, int, const std::function<void(int)>&)> walk =
        [&](int pos, int wleft, int ms, const std::function<void(int)>& sink) {
          if (pos == c) {
            if (!degenerate(entry)) sink(ms);
            return;
          }
          for (int v = 0; v < B; ++v) {
            if (A.weight[v] > wleft) continue;
            entry[pos] = v;
            walk(pos + 1, wleft - A.weight[v], ms, sink);
          }
          entry[pos] = 0;
        };
    long count = 0;
    std::function<void(int)> counter = [&](int) { ++count; };
    for (int ms = 0; ms < nm; ++ms) {
      int mw = module ? M->weight[ms] : 0;
      if (mw <= A.W) walk(0, A.W - mw, module ? ms : -1, counter);
    }
    charge_budget(count * (c * 4 + 64), "loday complex basis");

    std::function<void(int)> store = [&](int ms) {
      TensorLabel t;
      t.entry = entry;
      t.mslot = ms;
      t.weight = module ? M->weight[ms] : 0;
      t.tag = 0;
      std::string lab = module ? M->name[ms] + (c ? ";" : "") : "";
      for (int y = 0; y < c; ++y) {
        t.weight += A.weight[entry[y]];
        if (entry[y] != 0) ++t.tag;
        lab += (y ? "|" : "") + A.name[entry[y]];
      }
      std::vector<int> key = entry;
      if (module) key.push_back(ms);
      L.lookup[q][key] = static_cast<int>(L.basis[q].size());
      L.basis[q].push_back(std::move(t));
      weights[q].push_back(L.basis[q].back().weight);
      labels[q].push_back(lab.empty() ? "()" : lab);
    };
    for (int ms = 0; ms < nm; ++ms) {
      int mw = module ? M->weight[ms] : 0;
      if (mw <= A.W) walk(0, A.W - mw, module ? ms : -1, store);
    }
    dims[q] = static_cast<int>(L.basis[q].size());
  }

  for (int q = 1; q <= top; ++q) {
    int c = static_cast<int>(D[q].cs.size());
    int ct = static_cast<int>(D[q - 1].cs.size());
    // face maps as coordinate maps; -1 routes the factor into the module slot
    std::vector<std::vector<int>> fmap(q + 1, std::vector<int>(c));
    for (int i = 0; i <= q; ++i)
      for (int y = 0; y < c; ++y) {
        SimplexRef fx = X->face(D[q].cs[y], i);
        auto it = D[q - 1].pos.find(fx);
        if (it == D[q - 1].pos.end()) {
          require(module && X->over_basepoint(fx), "face left the coordinate set");
          fmap[i][y] = -1;
        } else {
          fmap[i][y] = it->second;
        }
      }

    SMat d(dims.at(q - 1), dims.at(q));
    for (int col = 0; col < dims.at(q); ++col) {
      const TensorLabel& t = L.basis[q][col];
      for (int i = 0; i <= q; ++i) {
        mpq_class sign = (i % 2) ? -1 : 1;
        std::vector<AlgElt> prod(ct, AlgElt{{0, 1}});
        AlgElt mfac;
        if (module) mfac = AlgElt{{t.mslot, 1}};
        AlgElt basep{{0, 1}};
        bool dead = false;
        for (int y = 0; y < c; ++y) {
          int tgt = fmap[i][y];
          if (tgt < 0)
            basep = A.multiply(basep, AlgElt{{t.entry[y], 1}});
          else
            prod[tgt] = A.multiply(prod[tgt], AlgElt{{t.entry[y], 1}});
        }
        if (module) mfac = M->act_on(basep, mfac, A);
        for (int y = 0; y < ct && !dead; ++y) dead = prod[y].empty();
        if (module && mfac.empty()) dead = true;
        if (dead) continue;
        // expand the tensor of fiber products over the target basis
        std::vector<AlgElt::const_iterator> pick(ct);
        for (int y = 0; y < ct; ++y) pick[y] = prod[y].begin();
        std::vector<AlgElt::const_iterator> mpick;
        for (auto mit = (module ? mfac.begin() : mfac.end());; ) {
          std::vector<int> key(ct);
          mpq_class cf = sign;
          for (int y = 0; y < ct; ++y) {
            key[y] = pick[y]->first;
            cf = A.ring.mul(cf, pick[y]->second);
          }
          if (module) {
            cf = A.ring.mul(cf, mit->second);
            key.push_back(mit->first);
          }
          auto it = L.lookup[q - 1].find(key);
          if (it != L.lookup[q - 1].end()) d.add_to(it->second, col, cf);
          int y = 0;
          while (y < ct && ++pick[y] == prod[y].end()) {
            pick[y] = prod[y].begin();
            ++y;
          }
          if (y < ct) continue;
          if (module && ++mit != mfac.end()) continue;
          break;
        }
      }
    }
    diff[q] = std::move(d);
  }

  L.C = std::make_shared<const ChainComplex>(
      make_complex(A.ring, std::move(dims), std::move(diff), std::move(weights),
                   std::move(labels)));
  return L;
}

}  // namespace

int LodayComplex::index_of(int q, const std::vector<int>& entry, int mslot) const {
  if (q < 0 || q >= static_cast<int>(lookup.size())) return -1;
  std::vector<int> key = entry;
  if (M) key.push_back(mslot);
  auto it = lookup[q].find(key);
  return it == lookup[q].end() ? -1 : it->second;
}

LodayComplex loday_complex(std::shared_ptr<const AugAlgebra> R,
                           std::shared_ptr<const SimplicialSet> X, int N) {
  return build_loday(std::move(R), nullptr, std::move(X), N);
}

LodayComplex loday_with_coefficients(std::shared_ptr<const AugAlgebra> R,
                                     std::shared_ptr<const AlgModule> M,
                                     std::shared_ptr<const SimplicialSet> X, int N) {
  require(M != nullptr, "null module");
  return build_loday(std::move(R), std::move(M), std::move(X), N);
}

namespace {

// the piece of L.C spanned by the picked basis indices, differential entries
// outside the span dropped
ChainComplex picked_complex(const LodayComplex& L, const std::vector<std::vector<int>>& pick) {
  std::map<int, int> dims;
  std::map<int, SMat> diff;
  std::map<int, std::vector<long>> weights;
  std::map<int, std::vector<std::string>> labels;
  int top = L.N + 1;
  std::vector<std::vector<int>> pos(top + 1);
  for (int q = 0; q <= top; ++q) {
    dims[q] = static_cast<int>(pick[q].size());
    weights[q];
    labels[q];
    pos[q].assign(L.C->dim(q), -1);
    for (size_t t = 0; t < pick[q].size(); ++t) {
      pos[q][pick[q][t]] = static_cast<int>(t);
      weights[q].push_back(L.basis[q][pick[q][t]].weight);
      labels[q].push_back(L.C->labels.at(q)[pick[q][t]]);
    }
  }
  for (int q = 1; q <= top; ++q) {
    SMat full = L.C->boundary(q);
    SMat d(dims.at(q - 1), dims.at(q));
    for (int r = 0; r < full.nr; ++r) {
      if (pos[q - 1][r] < 0) continue;
      for (const auto& [cidx, v] : full.row[r])
        if (pos[q][cidx] >= 0) d.set(pos[q - 1][r], pos[q][cidx], v);
    }
    diff[q] = std::move(d);
  }
  return make_complex(L.C->ring, std::move(dims), std::move(diff), std::move(weights),
                      std::move(labels));
}

std::vector<std::vector<int>> pick_by_tag(const LodayComplex& L,
                                          const std::function<bool(int)>& keep) {
  std::vector<std::vector<int>> pick(L.N + 2);
  for (int q = 0; q <= L.N + 1; ++q)
    for (size_t t = 0; t < L.basis[q].size(); ++t)
      if (keep(L.basis[q][t].tag)) pick[q].push_back(static_cast<int>(t));
  return pick;
}

}  // namespace

FiltrationPiece weight_filtration(const LodayComplex& L, int n) {
  require(n >= 0, "filtration level must be nonnegative");
  FiltrationPiece P;
  P.level = n;
  P.of = L.C;
  P.pick = pick_by_tag(L, [&](int tag) { return tag <= n; });
  P.F = std::make_shared<const ChainComplex>(picked_complex(L, P.pick));
  std::map<int, SMat> f;
  for (int q = 0; q <= L.N + 1; ++q) {
    SMat m(L.C->dim(q), P.F->dim(q));
    for (size_t t = 0; t < P.pick[q].size(); ++t) m.set(P.pick[q][t], static_cast<int>(t), 1);
    f[q] = std::move(m);
  }
  // a subcomplex precisely when this inclusion is a chain map: any boundary
  // entry escaping the span would break the commutation check
  P.incl = make_chain_map(P.F, L.C, std::move(f));
  return P;
}

ChainMap filtration_step(const FiltrationPiece& inner, const FiltrationPiece& outer) {
  require(inner.of == outer.of, "pieces of different complexes");
  require(inner.level <= outer.level, "filtration step must go up");
  std::map<int, SMat> f;
  for (size_t q = 0; q < inner.pick.size(); ++q) {
    std::vector<int> pos(inner.of->dim(static_cast<int>(q)), -1);
    for (size_t t = 0; t < outer.pick[q].size(); ++t) pos[outer.pick[q][t]] = static_cast<int>(t);
    SMat m(outer.F->dim(static_cast<int>(q)), inner.F->dim(static_cast<int>(q)));
    for (size_t t = 0; t < inner.pick[q].size(); ++t) {
      int p = pos[inner.pick[q][t]];
      require(p >= 0, "inner piece not contained in the outer piece");
      m.set(p, static_cast<int>(t), 1);
    }
    f[static_cast<int>(q)] = std::move(m);
  }
  return make_chain_map(inner.F, outer.F, std::move(f));
}

ChainComplex weight_layer(const LodayComplex& L, int n) {
  require(n >= 0, "layer level must be nonnegative");
  return picked_complex(L, pick_by_tag(L, [&](int tag) { return tag == n; }));
}

ChainComplex filtration_quotient(const LodayComplex& L, int n) {
  require(n >= 0, "quotient level must be nonnegative");
  return picked_complex(L, pick_by_tag(L, [&](int tag) { return tag > n; }));
}

SMat shuffle_matrix(const LodayComplex& L, int p, int q) {
  require(L.circle && !L.M, "shuffle product needs the circle complex without coefficients");
  require(p >= 0 && q >= 0 && p + q <= L.N + 1, "shuffle degrees out of range");
  const AugAlgebra& A = *L.R;
  int na = L.C->dim(p), nb = L.C->dim(q), nt = L.C->dim(p + q);
  SMat out(nt, na * nb);
  std::vector<int> sel(p);
  for (int i = 0; i < p; ++i) sel[i] = i;
  std::vector<std::pair<std::vector<int>, int>> shuffles;  // middle positions of a, sign
  while (true) {
    int inv = 0;
    for (int i = 0; i < p; ++i) inv += sel[i] - i;
    shuffles.push_back({sel, inv % 2 ? -1 : 1});
    int i = p - 1;
    while (i >= 0 && sel[i] == q + i) --i;
    if (i < 0) break;
    ++sel[i];
    for (int j = i + 1; j < p; ++j) sel[j] = sel[j - 1] + 1;
  }
  std::vector<int> key(p + q + 1);
  for (int ia = 0; ia < na; ++ia) {
    const TensorLabel& ta = L.basis[p][ia];
    for (int ib = 0; ib < nb; ++ib) {
      const TensorLabel& tb = L.basis[q][ib];
      const AlgElt& head = A.mul[ta.entry[0]][tb.entry[0]];
      if (head.empty()) continue;
      for (const auto& [positions, sg] : shuffles) {
        std::vector<char> is_a(p + q, 0);
        for (int pos : positions) is_a[pos] = 1;
        int na_used = 0, nb_used = 0;
        for (int t = 0; t < p + q; ++t)
          key[t + 1] = is_a[t] ? ta.entry[1 + na_used++] : tb.entry[1 + nb_used++];
        for (const auto& [k0, c0] : head) {
          key[0] = k0;
          auto it = L.lookup[p + q].find(key);
          if (it != L.lookup[p + q].end())
            out.add_to(it->second, ia * nb + ib, A.ring.mul(sg, c0));
        }
      }
    }
  }
  return out;
}

std::vector<mpq_class> shuffle_product(const LodayComplex& L, int p,
                                       const std::vector<mpq_class>& a, int q,
                                       const std::vector<mpq_class>& b) {
  int na = L.C->dim(p), nb = L.C->dim(q);
  require(static_cast<int>(a.size()) == na && static_cast<int>(b.size()) == nb,
          "chain sizes do not match the complex");
  std::vector<mpq_class> ab(static_cast<size_t>(na) * nb);
  for (int ia = 0; ia < na; ++ia)
    for (int ib = 0; ib < nb; ++ib) ab[ia * nb + ib] = L.R->ring.mul(a[ia], b[ib]);
  return shuffle_matrix(L, p, q).apply(ab);
}

std::vector<HomologyRecord> homology_by_weight(const LodayComplex& L) {
  std::vector<HomologyRecord> out;
  for (long w : L.C->weight_values()) {
    ChainComplex B = L.C->weight_block(w);
    for (int q = 0; q <= L.N; ++q) {
      if (B.dim(q) == 0 && B.dim(q + 1) == 0) continue;
      HomologyRecord rec = B.homology(q);
      rec.weight = w;
      out.push_back(std::move(rec));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const HomologyRecord& a, const HomologyRecord& b) {
    return a.degree != b.degree ? a.degree < b.degree : *a.weight < *b.weight;
  });
  return out;
}

}  // namespace hodgehh
