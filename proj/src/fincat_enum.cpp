#include <algorithm>
#include <array>
#include <functional>
#include <numeric>

#include "hodgehh/fincat.hpp"

namespace hodgehh {

namespace {

// reorders morphisms by (source, target, identities first); the stored layout
// during the search keeps identities at the front instead
FinCat sort_spec_order(const FinCat& C) {
  int m = C.nmor();
  std::vector<bool> is_id(m, false);
  for (int o = 0; o < C.nobj; ++o) is_id[C.ident[o]] = true;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    auto ka = std::tuple(C.msrc[a], C.mtgt[a], !is_id[a]);
    auto kb = std::tuple(C.msrc[b], C.mtgt[b], !is_id[b]);
    return ka < kb;
  });
  std::vector<int> pos(m);
  for (int t = 0; t < m; ++t) pos[order[t]] = t;
  FinCat D;
  D.nobj = C.nobj;
  D.msrc.resize(m);
  D.mtgt.resize(m);
  D.ident.resize(C.nobj);
  D.comp.assign(m, std::vector<int>(m, -1));
  for (int f = 0; f < m; ++f) {
    D.msrc[pos[f]] = C.msrc[f];
    D.mtgt[pos[f]] = C.mtgt[f];
  }
  for (int o = 0; o < C.nobj; ++o) D.ident[o] = pos[C.ident[o]];
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (C.comp[g][f] >= 0) D.comp[pos[g]][pos[f]] = pos[C.comp[g][f]];
  D.validate();
  return D;
}

// partial associativity audit around a freshly placed entry comp[g][f] = v;
// -2 marks entries not yet decided
bool assoc_ok_after(const std::vector<std::vector<int>>& comp, const std::vector<int>& msrc,
                    const std::vector<int>& mtgt, int g, int f) {
  int m = static_cast<int>(msrc.size());
  int v = comp[g][f];
  for (int h = 0; h < m; ++h) {
    if (msrc[h] != mtgt[g]) continue;
    int w = comp[h][g];
    if (w < 0) continue;
    int lhs = comp[w][f], rhs = comp[h][v];
    if (lhs >= 0 && rhs >= 0 && lhs != rhs) return false;
  }
  for (int e = 0; e < m; ++e) {
    if (mtgt[e] != msrc[f]) continue;
    int w = comp[f][e];
    if (w < 0) continue;
    int lhs = comp[v][e], rhs = comp[g][w];
    if (lhs >= 0 && rhs >= 0 && lhs != rhs) return false;
  }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      if (msrc[a] != mtgt[b]) continue;
      int w = comp[a][b];
      if (w == g && mtgt[f] == msrc[b]) {
        int inner = comp[b][f];
        if (inner >= 0) {
          int rhs = comp[a][inner];
          if (rhs >= 0 && rhs != v) return false;
        }
      }
      if (w == f && msrc[g] == mtgt[a]) {
        int outer = comp[g][a];
        if (outer >= 0) {
          int lhs = comp[outer][b];
          if (lhs >= 0 && lhs != v) return false;
        }
      }
    }
  return true;
}

// lexicographic minimality of the identities-first encoding over all
// relabelings that keep identities in front and non-identities endpoint-sorted
bool is_canonical_idsfirst(const FinCat& C) {
  int n = C.nobj, m = C.nmor(), k = m - n;
  std::vector<int> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  std::vector<int> rho(m), rhoinv(m);
  do {
    std::vector<std::array<int, 3>> key(k);
    for (int t = 0; t < k; ++t)
      key[t] = {pi[C.msrc[n + t]], pi[C.mtgt[n + t]], n + t};
    std::sort(key.begin(), key.end());
    int cmp = 0;
    for (int t = 0; t < k && cmp == 0; ++t) {
      if (key[t][0] != C.msrc[n + t])
        cmp = key[t][0] < C.msrc[n + t] ? -1 : 1;
      else if (key[t][1] != C.mtgt[n + t])
        cmp = key[t][1] < C.mtgt[n + t] ? -1 : 1;
    }
    if (cmp < 0) return false;
    if (cmp > 0) continue;
    // endpoint sequences tie; try every ordering inside equal-endpoint runs
    std::vector<std::pair<int, int>> runs;
    for (int t = 0; t < k;) {
      int s = t;
      while (t < k && key[t][0] == key[s][0] && key[t][1] == key[s][1]) ++t;
      runs.push_back({s, t - s});
    }
    for (;;) {
      for (int o = 0; o < n; ++o) rho[o] = pi[o];
      for (int t = 0; t < k; ++t) rho[key[t][2]] = n + t;
      for (int x = 0; x < m; ++x) rhoinv[rho[x]] = x;
      int c2 = 0;
      for (int g = 0; g < m && c2 == 0; ++g)
        for (int f = 0; f < m && c2 == 0; ++f) {
          if (C.comp[g][f] < 0) continue;  // composability pattern matches on a tie
          int cand = rho[C.comp[rhoinv[g]][rhoinv[f]]];
          if (cand != C.comp[g][f]) c2 = cand < C.comp[g][f] ? -1 : 1;
        }
      if (c2 < 0) return false;
      int r = static_cast<int>(runs.size()) - 1;
      while (r >= 0 &&
             !std::next_permutation(key.begin() + runs[r].first,
                                    key.begin() + runs[r].first + runs[r].second))
        --r;
      if (r < 0) break;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));
  return true;
}

}  // namespace

std::vector<FinCat> enumerate_categories(int max_obj, int max_mor) {
  require(max_obj >= 0 && max_mor >= 0, "negative corpus bounds");
  std::vector<FinCat> out;
  for (int nobj = 1; nobj <= max_obj; ++nobj) {
    for (int m = nobj; m <= max_mor; ++m) {
      int k = m - nobj;
      std::vector<int> msrc(m), mtgt(m), ident(nobj);
      for (int o = 0; o < nobj; ++o) {
        msrc[o] = mtgt[o] = o;
        ident[o] = o;
      }
      std::vector<std::pair<int, int>> pairs;
      for (int s = 0; s < nobj; ++s)
        for (int t = 0; t < nobj; ++t) pairs.push_back({s, t});
      // endpoint assignments for the non-identities, non-decreasing
      std::function<void(int, int)> pick = [&](int t, int from) {
        if (t == k) {
          std::vector<std::vector<int>> comp(m, std::vector<int>(m, -2));
          for (int g = 0; g < m; ++g)
            for (int f = 0; f < m; ++f)
              if (msrc[g] != mtgt[f]) comp[g][f] = -1;
          for (int f = 0; f < m; ++f) {
            comp[f][ident[msrc[f]]] = f;
            comp[ident[mtgt[f]]][f] = f;
          }
          std::vector<std::pair<int, int>> cells;
          for (int g = nobj; g < m; ++g)
            for (int f = nobj; f < m; ++f)
              if (msrc[g] == mtgt[f] && comp[g][f] == -2) cells.push_back({g, f});
          std::function<void(std::size_t)> fill = [&](std::size_t c) {
            if (c == cells.size()) {
              FinCat C;
              C.nobj = nobj;
              C.msrc = msrc;
              C.mtgt = mtgt;
              C.ident = ident;
              C.comp = comp;
              C.validate();
              if (is_canonical_idsfirst(C)) out.push_back(sort_spec_order(C));
              return;
            }
            auto [g, f] = cells[c];
            for (int v = 0; v < m; ++v) {
              if (msrc[v] != msrc[f] || mtgt[v] != mtgt[g]) continue;
              comp[g][f] = v;
              if (assoc_ok_after(comp, msrc, mtgt, g, f)) fill(c + 1);
            }
            comp[g][f] = -2;
          };
          fill(0);
          return;
        }
        for (int p = from; p < static_cast<int>(pairs.size()); ++p) {
          msrc[nobj + t] = pairs[p].first;
          mtgt[nobj + t] = pairs[p].second;
          pick(t + 1, p);
        }
      };
      pick(0, 0);
    }
  }
  return out;
}

// composable pairs grouped by participant, so a freshly assigned action only
// needs the checks it can newly complete
static std::vector<std::vector<std::array<int, 3>>> pairs_touching(const FinCat& I) {
  std::vector<std::vector<std::array<int, 3>>> touch(I.nmor());
  for (int g = 0; g < I.nmor(); ++g)
    for (int f = 0; f < I.nmor(); ++f) {
      if (!I.composable(g, f)) continue;
      int v = I.comp[g][f];
      touch[g].push_back({g, f, v});
      if (f != g) touch[f].push_back({g, f, v});
      if (v != g && v != f) touch[v].push_back({g, f, v});
    }
  return touch;
}

std::vector<SetFunctor> enumerate_set_functors(std::shared_ptr<const FinCat> C, int max_size,
                                               long cap) {
  require(C && max_size >= 0 && cap >= 0, "bad enumeration bounds");
  const FinCat& I = *C;
  std::vector<SetFunctor> out;
  std::vector<int> nonid;
  for (int f = 0; f < I.nmor(); ++f)
    if (f != I.ident[I.msrc[f]]) nonid.push_back(f);
  auto touch = pairs_touching(I);
  std::vector<int> size(I.nobj, 0);
  std::vector<std::vector<int>> act(I.nmor());
  std::vector<bool> have(I.nmor(), false);
  bool full = false;
  auto consistent_at = [&](int cur) {
    for (const auto& [g, f, v] : touch[cur]) {
      if (!have[g] || !have[f] || !have[v]) continue;
      for (int x = 0; x < size[I.msrc[f]]; ++x)
        if (act[v][x] != act[g][act[f][x]]) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> morstep = [&](std::size_t t) {
    if (full) return;
    if (t == nonid.size()) {
      out.push_back(make_set_functor(C, size, act));
      if (cap && static_cast<long>(out.size()) >= cap) full = true;
      return;
    }
    int f = nonid[t];
    int s = size[I.msrc[f]], tt = size[I.mtgt[f]];
    if (s > 0 && tt == 0) return;
    std::vector<int> v(s, 0);
    have[f] = true;
    for (;;) {
      act[f] = v;
      if (consistent_at(f)) morstep(t + 1);
      if (full) break;
      int p = s - 1;
      while (p >= 0 && v[p] == tt - 1) v[p--] = 0;
      if (p < 0) break;
      ++v[p];
    }
    have[f] = false;
  };
  std::function<void(int)> objstep = [&](int o) {
    if (full) return;
    if (o == I.nobj) {
      for (int q = 0; q < I.nobj; ++q) {
        act[I.ident[q]].resize(size[q]);
        std::iota(act[I.ident[q]].begin(), act[I.ident[q]].end(), 0);
        have[I.ident[q]] = true;
      }
      morstep(0);
      for (int q = 0; q < I.nobj; ++q) have[I.ident[q]] = false;
      return;
    }
    for (int s = 0; s <= max_size; ++s) {
      size[o] = s;
      objstep(o + 1);
    }
  };
  objstep(0);
  return out;
}

std::vector<ModFunctor> enumerate_mod_functors(std::shared_ptr<const FinCat> C, const Ring& ring,
                                               int max_rank, long cap) {
  require(C && max_rank >= 0 && cap >= 0, "bad enumeration bounds");
  const FinCat& I = *C;
  std::vector<mpq_class> ents;
  for (int e : {-1, 0, 1}) {
    mpq_class x = ring.normalize(e);
    if (std::find(ents.begin(), ents.end(), x) == ents.end()) ents.push_back(x);
  }
  std::sort(ents.begin(), ents.end(),
            [](const mpq_class& a, const mpq_class& b) { return a < b; });
  std::vector<ModFunctor> out;
  std::vector<int> nonid;
  for (int f = 0; f < I.nmor(); ++f)
    if (f != I.ident[I.msrc[f]]) nonid.push_back(f);
  auto touch = pairs_touching(I);
  std::vector<int> rank(I.nobj, 0);
  std::vector<SMat> act(I.nmor());
  std::vector<bool> have(I.nmor(), false);
  bool full = false;
  auto consistent_at = [&](int cur) {
    for (const auto& [g, f, v] : touch[cur]) {
      if (!have[g] || !have[f] || !have[v]) continue;
      if (act[v] != normalized(act[g] * act[f], ring)) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> morstep = [&](std::size_t t) {
    if (full) return;
    if (t == nonid.size()) {
      out.push_back(make_mod_functor(C, ring, rank, act));
      if (cap && static_cast<long>(out.size()) >= cap) full = true;
      return;
    }
    int f = nonid[t];
    int nr = rank[I.mtgt[f]], nc = rank[I.msrc[f]];
    int cells = nr * nc;
    std::vector<int> pick(cells, 0);
    have[f] = true;
    for (;;) {
      SMat A(nr, nc);
      for (int c = 0; c < cells; ++c)
        if (ents[pick[c]] != 0) A.set(c / nc, c % nc, ents[pick[c]]);
      act[f] = std::move(A);
      if (consistent_at(f)) morstep(t + 1);
      if (full) break;
      int p = cells - 1;
      while (p >= 0 && pick[p] + 1 == static_cast<int>(ents.size())) pick[p--] = 0;
      if (p < 0) break;
      ++pick[p];
    }
    have[f] = false;
  };
  std::function<void(int)> objstep = [&](int o) {
    if (full) return;
    if (o == I.nobj) {
      for (int q = 0; q < I.nobj; ++q) {
        act[I.ident[q]] = SMat::identity(rank[q]);
        have[I.ident[q]] = true;
      }
      morstep(0);
      for (int q = 0; q < I.nobj; ++q) have[I.ident[q]] = false;
      return;
    }
    for (int r = 0; r <= max_rank; ++r) {
      rank[o] = r;
      objstep(o + 1);
    }
  };
  objstep(0);
  return out;
}

std::vector<CatFunctor> enumerate_cat_functors(std::shared_ptr<const FinCat> I,
                                               std::shared_ptr<const FinCat> J, long cap) {
  require(I && J && cap >= 0, "bad enumeration bounds");
  const FinCat& A = *I;
  const FinCat& B = *J;
  std::vector<CatFunctor> out;
  std::vector<int> nonid;
  for (int f = 0; f < A.nmor(); ++f)
    if (f != A.ident[A.msrc[f]]) nonid.push_back(f);
  auto touch = pairs_touching(A);
  std::vector<int> obj(A.nobj, 0), mor(A.nmor(), -1);
  bool full = false;
  auto consistent_at = [&](int cur) {
    for (const auto& [g, f, v] : touch[cur]) {
      if (mor[g] < 0 || mor[f] < 0 || mor[v] < 0) continue;
      if (B.comp[mor[g]][mor[f]] != mor[v]) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> morstep = [&](std::size_t t) {
    if (full) return;
    if (t == nonid.size()) {
      out.push_back(make_cat_functor(I, J, obj, mor));
      if (cap && static_cast<long>(out.size()) >= cap) full = true;
      return;
    }
    int f = nonid[t];
    for (int g = 0; g < B.nmor(); ++g) {
      if (B.msrc[g] != obj[A.msrc[f]] || B.mtgt[g] != obj[A.mtgt[f]]) continue;
      mor[f] = g;
      if (consistent_at(f)) morstep(t + 1);
      if (full) break;
    }
    mor[f] = -1;
  };
  std::function<void(int)> objstep = [&](int o) {
    if (full) return;
    if (o == A.nobj) {
      if (B.nobj == 0 && A.nobj > 0) return;
      for (int q = 0; q < A.nobj; ++q) mor[A.ident[q]] = B.ident[obj[q]];
      morstep(0);
      for (int q = 0; q < A.nobj; ++q) mor[A.ident[q]] = -1;
      return;
    }
    if (B.nobj == 0) return;
    for (int j = 0; j < B.nobj; ++j) {
      obj[o] = j;
      objstep(o + 1);
    }
  };
  objstep(0);
  return out;
}

}  // namespace hodgehh
