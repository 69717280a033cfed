#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "hodgehh/fincat.hpp"

namespace hodgehh {

TwCat tw_cat(std::shared_ptr<const FinCat> C) {
  require(static_cast<bool>(C), "missing category");
  const FinCat& B = *C;
  TwCat T;
  T.base = C;
  T.opbase = std::make_shared<const FinCat>(op_cat(B));
  FinCat W;
  W.nobj = B.nmor();
  T.obj_arrow.resize(W.nobj);
  std::iota(T.obj_arrow.begin(), T.obj_arrow.end(), 0);
  // a map f -> g is a pair (u, v) with g = v f u
  std::map<std::tuple<int, int, int, int>, int> id_of;
  for (int f = 0; f < B.nmor(); ++f)
    for (int g = 0; g < B.nmor(); ++g)
      for (int u = 0; u < B.nmor(); ++u) {
        if (B.msrc[u] != B.msrc[g] || B.mtgt[u] != B.msrc[f]) continue;
        for (int v = 0; v < B.nmor(); ++v) {
          if (B.msrc[v] != B.mtgt[f] || B.mtgt[v] != B.mtgt[g]) continue;
          if (B.comp[v][B.comp[f][u]] != g) continue;
          id_of[{f, g, u, v}] = W.nmor();
          W.msrc.push_back(f);
          W.mtgt.push_back(g);
          T.mor_uv.push_back({u, v});
        }
      }
  W.ident.resize(W.nobj);
  for (int f = 0; f < B.nmor(); ++f)
    W.ident[f] = id_of.at({f, f, B.ident[B.msrc[f]], B.ident[B.mtgt[f]]});
  W.comp.assign(W.nmor(), std::vector<int>(W.nmor(), -1));
  for (int m2 = 0; m2 < W.nmor(); ++m2)
    for (int m1 = 0; m1 < W.nmor(); ++m1) {
      if (W.msrc[m2] != W.mtgt[m1]) continue;
      auto [u1, v1] = T.mor_uv[m1];
      auto [u2, v2] = T.mor_uv[m2];
      W.comp[m2][m1] =
          id_of.at({W.msrc[m1], W.mtgt[m2], B.comp[u1][u2], B.comp[v2][v1]});
    }
  W.validate();
  T.cat = std::make_shared<const FinCat>(std::move(W));
  std::vector<int> sobj(T.cat->nobj), smor(T.cat->nmor()), tobj(T.cat->nobj), tmor(T.cat->nmor());
  for (int t = 0; t < T.cat->nobj; ++t) {
    sobj[t] = B.msrc[T.obj_arrow[t]];
    tobj[t] = B.mtgt[T.obj_arrow[t]];
  }
  for (int k = 0; k < T.cat->nmor(); ++k) {
    smor[k] = T.mor_uv[k].first;
    tmor[k] = T.mor_uv[k].second;
  }
  T.source = make_cat_functor(T.cat, T.opbase, std::move(sobj), std::move(smor));
  T.target = make_cat_functor(T.cat, T.base, std::move(tobj), std::move(tmor));
  return T;
}

BuiltSSet nerve(std::shared_ptr<const FinCat> C, int N) {
  require(C && N >= 0, "bad nerve arguments");
  ExplicitModel M;
  M.N = N;
  M.label = "n";
  M.level = [C](int q) {
    const FinCat& B = *C;
    std::vector<Key> out;
    if (q == 0) {
      for (int o = 0; o < B.nobj; ++o) out.push_back({o});
      return out;
    }
    Key chain(q);
    std::function<void(int)> grow = [&](int t) {
      if (t == q) {
        out.push_back(chain);
        return;
      }
      for (int f = 0; f < B.nmor(); ++f) {
        if (t > 0 && B.msrc[f] != B.mtgt[static_cast<int>(chain[t - 1])]) continue;
        chain[t] = f;
        grow(t + 1);
      }
    };
    grow(0);
    return out;
  };
  M.face = [C](int q, const Key& x, int i) {
    const FinCat& B = *C;
    if (q == 1) return Key{i == 0 ? B.mtgt[static_cast<int>(x[0])] : B.msrc[static_cast<int>(x[0])]};
    Key y;
    for (int t = 0; t < q; ++t) {
      if (i > 0 && i < q && t == i - 1) {
        y.push_back(B.comp[static_cast<int>(x[i])][static_cast<int>(x[i - 1])]);
        ++t;  // consumed two entries
      } else if (i == 0 && t == 0) {
        continue;
      } else if (i == q && t == q - 1) {
        continue;
      } else {
        y.push_back(x[t]);
      }
    }
    return y;
  };
  M.degen = [C](int q, const Key& x, int i) {
    const FinCat& B = *C;
    int at = (q == 0) ? static_cast<int>(x[0])
                      : (i == 0 ? B.msrc[static_cast<int>(x[0])] : B.mtgt[static_cast<int>(x[i - 1])]);
    Key y;
    for (int t = 0; t < i; ++t) y.push_back(x[t]);
    y.push_back(B.ident[at]);
    for (int t = i; t < q; ++t) y.push_back(x[t]);
    return y;
  };
  return from_explicit(M);
}

TwistedNerve twisted_nerve(std::shared_ptr<const FinCat> C, int N) {
  require(C && N >= 0, "bad twisted nerve arguments");
  TwistedNerve R;
  R.T = tw_cat(C);
  R.nerve_tw = nerve(R.T.cat, N);
  R.nerve_c = nerve(C, 2 * N + 1);
  R.tw_of_nerve = twisted(*R.nerve_c.S, N);
  LevelIndex L = level_index(*R.nerve_c.S, 2 * N + 1);
  std::vector<std::vector<SimplexRef>> image(N + 1);
  for (int n = 0; n <= N; ++n) {
    for (int g = 0; g < R.nerve_tw.S->ngen[n]; ++g) {
      const Key& k = R.nerve_tw.key_of(n, g);
      // chain g_0 -> ... -> g_n with steps (u_t, v_t) unfolds to
      // (u_n, ..., u_1, g_0, v_1, ..., v_n) in the base nerve
      Key chain(2 * n + 1);
      int g0 = (n == 0) ? R.T.obj_arrow[static_cast<int>(k[0])]
                        : R.T.obj_arrow[R.T.cat->msrc[static_cast<int>(k[0])]];
      chain[n] = g0;
      for (int t = 1; t <= n; ++t) {
        auto [u, v] = R.T.mor_uv[static_cast<int>(k[t - 1])];
        chain[n - t] = u;
        chain[n + t] = v;
      }
      const SimplexRef& cref = R.nerve_c.ref_of(2 * n + 1, chain);
      SimplexRef tref = R.tw_of_nerve.ref_of(n, Key{L.of(2 * n + 1, cref)});
      require_property(tref.word.empty(),
                       "twisted nerve comparison image must be nondegenerate");
      image[n].push_back(tref);
    }
    require_property(R.nerve_tw.S->ngen[n] == R.tw_of_nerve.S->ngen[n],
                     cat("twisted nerve generator counts differ in dimension ", n));
    std::set<SimplexRef> seen(image[n].begin(), image[n].end());
    require_property(static_cast<int>(seen.size()) == R.nerve_tw.S->ngen[n],
                     cat("twisted nerve comparison is not injective in dimension ", n));
  }
  R.iso = make_simplicial_map(R.nerve_tw.S, R.tw_of_nerve.S, std::move(image));
  return R;
}

}  // namespace hodgehh
