#include <algorithm>

#include "hodgehh/simplicial.hpp"

namespace hodgehh {

const SimplexRef& BuiltSSet::ref_of(int q, const Key& k) const {
  require(q >= 0 && q < static_cast<int>(key_to_ref.size()), "level out of range");
  auto it = key_to_ref[q].find(k);
  require(it != key_to_ref[q].end(), "key not present at this level");
  return it->second;
}

BuiltSSet from_explicit(const ExplicitModel& M) {
  require(M.N >= 0, "negative truncation");
  require(static_cast<bool>(M.level), "explicit model needs a level function");
  require(M.N == 0 || (M.face && M.degen), "explicit model needs face and degeneracy actions");
  auto S = std::make_shared<SimplicialSet>();
  S->N = M.N;
  S->ngen.assign(M.N + 1, 0);
  S->face_of.assign(M.N + 1, {});
  S->names.assign(M.N + 1, {});
  BuiltSSet B;
  B.key_to_ref.resize(M.N + 1);
  B.gen_key.resize(M.N + 1);
  for (int q = 0; q <= M.N; ++q) {
    std::vector<Key> keys = M.level(q);
    for (const Key& x : keys) {
      if (B.key_to_ref[q].count(x))
        require(false, cat("duplicate key at level ", q, " of ", M.label));
      SimplexRef ref;
      bool degenerate = false;
      for (int i = 0; i < q && !degenerate; ++i) {
        // x = s_i(y) exactly when s_i(d_{i+1} x) = x
        Key y = M.face(q, x, i + 1);
        auto it = B.key_to_ref[q - 1].find(y);
        require(it != B.key_to_ref[q - 1].end(),
                cat("face key missing at level ", q - 1, " of ", M.label));
        if (M.degen(q - 1, y, i) == x) {
          ref = S->degen(it->second, i);
          degenerate = true;
        }
      }
      if (!degenerate) {
        int g = S->ngen[q]++;
        ref = SimplexRef{q, {}, g};
        B.gen_key[q].push_back(x);
        S->names[q].push_back(M.name ? M.name(q, x)
                                     : cat(M.label, "[", join(x, ","), "]"));
      }
      B.key_to_ref[q][x] = ref;
    }
    if (q >= 1) {
      S->face_of[q].resize(S->ngen[q]);
      for (int g = 0; g < S->ngen[q]; ++g) {
        const Key& x = B.gen_key[q][g];
        std::vector<SimplexRef> fs;
        for (int i = 0; i <= q; ++i) {
          Key y = M.face(q, x, i);
          auto it = B.key_to_ref[q - 1].find(y);
          require(it != B.key_to_ref[q - 1].end(),
                  cat("face key missing at level ", q - 1, " of ", M.label));
          fs.push_back(it->second);
        }
        S->face_of[q][g] = std::move(fs);
      }
    }
    // the whole table must agree with the degeneracy-word engine
    if (q >= 1) {
      for (const auto& [x, r] : B.key_to_ref[q])
        for (int i = 0; i <= q; ++i)
          require_property(B.key_to_ref[q - 1].at(M.face(q, x, i)) == S->face(r, i),
                           cat("explicit faces disagree with the word engine in ", M.label));
      for (const auto& [y, ry] : B.key_to_ref[q - 1])
        for (int i = 0; i <= q - 1; ++i) {
          Key z = M.degen(q - 1, y, i);
          auto it = B.key_to_ref[q].find(z);
          require(it != B.key_to_ref[q].end(),
                  cat("degeneracy key missing at level ", q, " of ", M.label));
          require_property(it->second == S->degen(ry, i),
                           cat("explicit degeneracies disagree with the word engine in ", M.label));
        }
    }
  }
  if (M.basepoint) {
    const SimplexRef& r = B.ref_of(0, *M.basepoint);
    S->basepoint = r.gen;
  }
  S->validate();
  B.S = S;
  return B;
}

// all monotone vectors of given length with values 0..maxval
static std::vector<Key> monotone_vectors(int len, int maxval) {
  std::vector<Key> out;
  Key cur(len);
  std::function<void(int, long)> rec = [&](int pos, long lo) {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (long v = lo; v <= maxval; ++v) {
      cur[pos] = v;
      rec(pos + 1, v);
    }
  };
  rec(0, 0);
  return out;
}

BuiltSSet standard_simplex(int n, int N) {
  require(n >= 0 && N >= 0, "standard simplex needs n, N >= 0");
  ExplicitModel M;
  M.N = N;
  M.label = cat("simplex", n);
  M.level = [n](int q) { return monotone_vectors(q + 1, n); };
  M.face = [](int, const Key& x, int i) {
    Key y = x;
    y.erase(y.begin() + i);
    return y;
  };
  M.degen = [](int, const Key& x, int i) {
    Key y = x;
    y.insert(y.begin() + i, x[i]);
    return y;
  };
  if (n == 0) M.basepoint = Key{0};
  return from_explicit(M);
}

BuiltSSet standard_circle(int N) {
  require(N >= 0, "negative truncation");
  ExplicitModel M;
  M.N = N;
  M.label = "circle";
  M.level = [](int q) {
    std::vector<Key> out;
    for (long k = 0; k <= q; ++k) out.push_back({k});
    return out;
  };
  M.face = [](int q, const Key& x, int i) {
    long k = x[0];
    long kk = (i <= q - k) ? k : k - 1;
    if (kk == q) kk = 0;  // the all-ones class equals the all-zeros class
    return Key{kk};
  };
  M.degen = [](int q, const Key& x, int i) {
    long k = x[0];
    return Key{(i <= q - k) ? k : k + 1};
  };
  M.basepoint = Key{0};
  M.name = [](int q, const Key& x) { return cat("c", q, "_", x[0]); };
  return from_explicit(M);
}

BuiltSSet standard_sphere(int d, int N) {
  require(d >= 1, "sphere dimension must be at least 1");
  require(N >= 0, "negative truncation");
  // keys: {} is the collapsed class; otherwise a monotone surjection onto [d]
  auto surjective = [d](const Key& x) {
    long next = 0;
    for (long v : x) {
      if (v != next && v != next - 1) return false;
      if (v == next) ++next;
    }
    return next == d + 1;
  };
  ExplicitModel M;
  M.N = N;
  M.label = cat("sphere", d);
  M.level = [d, surjective](int q) {
    std::vector<Key> out = {{}};
    for (Key& x : monotone_vectors(q + 1, d))
      if (surjective(x)) out.push_back(std::move(x));
    return out;
  };
  M.face = [surjective](int, const Key& x, int i) {
    if (x.empty()) return x;
    Key y = x;
    y.erase(y.begin() + i);
    return surjective(y) ? y : Key{};
  };
  M.degen = [](int, const Key& x, int i) {
    if (x.empty()) return x;
    Key y = x;
    y.insert(y.begin() + i, x[i]);
    return y;
  };
  M.basepoint = Key{};
  return from_explicit(M);
}

// m-fold product with per-level simplex indices of the factors as keys;
// factors[t] points at the level index of coordinate t
static BuiltSSet tuple_model(const std::vector<const SimplicialSet*>& fac, int N,
                             const std::string& label,
                             const std::function<bool(int, const std::vector<SimplexRef>&)>& keep) {
  std::vector<LevelIndex> L;
  for (const SimplicialSet* X : fac) {
    require(X->N >= N, "factor truncation too small");
    L.push_back(level_index(*X, N));
  }
  int m = static_cast<int>(fac.size());
  auto decode = [&L, m](int q, const Key& x) {
    std::vector<SimplexRef> refs;
    for (int t = 0; t < m; ++t) refs.push_back(L[t].list[q][x[t]]);
    return refs;
  };
  ExplicitModel M;
  M.N = N;
  M.label = label;
  M.level = [&L, m, keep, decode](int q) {
    std::vector<Key> out;
    Key cur(m);
    std::function<void(int)> rec = [&](int t) {
      if (t == m) {
        if (!keep || keep(q, decode(q, cur))) out.push_back(cur);
        return;
      }
      for (long i = 0; i < static_cast<long>(L[t].list[q].size()); ++i) {
        cur[t] = i;
        rec(t + 1);
      }
    };
    rec(0);
    return out;
  };
  M.face = [&L, fac, m, decode](int q, const Key& x, int i) {
    Key y(m);
    auto refs = decode(q, x);
    for (int t = 0; t < m; ++t) y[t] = L[t].of(q - 1, fac[t]->face(refs[t], i));
    return y;
  };
  M.degen = [&L, fac, m, decode](int q, const Key& x, int i) {
    Key y(m);
    auto refs = decode(q, x);
    for (int t = 0; t < m; ++t) y[t] = L[t].of(q + 1, fac[t]->degen(refs[t], i));
    return y;
  };
  bool all_based = true;
  for (const SimplicialSet* X : fac)
    if (!X->basepoint) all_based = false;
  if (all_based) {
    Key bp(m);
    for (int t = 0; t < m; ++t) bp[t] = L[t].of(0, fac[t]->gen(0, *fac[t]->basepoint));
    M.basepoint = bp;
  }
  return from_explicit(M);
}

BuiltSSet sset_product(const SimplicialSet& X, const SimplicialSet& Y) {
  require(X.N == Y.N, "product factors must share a truncation level");
  return tuple_model({&X, &Y}, X.N, "prod", nullptr);
}

BuiltSSet sset_power(const SimplicialSet& X, int m) {
  require(m >= 0, "negative power");
  if (m == 0) {
    ExplicitModel M;
    M.N = X.N;
    M.label = "pt";
    M.level = [](int) { return std::vector<Key>{{}}; };
    M.face = [](int, const Key& x, int) { return x; };
    M.degen = [](int, const Key& x, int) { return x; };
    M.basepoint = Key{};
    return from_explicit(M);
  }
  std::vector<const SimplicialSet*> fac(m, &X);
  return tuple_model(fac, X.N, cat("pow", m), nullptr);
}

BuiltSSet alpha_subcomplex(const SimplicialSet& X, int m, int n) {
  require(X.reduced(), "alpha subcomplex needs a reduced simplicial set");
  require(m >= 0 && n >= 0, "alpha subcomplex needs m, n >= 0");
  if (m == 0) return sset_power(X, 0);
  std::vector<const SimplicialSet*> fac(m, &X);
  auto keep = [&X, n](int, const std::vector<SimplexRef>& refs) {
    int away = 0;
    for (const SimplexRef& r : refs)
      if (!X.over_basepoint(r)) ++away;
    return away <= n;
  };
  return tuple_model(fac, X.N, cat("alpha", m, "_", n), keep);
}

BuiltSSet op_sset(const SimplicialSet& X) {
  LevelIndex L = level_index(X, X.N);
  ExplicitModel M;
  M.N = X.N;
  M.label = "op";
  M.level = [&L](int q) {
    std::vector<Key> out;
    for (long i = 0; i < static_cast<long>(L.list[q].size()); ++i) out.push_back({i});
    return out;
  };
  M.face = [&L, &X](int q, const Key& x, int i) {
    return Key{L.of(q - 1, X.face(L.list[q][x[0]], q - i))};
  };
  M.degen = [&L, &X](int q, const Key& x, int i) {
    return Key{L.of(q + 1, X.degen(L.list[q][x[0]], q - i))};
  };
  if (X.basepoint) M.basepoint = Key{L.of(0, X.gen(0, *X.basepoint))};
  M.name = [&L, &X](int q, const Key& x) {
    const SimplexRef& r = L.list[q][x[0]];
    return r.word.empty() ? cat("op.", X.name_of(q, r.gen)) : std::string();
  };
  return from_explicit(M);
}

BuiltSSet twisted(const SimplicialSet& X, int N) {
  require(N >= 0, "negative truncation");
  require(X.N >= 2 * N + 1, cat("twisting to level ", N, " needs the input truncated to at least ",
                                2 * N + 1));
  LevelIndex L = level_index(X, 2 * N + 1);
  ExplicitModel M;
  M.N = N;
  M.label = "tw";
  M.level = [&L](int q) {
    std::vector<Key> out;
    for (long i = 0; i < static_cast<long>(L.list[2 * q + 1].size()); ++i) out.push_back({i});
    return out;
  };
  M.face = [&L, &X](int q, const Key& x, int i) {
    SimplexRef r = L.list[2 * q + 1][x[0]];
    return Key{L.of(2 * q - 1, X.face(X.face(r, q + 1 + i), q - i))};
  };
  M.degen = [&L, &X](int q, const Key& x, int i) {
    SimplexRef r = L.list[2 * q + 1][x[0]];
    return Key{L.of(2 * q + 3, X.degen(X.degen(r, q + 1 + i), q - i))};
  };
  if (X.basepoint) {
    SimplexRef b = X.degen(X.gen(0, *X.basepoint), 0);
    M.basepoint = Key{L.of(1, b)};
  }
  return from_explicit(M);
}

SimplicialSet cycle_graph(int k, const std::vector<int>& orientations, int N) {
  require(k >= 1, "cycle graph needs at least one edge");
  require(N >= 1, "cycle graph needs truncation at least 1");
  require(static_cast<int>(orientations.size()) == k, "one orientation per edge");
  SimplicialSet C;
  C.N = N;
  C.ngen.assign(N + 1, 0);
  C.ngen[0] = C.ngen[1] = k;
  C.face_of.assign(N + 1, {});
  C.face_of[1].resize(k);
  C.names.assign(N + 1, {});
  for (int j = 0; j < k; ++j) {
    require(orientations[j] == 1 || orientations[j] == -1, "orientations must be +1 or -1");
    int a = j, b = (j + 1) % k;  // edge j runs between vertices j and j+1
    if (orientations[j] == 1)
      C.face_of[1][j] = {C.gen(0, b), C.gen(0, a)};  // d_0 = target, d_1 = source
    else
      C.face_of[1][j] = {C.gen(0, a), C.gen(0, b)};
    C.names[0].push_back(cat("v", j));
    C.names[1].push_back(cat("e", j));
  }
  C.validate();
  return C;
}

DegreeMap degree_map(int r, int N) {
  require(N >= 1, "degree map needs truncation at least 1");
  BuiltSSet circ = standard_circle(N);
  auto S1 = circ.S;
  SimplexRef bp = S1->gen(0, 0);
  SimplexRef e = S1->gen(1, 0);
  if (r == 0) {
    // constant map out of the circle itself
    std::vector<std::vector<SimplexRef>> image(N + 1);
    image[0] = {bp};
    if (N >= 1) image[1] = {S1->degen(bp, 0)};
    for (int m = 2; m <= N; ++m) image[m] = {};
    DegreeMap D;
    D.C = S1;
    D.c = make_simplicial_map(S1, S1, image);
    D.w = identity_smap(S1);
    return D;
  }
  // positive degree: r coherently oriented edges; negative: two extra edges
  // and all but the first reversed, so the edge sum maps to r times the loop
  int k = r > 0 ? r : -r + 2;
  std::vector<int> orient(k, r > 0 ? 1 : -1);
  orient[0] = 1;
  auto C = std::make_shared<SimplicialSet>(cycle_graph(k, orient, N));
  std::vector<std::vector<SimplexRef>> collapse_all(N + 1), collapse_rest(N + 1);
  for (int j = 0; j < k; ++j) {
    collapse_all[0].push_back(bp);
    collapse_rest[0].push_back(bp);
    collapse_all[1].push_back(e);
    collapse_rest[1].push_back(j == 0 ? e : S1->degen(bp, 0));
  }
  DegreeMap D;
  D.C = C;
  D.c = make_simplicial_map(C, S1, collapse_all);
  D.w = make_simplicial_map(C, S1, collapse_rest);
  return D;
}

HomProjection hom_projection(const SimplicialSet& X, int N) {
  require(N >= 0, "negative truncation");
  require(X.N >= 2 * N + 1, "input truncation too small for the hom projection");
  HomProjection H;
  H.tw = twisted(X, N);
  H.opx = op_sset(X);
  H.prod = sset_product(*H.opx.S, X);
  LevelIndex LX = level_index(X, 2 * N + 1);
  LevelIndex Lop = level_index(*H.opx.S, N);
  std::vector<std::vector<SimplexRef>> image(N + 1);
  for (int q = 0; q <= N; ++q)
    for (int g = 0; g < H.tw.S->ngen[q]; ++g) {
      SimplexRef r = LX.list[2 * q + 1][H.tw.key_of(q, g)[0]];
      SimplexRef front = r;  // restrict to vertices 0..q
      for (int t = 2 * q + 1; t >= q + 1; --t) front = X.face(front, t);
      SimplexRef back = r;  // restrict to vertices q+1..2q+1
      for (int t = 0; t <= q; ++t) back = X.face(back, 0);
      const SimplexRef& opref = H.opx.ref_of(q, Key{LX.of(q, front)});
      image[q].push_back(H.prod.ref_of(q, Key{Lop.of(q, opref), LX.of(q, back)}));
    }
  H.map = make_simplicial_map(H.tw.S, H.prod.S, std::move(image));
  return H;
}

}  // namespace hodgehh
