#include "hodgehh/fincat.hpp"

#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace hodgehh {

// adds sign * B into M with its top left corner at (r0, c0)
static void blit(SMat& M, const SMat& B, int r0, int c0, int sign) {
  for (int i = 0; i < B.nr; ++i)
    for (const auto& [j, v] : B.row[i]) M.add_to(r0 + i, c0 + j, sign * v);
}

int FinCat::compose(int g, int f) const {
  require(g >= 0 && g < nmor() && f >= 0 && f < nmor(), "morphism id out of range");
  if (!composable(g, f))
    require(false, cat("morphisms ", g, " and ", f, " are not composable"));
  return comp[g][f];
}

void FinCat::validate() const {
  int m = nmor();
  require(nobj >= 0, "negative object count");
  require(static_cast<int>(mtgt.size()) == m, "morphism tables differ in length");
  require(static_cast<int>(ident.size()) == nobj, "one identity per object required");
  require(static_cast<int>(comp.size()) == m, "composition table has wrong height");
  for (int f = 0; f < m; ++f) {
    require(msrc[f] >= 0 && msrc[f] < nobj && mtgt[f] >= 0 && mtgt[f] < nobj,
            "morphism endpoints out of range");
    require(static_cast<int>(comp[f].size()) == m, "composition table has wrong width");
  }
  for (int o = 0; o < nobj; ++o) {
    int e = ident[o];
    require(e >= 0 && e < m && msrc[e] == o && mtgt[e] == o, "identity has wrong endpoints");
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f) {
      int v = comp[g][f];
      if (!composable(g, f)) {
        require(v == -1, "composition entry present for non-composable pair");
        continue;
      }
      require(v >= 0 && v < m, "composite missing from the morphism list");
      require(msrc[v] == msrc[f] && mtgt[v] == mtgt[g], "composite has wrong endpoints");
    }
  for (int f = 0; f < m; ++f) {
    require(comp[f][ident[msrc[f]]] == f, "right unit law fails");
    require(comp[ident[mtgt[f]]][f] == f, "left unit law fails");
  }
  // associativity, walking only composable triples via per-object buckets
  std::vector<std::vector<int>> by_src(nobj), by_tgt(nobj);
  for (int f = 0; f < m; ++f) {
    by_src[msrc[f]].push_back(f);
    by_tgt[mtgt[f]].push_back(f);
  }
  for (int g = 0; g < m; ++g)
    for (int h : by_src[mtgt[g]])
      for (int f : by_tgt[msrc[g]])
        if (comp[comp[h][g]][f] != comp[h][comp[g][f]])
          require(false, cat("associativity fails on (", h, ",", g, ",", f, ")"));
}

FinCat terminal_cat() {
  FinCat C;
  C.nobj = 1;
  C.msrc = {0};
  C.mtgt = {0};
  C.ident = {0};
  C.comp = {{0}};
  C.validate();
  return C;
}

FinCat discrete_cat(int n) {
  require(n >= 0, "negative object count");
  FinCat C;
  C.nobj = n;
  for (int o = 0; o < n; ++o) {
    C.msrc.push_back(o);
    C.mtgt.push_back(o);
    C.ident.push_back(o);
  }
  C.comp.assign(n, std::vector<int>(n, -1));
  for (int o = 0; o < n; ++o) C.comp[o][o] = o;
  C.validate();
  return C;
}

FinCat chain_cat(int n) {
  require(n >= 0, "negative chain length");
  // one morphism per pair i <= j
  FinCat C;
  C.nobj = n + 1;
  std::map<std::pair<int, int>, int> id_of;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      id_of[{i, j}] = C.nmor();
      C.msrc.push_back(i);
      C.mtgt.push_back(j);
    }
  for (int i = 0; i <= n; ++i) C.ident.push_back(id_of[{i, i}]);
  int m = C.nmor();
  C.comp.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (C.composable(g, f)) C.comp[g][f] = id_of[{C.msrc[f], C.mtgt[g]}];
  C.validate();
  return C;
}

FinCat arrow_cat() { return chain_cat(1); }

FinCat parallel_pair_cat() {
  FinCat C;
  C.nobj = 2;
  C.msrc = {0, 1, 0, 0};
  C.mtgt = {0, 1, 1, 1};
  C.ident = {0, 1};
  int m = 4;
  C.comp.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (C.composable(g, f)) C.comp[g][f] = (g >= 2) ? g : f;
  C.validate();
  return C;
}

FinCat iso_cat() {
  FinCat C;
  C.nobj = 2;
  C.msrc = {0, 1, 0, 1};
  C.mtgt = {0, 1, 1, 0};
  C.ident = {0, 1};
  C.comp = {{0, -1, -1, 3}, {-1, 1, 2, -1}, {2, -1, -1, 1}, {-1, 3, 0, -1}};
  C.validate();
  return C;
}

FinCat op_cat(const FinCat& C) {
  FinCat D = C;
  std::swap(D.msrc, D.mtgt);
  for (int g = 0; g < D.nmor(); ++g)
    for (int f = 0; f < D.nmor(); ++f) D.comp[g][f] = C.comp[f][g];
  D.validate();
  return D;
}

std::string cat_to_text(const FinCat& C) {
  std::ostringstream os;
  os << "objects " << C.nobj << "\n";
  os << "morphisms " << C.nmor() << "\n";
  for (int f = 0; f < C.nmor(); ++f)
    os << "mor " << f << " " << C.msrc[f] << " " << C.mtgt[f] << "\n";
  os << "identities";
  for (int e : C.ident) os << " " << e;
  os << "\n";
  os << "comp\n";
  for (int g = 0; g < C.nmor(); ++g) os << join(C.comp[g], " ") << "\n";
  return os.str();
}

FinCat cat_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string head;
  FinCat C;
  int m = -1;
  require(static_cast<bool>(is >> head) && head == "objects" && static_cast<bool>(is >> C.nobj),
          "category text must start with an objects line");
  require(static_cast<bool>(is >> head) && head == "morphisms" && static_cast<bool>(is >> m) &&
              m >= 0,
          "category text needs a morphisms line");
  for (int f = 0; f < m; ++f) {
    int k, s, t;
    require(static_cast<bool>(is >> head) && head == "mor" && static_cast<bool>(is >> k >> s >> t),
            "bad morphism line");
    require(k == f, "morphism ids must appear in order");
    C.msrc.push_back(s);
    C.mtgt.push_back(t);
  }
  require(static_cast<bool>(is >> head) && head == "identities", "missing identities line");
  C.ident.resize(C.nobj);
  for (int o = 0; o < C.nobj; ++o)
    require(static_cast<bool>(is >> C.ident[o]), "identities line too short");
  require(static_cast<bool>(is >> head) && head == "comp", "missing composition table");
  C.comp.assign(m, std::vector<int>(m, -1));
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      require(static_cast<bool>(is >> C.comp[g][f]), "composition table too short");
  C.validate();
  return C;
}

std::vector<FinCat> load_corpus_dir(const std::string& dir) {
  std::ifstream index(dir + "/index.txt");
  require(index.good(), cat("cannot open ", dir, "/index.txt"));
  std::vector<FinCat> out;
  std::string name;
  while (index >> name) {
    std::ifstream f(dir + "/" + name);
    require(f.good(), cat("cannot open corpus file ", name));
    std::ostringstream body;
    body << f.rdbuf();
    out.push_back(cat_from_text(body.str()));
  }
  return out;
}

static bool same_cat(const std::shared_ptr<const FinCat>& a,
                     const std::shared_ptr<const FinCat>& b) {
  return a == b || *a == *b;
}

CatFunctor make_cat_functor(std::shared_ptr<const FinCat> dom, std::shared_ptr<const FinCat> cod,
                            std::vector<int> obj, std::vector<int> mor) {
  require(dom && cod, "functor endpoints missing");
  CatFunctor F{std::move(dom), std::move(cod), std::move(obj), std::move(mor)};
  const FinCat& I = *F.dom;
  const FinCat& J = *F.cod;
  require(static_cast<int>(F.obj.size()) == I.nobj, "object table has wrong length");
  require(static_cast<int>(F.mor.size()) == I.nmor(), "morphism table has wrong length");
  for (int o = 0; o < I.nobj; ++o) require(F.obj[o] >= 0 && F.obj[o] < J.nobj, "object image out of range");
  for (int f = 0; f < I.nmor(); ++f) {
    int v = F.mor[f];
    require(v >= 0 && v < J.nmor(), "morphism image out of range");
    require(J.msrc[v] == F.obj[I.msrc[f]] && J.mtgt[v] == F.obj[I.mtgt[f]],
            "morphism image has wrong endpoints");
  }
  for (int o = 0; o < I.nobj; ++o)
    require(F.mor[I.ident[o]] == J.ident[F.obj[o]], "functor must preserve identities");
  for (int g = 0; g < I.nmor(); ++g)
    for (int f = 0; f < I.nmor(); ++f)
      if (I.composable(g, f))
        require(F.mor[I.comp[g][f]] == J.comp[F.mor[g]][F.mor[f]],
                "functor must preserve composition");
  return F;
}

CatFunctor identity_cat_functor(std::shared_ptr<const FinCat> C) {
  std::vector<int> obj(C->nobj), mor(C->nmor());
  std::iota(obj.begin(), obj.end(), 0);
  std::iota(mor.begin(), mor.end(), 0);
  return make_cat_functor(C, C, std::move(obj), std::move(mor));
}

SetFunctor make_set_functor(std::shared_ptr<const FinCat> dom, std::vector<int> size,
                            std::vector<std::vector<int>> act) {
  require(dom != nullptr, "functor domain missing");
  SetFunctor F{std::move(dom), std::move(size), std::move(act)};
  const FinCat& C = *F.dom;
  require(static_cast<int>(F.size.size()) == C.nobj, "one set per object required");
  require(static_cast<int>(F.act.size()) == C.nmor(), "one map per morphism required");
  for (int o = 0; o < C.nobj; ++o) require(F.size[o] >= 0, "negative set size");
  for (int f = 0; f < C.nmor(); ++f) {
    require(static_cast<int>(F.act[f].size()) == F.size[C.msrc[f]], "map has wrong source size");
    for (int v : F.act[f]) require(v >= 0 && v < F.size[C.mtgt[f]], "map value out of range");
  }
  for (int o = 0; o < C.nobj; ++o)
    for (int x = 0; x < F.size[o]; ++x)
      require(F.act[C.ident[o]][x] == x, "identity must act as identity");
  for (int g = 0; g < C.nmor(); ++g)
    for (int f = 0; f < C.nmor(); ++f)
      if (C.composable(g, f))
        for (int x = 0; x < F.size[C.msrc[f]]; ++x)
          require(F.act[C.comp[g][f]][x] == F.act[g][F.act[f][x]],
                  "set functor must preserve composition");
  return F;
}

ModFunctor make_mod_functor(std::shared_ptr<const FinCat> dom, const Ring& ring,
                            std::vector<int> rank, std::vector<SMat> act) {
  require(dom != nullptr, "functor domain missing");
  ModFunctor F{std::move(dom), ring, std::move(rank), std::move(act)};
  const FinCat& C = *F.dom;
  require(static_cast<int>(F.rank.size()) == C.nobj, "one rank per object required");
  require(static_cast<int>(F.act.size()) == C.nmor(), "one matrix per morphism required");
  for (int o = 0; o < C.nobj; ++o) require(F.rank[o] >= 0, "negative rank");
  for (int f = 0; f < C.nmor(); ++f) {
    F.act[f] = normalized(F.act[f], ring);
    require(F.act[f].nr == F.rank[C.mtgt[f]] && F.act[f].nc == F.rank[C.msrc[f]],
            "matrix has wrong shape");
    if (ring.kind == RingKind::Z)
      require(F.act[f].is_integral(), "integral matrices required over Z");
  }
  for (int o = 0; o < C.nobj; ++o)
    require(F.act[C.ident[o]] == SMat::identity(F.rank[o]), "identity must act as identity");
  for (int g = 0; g < C.nmor(); ++g)
    for (int f = 0; f < C.nmor(); ++f)
      if (C.composable(g, f))
        require(F.act[C.comp[g][f]] == normalized(F.act[g] * F.act[f], ring),
                "module functor must preserve composition");
  return F;
}

ModFunctor constant_mod_functor(std::shared_ptr<const FinCat> dom, const Ring& ring, int rank) {
  std::vector<int> ranks(dom->nobj, rank);
  std::vector<SMat> act(dom->nmor(), SMat::identity(rank));
  return make_mod_functor(std::move(dom), ring, std::move(ranks), std::move(act));
}

ModFunctor restrict_functor(const ModFunctor& F, const CatFunctor& i) {
  require(same_cat(F.dom, i.cod), "functor is not defined on the codomain of i");
  std::vector<int> rank;
  std::vector<SMat> act;
  for (int o = 0; o < i.dom->nobj; ++o) rank.push_back(F.rank[i.obj[o]]);
  for (int f = 0; f < i.dom->nmor(); ++f) act.push_back(F.act[i.mor[f]]);
  return make_mod_functor(i.dom, F.ring, std::move(rank), std::move(act));
}

SetFunctor restrict_set_functor(const SetFunctor& F, const CatFunctor& i) {
  require(same_cat(F.dom, i.cod), "functor is not defined on the codomain of i");
  std::vector<int> size;
  std::vector<std::vector<int>> act;
  for (int o = 0; o < i.dom->nobj; ++o) size.push_back(F.size[i.obj[o]]);
  for (int f = 0; f < i.dom->nmor(); ++f) act.push_back(F.act[i.mor[f]]);
  return make_set_functor(i.dom, std::move(size), std::move(act));
}

std::vector<std::vector<std::vector<int>>> nat_transformations(const SetFunctor& F,
                                                               const SetFunctor& G) {
  require(same_cat(F.dom, G.dom), "natural transformations need a shared domain");
  const FinCat& C = *F.dom;
  // all candidate components per object, lexicographically
  std::vector<std::vector<std::vector<int>>> cand(C.nobj);
  for (int o = 0; o < C.nobj; ++o) {
    int s = F.size[o], t = G.size[o];
    if (s == 0) {
      cand[o] = {{}};
      continue;
    }
    if (t == 0) return {};
    std::vector<int> m(s, 0);
    for (;;) {
      cand[o].push_back(m);
      int p = s - 1;
      while (p >= 0 && m[p] == t - 1) m[p--] = 0;
      if (p < 0) break;
      ++m[p];
    }
  }
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> pick(C.nobj, 0);
  for (;;) {
    std::vector<std::vector<int>> eta;
    for (int o = 0; o < C.nobj; ++o) eta.push_back(cand[o][pick[o]]);
    bool natural = true;
    for (int f = 0; f < C.nmor() && natural; ++f) {
      int a = C.msrc[f], b = C.mtgt[f];
      for (int x = 0; x < F.size[a] && natural; ++x)
        if (eta[b][F.act[f][x]] != G.act[f][eta[a][x]]) natural = false;
    }
    if (natural) out.push_back(std::move(eta));
    int p = C.nobj - 1;
    while (p >= 0 && pick[p] + 1 == static_cast<int>(cand[p].size())) pick[p--] = 0;
    if (p < 0) break;
    ++pick[p];
  }
  return out;
}

SetBifunctor make_set_bifunctor(std::shared_ptr<const FinCat> C,
                                std::vector<std::vector<int>> size,
                                std::vector<std::vector<std::vector<int>>> act) {
  require(C != nullptr, "bifunctor category missing");
  SetBifunctor T{std::move(C), std::move(size), std::move(act)};
  const FinCat& I = *T.C;
  int m = I.nmor();
  require(static_cast<int>(T.size.size()) == I.nobj, "size table has wrong height");
  for (auto& row : T.size) require(static_cast<int>(row.size()) == I.nobj, "size table width");
  require(static_cast<int>(T.act.size()) == m, "action table has wrong height");
  for (int f = 0; f < m; ++f) {
    require(static_cast<int>(T.act[f].size()) == m, "action table width");
    for (int g = 0; g < m; ++g) {
      const auto& v = T.act[f][g];
      require(static_cast<int>(v.size()) == T.size[I.mtgt[f]][I.msrc[g]],
              "action map has wrong source size");
      for (int x : v)
        require(x >= 0 && x < T.size[I.msrc[f]][I.mtgt[g]], "action value out of range");
    }
  }
  for (int a = 0; a < I.nobj; ++a)
    for (int b = 0; b < I.nobj; ++b) {
      const auto& v = T.act[I.ident[a]][I.ident[b]];
      for (int x = 0; x < static_cast<int>(v.size()); ++x)
        require(v[x] == x, "identity pair must act as identity");
    }
  for (int f2 = 0; f2 < m; ++f2)
    for (int f = 0; f < m; ++f) {
      if (!I.composable(f2, f)) continue;
      for (int g2 = 0; g2 < m; ++g2)
        for (int g = 0; g < m; ++g) {
          if (!I.composable(g2, g)) continue;
          const auto& lhs = T.act[I.comp[f2][f]][I.comp[g2][g]];
          const auto& first = T.act[f2][g];
          const auto& second = T.act[f][g2];
          for (int x = 0; x < static_cast<int>(lhs.size()); ++x)
            require(lhs[x] == second[first[x]], "bifunctor must preserve composition");
        }
    }
  return T;
}

ModBifunctor make_mod_bifunctor(std::shared_ptr<const FinCat> C, const Ring& ring,
                                std::vector<std::vector<int>> rank,
                                std::vector<std::vector<SMat>> act) {
  require(C != nullptr, "bifunctor category missing");
  ModBifunctor T{std::move(C), ring, std::move(rank), std::move(act)};
  const FinCat& I = *T.C;
  int m = I.nmor();
  require(static_cast<int>(T.rank.size()) == I.nobj, "rank table has wrong height");
  for (auto& row : T.rank) require(static_cast<int>(row.size()) == I.nobj, "rank table width");
  require(static_cast<int>(T.act.size()) == m, "action table has wrong height");
  for (int f = 0; f < m; ++f) {
    require(static_cast<int>(T.act[f].size()) == m, "action table width");
    for (int g = 0; g < m; ++g) {
      T.act[f][g] = normalized(T.act[f][g], ring);
      require(T.act[f][g].nr == T.rank[I.msrc[f]][I.mtgt[g]] &&
                  T.act[f][g].nc == T.rank[I.mtgt[f]][I.msrc[g]],
              "action matrix has wrong shape");
    }
  }
  for (int a = 0; a < I.nobj; ++a)
    for (int b = 0; b < I.nobj; ++b)
      require(T.act[I.ident[a]][I.ident[b]] == SMat::identity(T.rank[a][b]),
              "identity pair must act as identity");
  for (int f2 = 0; f2 < m; ++f2)
    for (int f = 0; f < m; ++f) {
      if (!I.composable(f2, f)) continue;
      for (int g2 = 0; g2 < m; ++g2)
        for (int g = 0; g < m; ++g) {
          if (!I.composable(g2, g)) continue;
          require(T.act[I.comp[f2][f]][I.comp[g2][g]] ==
                      normalized(T.act[f][g2] * T.act[f2][g], ring),
                  "bifunctor must preserve composition");
        }
    }
  return T;
}

int hom_encode(const std::vector<int>& m, int tgt_size) {
  int code = 0, p = 1;
  for (int v : m) {
    code += v * p;
    p *= tgt_size;
  }
  return code;
}

std::vector<int> hom_decode(long code, int src_size, int tgt_size) {
  std::vector<int> m(src_size);
  for (int i = 0; i < src_size; ++i) {
    m[i] = static_cast<int>(code % tgt_size);
    code /= tgt_size;
  }
  return m;
}

SetBifunctor hom_bifunctor(const SetFunctor& F, const SetFunctor& G) {
  require(same_cat(F.dom, G.dom), "hom bifunctor needs a shared domain");
  auto C = F.dom;
  const FinCat& I = *C;
  auto hom_size = [&](int a, int b) {
    if (F.size[a] == 0) return 1L;
    if (G.size[b] == 0) return 0L;
    long n = 1;
    for (int i = 0; i < F.size[a]; ++i) n *= G.size[b];
    return n;
  };
  std::vector<std::vector<int>> size(I.nobj, std::vector<int>(I.nobj));
  for (int a = 0; a < I.nobj; ++a)
    for (int b = 0; b < I.nobj; ++b) size[a][b] = static_cast<int>(hom_size(a, b));
  int m = I.nmor();
  std::vector<std::vector<std::vector<int>>> act(m, std::vector<std::vector<int>>(m));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) {
      int sa = F.size[I.mtgt[f]], ta = G.size[I.msrc[g]];
      int sb = F.size[I.msrc[f]], tb = G.size[I.mtgt[g]];
      std::vector<int>& v = act[f][g];
      v.resize(size[I.mtgt[f]][I.msrc[g]]);
      for (int x = 0; x < static_cast<int>(v.size()); ++x) {
        std::vector<int> phi = hom_decode(x, sa, std::max(ta, 1));
        std::vector<int> out(sb);
        for (int y = 0; y < sb; ++y) out[y] = G.act[g][phi[F.act[f][y]]];
        v[x] = hom_encode(out, std::max(tb, 1));
      }
    }
  return make_set_bifunctor(C, std::move(size), std::move(act));
}

ModBifunctor tensor_bifunctor(const ModFunctor& F_on_op, const ModFunctor& G) {
  auto C = G.dom;
  require(*F_on_op.dom == op_cat(*C), "first factor must live on the opposite category");
  require(F_on_op.ring == G.ring, "tensor factors must share a ring");
  const FinCat& I = *C;
  std::vector<std::vector<int>> rank(I.nobj, std::vector<int>(I.nobj));
  for (int a = 0; a < I.nobj; ++a)
    for (int b = 0; b < I.nobj; ++b) rank[a][b] = F_on_op.rank[a] * G.rank[b];
  int m = I.nmor();
  std::vector<std::vector<SMat>> act(m, std::vector<SMat>(m));
  for (int f = 0; f < m; ++f)
    for (int g = 0; g < m; ++g) act[f][g] = kron(F_on_op.act[f], G.act[g]);
  return make_mod_bifunctor(C, G.ring, std::move(rank), std::move(act));
}

std::vector<std::vector<int>> end_bifunctor(const SetBifunctor& T) {
  const FinCat& I = *T.C;
  std::vector<std::vector<int>> out;
  std::vector<int> x(I.nobj, 0);
  for (int c = 0; c < I.nobj; ++c)
    if (T.size[c][c] == 0) return {};
  for (;;) {
    bool ok = true;
    for (int f = 0; f < I.nmor() && ok; ++f) {
      int c = I.msrc[f], d = I.mtgt[f];
      if (T.act[I.ident[c]][f][x[c]] != T.act[f][I.ident[d]][x[d]]) ok = false;
    }
    if (ok) out.push_back(x);
    int p = I.nobj - 1;
    while (p >= 0 && x[p] + 1 == T.size[p][p]) x[p--] = 0;
    if (p < 0) break;
    ++x[p];
  }
  return out;
}

ModPresentation cokernel_presentation(const Ring& ring, const SMat& rel) {
  ModPresentation P;
  P.ring = ring;
  P.ngens = rel.nr;
  if (ring.kind == RingKind::Z) {
    require(rel.is_integral(), "integral relations required over Z");
    SNFResult S = smith_normal_form(rel);
    P.free_rank = rel.nr - S.rank;
    for (const mpz_class& d : S.invariant_factors)
      if (d > 1) P.torsion.push_back(d);
  } else {
    P.free_rank = rel.nr - rref(rel, ring).rank;
  }
  return P;
}

std::string ModPresentation::to_string() const {
  std::string s = cat(ring.name(), "^", free_rank);
  for (const mpz_class& d : torsion) s += cat(" + ", ring.name(), "/", d.get_str());
  return s;
}

ModPresentation coend_bifunctor(const ModBifunctor& T) {
  const FinCat& I = *T.C;
  std::vector<int> off(I.nobj + 1, 0);
  for (int c = 0; c < I.nobj; ++c) off[c + 1] = off[c] + T.rank[c][c];
  long ncols = 0;
  for (int f = 0; f < I.nmor(); ++f)
    if (f != I.ident[I.msrc[f]]) ncols += T.rank[I.mtgt[f]][I.msrc[f]];
  SMat rel(off[I.nobj], static_cast<int>(ncols));
  int cur = 0;
  for (int f = 0; f < I.nmor(); ++f) {
    int c = I.msrc[f], d = I.mtgt[f];
    if (f == I.ident[c]) continue;
    blit(rel, T.act[f][I.ident[c]], off[c], cur, 1);    // T(d,c) -> T(c,c)
    blit(rel, T.act[I.ident[d]][f], off[d], cur, -1);   // T(d,c) -> T(d,d)
    cur += T.rank[d][c];
  }
  return cokernel_presentation(T.ring, rel);
}

ModPresentation colimit(const ModFunctor& F) {
  const FinCat& I = *F.dom;
  std::vector<int> off(I.nobj + 1, 0);
  for (int c = 0; c < I.nobj; ++c) off[c + 1] = off[c] + F.rank[c];
  long ncols = 0;
  for (int f = 0; f < I.nmor(); ++f)
    if (f != I.ident[I.msrc[f]]) ncols += F.rank[I.msrc[f]];
  SMat rel(off[I.nobj], static_cast<int>(ncols));
  int cur = 0;
  for (int f = 0; f < I.nmor(); ++f) {
    int c = I.msrc[f], d = I.mtgt[f];
    if (f == I.ident[c]) continue;
    blit(rel, SMat::identity(F.rank[c]), off[c], cur, 1);
    blit(rel, F.act[f], off[d], cur, -1);
    cur += F.rank[c];
  }
  return cokernel_presentation(F.ring, rel);
}

SetColimit colimit_set(const SetFunctor& F) {
  const FinCat& I = *F.dom;
  std::vector<int> off(I.nobj + 1, 0);
  for (int c = 0; c < I.nobj; ++c) off[c + 1] = off[c] + F.size[c];
  std::vector<int> parent(off[I.nobj]);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int f = 0; f < I.nmor(); ++f) {
    int c = I.msrc[f], d = I.mtgt[f];
    for (int x = 0; x < F.size[c]; ++x) {
      int a = find(off[c] + x), b = find(off[d] + F.act[f][x]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  SetColimit out;
  std::map<int, int> cls;
  out.class_of.resize(I.nobj);
  for (int c = 0; c < I.nobj; ++c)
    for (int x = 0; x < F.size[c]; ++x) {
      int r = find(off[c] + x);
      auto it = cls.find(r);
      if (it == cls.end()) it = cls.emplace(r, out.size++).first;
      out.class_of[c].push_back(it->second);
    }
  return out;
}

KanExtension left_kan(const CatFunctor& i, const ModFunctor& G) {
  require(same_cat(G.dom, i.dom), "functor must live on the domain of i");
  const FinCat& I = *i.dom;
  const FinCat& J = *i.cod;
  KanExtension K;
  K.J = i.cod;
  K.ring = G.ring;
  K.comma.resize(J.nobj);
  std::vector<std::vector<int>> goff(J.nobj);  // generator offset per comma entry
  std::vector<long> ngens(J.nobj, 0);
  std::vector<std::map<std::pair<int, int>, int>> idx(J.nobj);
  for (int j = 0; j < J.nobj; ++j) {
    for (int c = 0; c < I.nobj; ++c)
      for (int f = 0; f < J.nmor(); ++f)
        if (J.msrc[f] == i.obj[c] && J.mtgt[f] == j) {
          idx[j][{c, f}] = static_cast<int>(K.comma[j].size());
          goff[j].push_back(static_cast<int>(ngens[j]));
          K.comma[j].push_back(CommaObj{c, f});
          ngens[j] += G.rank[c];
        }
  }
  // relation columns, one per (u : c -> c' in I, f' : i(c') -> j, basis vector)
  std::vector<std::vector<std::pair<int, int>>> relcols(J.nobj);
  for (int j = 0; j < J.nobj; ++j) {
    long ncols = 0;
    for (int u = 0; u < I.nmor(); ++u) {
      if (u == I.ident[I.msrc[u]]) continue;
      int c2 = I.mtgt[u];
      for (int f2 = 0; f2 < J.nmor(); ++f2)
        if (J.msrc[f2] == i.obj[c2] && J.mtgt[f2] == j) {
          relcols[j].push_back({u, f2});
          ncols += G.rank[I.msrc[u]];
        }
    }
    SMat rel(static_cast<int>(ngens[j]), static_cast<int>(ncols));
    int cur = 0;
    for (const auto& [u, f2] : relcols[j]) {
      int c = I.msrc[u], c2 = I.mtgt[u];
      int f = J.comp[f2][i.mor[u]];
      blit(rel, SMat::identity(G.rank[c]), goff[j][idx[j].at({c, f})], cur, 1);
      blit(rel, G.act[u], goff[j][idx[j].at({c2, f2})], cur, -1);
      cur += G.rank[c];
    }
    K.rel.push_back(std::move(rel));
  }
  for (int g = 0; g < J.nmor(); ++g) {
    int j = J.msrc[g], j2 = J.mtgt[g];
    SMat A(static_cast<int>(ngens[j2]), static_cast<int>(ngens[j]));
    for (std::size_t t = 0; t < K.comma[j].size(); ++t) {
      const CommaObj& o = K.comma[j][t];
      int dest = goff[j2][idx[j2].at({o.c, J.comp[g][o.f]})];
      for (int x = 0; x < G.rank[o.c]; ++x) A.add_to(dest + x, goff[j][t] + x, 1);
    }
    K.act.push_back(std::move(A));
  }
  // pointwise colimits via the two-term complexes
  std::vector<std::shared_ptr<const ChainComplex>> cx(J.nobj);
  std::vector<HomologyBasis> hb;
  bool all_free = true;
  for (int j = 0; j < J.nobj; ++j) {
    cx[j] = std::make_shared<const ChainComplex>(make_complex(
        G.ring, {{0, static_cast<int>(ngens[j])}, {1, K.rel[j].nc}}, {{1, K.rel[j]}}));
    hb.push_back(homology_basis(*cx[j], 0));
    K.free_rank.push_back(hb[j].betti);
    K.torsion.push_back(hb[j].torsion);
    if (!hb[j].torsion.empty()) all_free = false;
    SMat co(static_cast<int>(hb[j].betti), static_cast<int>(ngens[j]));
    for (long t = 0; t < ngens[j]; ++t) {
      std::vector<mpq_class> e(ngens[j], 0);
      e[t] = 1;
      auto cc = hb[j].class_coords(e);
      for (std::size_t r = 0; r < cc.size(); ++r)
        if (cc[r] != 0) co.add_to(static_cast<int>(r), static_cast<int>(t), cc[r]);
    }
    K.cocone.push_back(std::move(co));
  }
  if (all_free) {
    std::vector<int> rank;
    for (int j = 0; j < J.nobj; ++j) rank.push_back(static_cast<int>(K.free_rank[j]));
    std::vector<SMat> act;
    for (int g = 0; g < J.nmor(); ++g) {
      int j = J.msrc[g], j2 = J.mtgt[g];
      // relation columns map along (u, f') -> (u, g f')
      std::map<std::pair<int, int>, int> colpos;
      std::vector<int> coff(relcols[j2].size() + 1, 0);
      for (std::size_t t = 0; t < relcols[j2].size(); ++t) {
        colpos[relcols[j2][t]] = static_cast<int>(t);
        coff[t + 1] = coff[t] + G.rank[I.msrc[relcols[j2][t].first]];
      }
      SMat P(K.rel[j2].nc, K.rel[j].nc);
      int cur = 0;
      for (const auto& [u, f2] : relcols[j]) {
        int dest = coff[colpos.at({u, J.comp[g][f2]})];
        for (int x = 0; x < G.rank[I.msrc[u]]; ++x, ++cur) P.add_to(dest + x, cur, 1);
      }
      ChainMap cm = make_chain_map(cx[j], cx[j2], {{0, K.act[g]}, {1, P}});
      act.push_back(induced_map(cm, 0));
    }
    K.kan = make_mod_functor(K.J, G.ring, std::move(rank), std::move(act));
  }
  return K;
}

SetKan left_kan_set(const CatFunctor& i, const SetFunctor& G) {
  require(same_cat(G.dom, i.dom), "functor must live on the domain of i");
  const FinCat& I = *i.dom;
  const FinCat& J = *i.cod;
  SetKan K;
  std::vector<std::vector<CommaObj>> comma(J.nobj);
  std::vector<std::map<std::pair<int, int>, int>> idx(J.nobj);
  K.leg.resize(J.nobj);
  std::vector<int> size(J.nobj, 0);
  std::vector<std::vector<int>> act(J.nmor());
  for (int j = 0; j < J.nobj; ++j)
    for (int c = 0; c < I.nobj; ++c)
      for (int f = 0; f < J.nmor(); ++f)
        if (J.msrc[f] == i.obj[c] && J.mtgt[f] == j) {
          idx[j][{c, f}] = static_cast<int>(comma[j].size());
          comma[j].push_back(CommaObj{c, f});
        }
  for (int j = 0; j < J.nobj; ++j) {
    std::vector<int> off(comma[j].size() + 1, 0);
    for (std::size_t t = 0; t < comma[j].size(); ++t)
      off[t + 1] = off[t] + G.size[comma[j][t].c];
    std::vector<int> parent(off.back());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (int u = 0; u < I.nmor(); ++u) {
      int c = I.msrc[u], c2 = I.mtgt[u];
      for (int f2 = 0; f2 < J.nmor(); ++f2)
        if (J.msrc[f2] == i.obj[c2] && J.mtgt[f2] == j) {
          int f = J.comp[f2][i.mor[u]];
          int s = off[idx[j].at({c, f})], d = off[idx[j].at({c2, f2})];
          for (int x = 0; x < G.size[c]; ++x) {
            int a = find(s + x), b = find(d + G.act[u][x]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
          }
        }
    }
    std::map<int, int> cls;
    K.leg[j].resize(comma[j].size());
    for (std::size_t t = 0; t < comma[j].size(); ++t)
      for (int x = 0; x < G.size[comma[j][t].c]; ++x) {
        int r = find(off[t] + x);
        auto it = cls.find(r);
        if (it == cls.end()) it = cls.emplace(r, size[j]++).first;
        K.leg[j][t].push_back(it->second);
      }
  }
  for (int g = 0; g < J.nmor(); ++g) {
    int j = J.msrc[g], j2 = J.mtgt[g];
    act[g].assign(size[j], -1);
    for (std::size_t t = 0; t < comma[j].size(); ++t) {
      const CommaObj& o = comma[j][t];
      int t2 = idx[j2].at({o.c, J.comp[g][o.f]});
      for (int x = 0; x < G.size[o.c]; ++x) {
        int from = K.leg[j][t][x], to = K.leg[j2][t2][x];
        if (act[g][from] == -1)
          act[g][from] = to;
        else
          require_property(act[g][from] == to, "Kan action is not well defined on classes");
      }
    }
    for (int v : act[g]) require_property(v >= 0, "Kan action misses a class");
  }
  K.kan = make_set_functor(i.cod, std::move(size), std::move(act));
  return K;
}

ModPresentation coend_presented(const ModFunctor& F_on_op, const KanExtension& K) {
  const FinCat& J = *K.J;
  require(*F_on_op.dom == op_cat(J), "contravariant factor must live on the opposite category");
  require(F_on_op.ring == K.ring, "rings must agree");
  std::vector<long> ng(J.nobj);
  std::vector<long> off(J.nobj + 1, 0);
  for (int j = 0; j < J.nobj; ++j) {
    ng[j] = static_cast<long>(F_on_op.rank[j]) * K.rel[j].nr;
    off[j + 1] = off[j] + ng[j];
  }
  long ncols = 0;
  for (int j = 0; j < J.nobj; ++j) ncols += static_cast<long>(F_on_op.rank[j]) * K.rel[j].nc;
  for (int g = 0; g < J.nmor(); ++g) {
    if (g == J.ident[J.msrc[g]]) continue;
    ncols += static_cast<long>(F_on_op.rank[J.mtgt[g]]) * K.rel[J.msrc[g]].nr;
  }
  SMat rel(static_cast<int>(off[J.nobj]), static_cast<int>(ncols));
  int cur = 0;
  for (int j = 0; j < J.nobj; ++j) {
    SMat block = kron(SMat::identity(F_on_op.rank[j]), K.rel[j]);
    blit(rel, block, static_cast<int>(off[j]), cur, 1);
    cur += block.nc;
  }
  for (int g = 0; g < J.nmor(); ++g) {
    int j = J.msrc[g], j2 = J.mtgt[g];
    if (g == J.ident[j]) continue;
    SMat left = kron(F_on_op.act[g], SMat::identity(K.rel[j].nr));
    SMat right = kron(SMat::identity(F_on_op.rank[j2]), K.act[g]);
    blit(rel, left, static_cast<int>(off[j]), cur, 1);
    blit(rel, right, static_cast<int>(off[j2]), cur, -1);
    cur += left.nc;
  }
  return cokernel_presentation(K.ring, rel);
}

}  // namespace hodgehh
