#include "hodgehh/simplicial.hpp"

#include <sstream>

namespace hodgehh {

// codegeneracy sigma_k: [n+1] -> [n]
static int sigma(int k, int x) { return x <= k ? x : x - 1; }

std::vector<int> word_to_map(const Word& w, int q) {
  // the word s_{w0} ... s_{wt} applied to a generator is the operator
  // X(sigma_{wt} o ... o sigma_{w0}), so fold the sigmas in word order
  std::vector<int> f(q + 1);
  for (int x = 0; x <= q; ++x) f[x] = x;
  int cod = q;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k > 0) require(w[k] < w[k - 1], "degeneracy word not strictly decreasing");
    require(w[k] >= 0 && w[k] <= cod - 1, "degeneracy index out of range in word");
    for (auto& v : f) v = sigma(w[k], v);
    --cod;
  }
  return f;
}

Word map_to_word(const std::vector<int>& f) {
  // repeat positions, descending, are exactly the canonical word
  require(!f.empty() && f[0] == 0, "operator vector must start at 0");
  for (std::size_t x = 0; x + 1 < f.size(); ++x)
    require(f[x + 1] == f[x] || f[x + 1] == f[x] + 1, "operator vector not a monotone surjection");
  Word w;
  for (int x = static_cast<int>(f.size()) - 2; x >= 0; --x)
    if (f[x + 1] == f[x]) w.push_back(x);
  return w;
}

std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> f(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) {
    require(inner[x] >= 0 && inner[x] < static_cast<int>(outer.size()), "operator composition shape mismatch");
    f[x] = outer[inner[x]];
  }
  return f;
}

SimplexRef SimplicialSet::face(const SimplexRef& x, int i) const {
  int q = x.dim;
  require(q >= 1 && i >= 0 && i <= q, "face index out of range");
  int m = q - static_cast<int>(x.word.size());
  std::vector<int> f = word_to_map(x.word, q);
  std::vector<int> fd;  // f o delta_i
  fd.reserve(q);
  for (int t = 0; t <= q; ++t)
    if (t != i) fd.push_back(f[t]);
  // find the value missed by fd, if any
  std::vector<char> hit(m + 1, 0);
  for (int v : fd) hit[v] = 1;
  int missed = -1;
  for (int v = 0; v <= m; ++v)
    if (!hit[v]) { missed = v; break; }
  if (missed < 0) return SimplexRef{q - 1, map_to_word(fd), x.gen};
  for (auto& v : fd)
    if (v > missed) --v;
  const SimplexRef& inner = face_of[m][x.gen][missed];
  std::vector<int> w2 = word_to_map(inner.word, m - 1);
  std::vector<int> total = compose_maps(w2, fd);
  return SimplexRef{q - 1, map_to_word(total), inner.gen};
}

SimplexRef SimplicialSet::degen(const SimplexRef& x, int i) const {
  int q = x.dim;
  require(i >= 0 && i <= q, "degeneracy index out of range");
  std::vector<int> f = word_to_map(x.word, q);
  std::vector<int> fs;  // f o sigma_i duplicates entry i
  fs.reserve(q + 2);
  for (int t = 0; t <= q; ++t) {
    fs.push_back(f[t]);
    if (t == i) fs.push_back(f[t]);
  }
  return SimplexRef{q + 1, map_to_word(fs), x.gen};
}

bool SimplicialSet::over_basepoint(const SimplexRef& x) const {
  if (!basepoint) return false;
  return x.dim == static_cast<int>(x.word.size()) && x.gen == *basepoint;
}

long SimplicialSet::count(int q) const {
  require(q >= 0, "negative dimension");
  long total = 0;
  for (int m = 0; m <= std::min(q, N); ++m) total += ngen[m] * binom(q, m);
  return total;
}

// enumerate monotone surjections [q] -> [m] in lexicographic order
static void enum_surjections(int q, int m, std::vector<std::vector<int>>& out) {
  std::vector<int> f(q + 1);
  std::function<void(int, int)> rec = [&](int pos, int val) {
    if (pos == q + 1) {
      if (val == m) out.push_back(f);
      return;
    }
    // remaining positions must still reach m
    f[pos] = val;
    if (val + (q - pos) >= m) rec(pos + 1, val);
    if (val < m) {
      f[pos] = val + 1;
      rec(pos + 1, val + 1);
    }
  };
  f[0] = 0;
  rec(1, 0);
}

std::vector<SimplexRef> SimplicialSet::all_simplices(int q) const {
  std::vector<SimplexRef> out;
  for (int m = 0; m <= std::min(q, N); ++m) {
    if (ngen[m] == 0) continue;
    std::vector<std::vector<int>> surj;
    enum_surjections(q, m, surj);
    for (int g = 0; g < ngen[m]; ++g)
      for (const auto& f : surj) out.push_back(SimplexRef{q, map_to_word(f), g});
  }
  return out;
}

std::string SimplicialSet::name_of(int m, int g) const {
  if (m < static_cast<int>(names.size()) && g < static_cast<int>(names[m].size()) &&
      !names[m][g].empty())
    return names[m][g];
  return cat("x", m, "_", g);
}

void SimplicialSet::validate() const {
  require(N >= 0, "negative truncation");
  require(static_cast<int>(ngen.size()) == N + 1, "generator count table has wrong length");
  require(static_cast<int>(face_of.size()) == N + 1, "face table has wrong length");
  require(face_of[0].empty() || static_cast<int>(face_of[0].size()) == ngen[0],
          "dimension 0 face table must be empty");
  for (int m = 0; m <= N; ++m) require(ngen[m] >= 0, "negative generator count");
  for (int m = 1; m <= N; ++m) {
    require(static_cast<int>(face_of[m].size()) == ngen[m], "face table row count mismatch");
    for (int g = 0; g < ngen[m]; ++g) {
      require(static_cast<int>(face_of[m][g].size()) == m + 1, "generator needs m+1 faces");
      for (const SimplexRef& r : face_of[m][g]) {
        require(r.dim == m - 1, "face has wrong dimension");
        int gm = r.dim - static_cast<int>(r.word.size());
        require(gm >= 0 && gm <= N && r.gen >= 0 && r.gen < ngen[gm], "face generator out of range");
        word_to_map(r.word, r.dim);  // validates the word
      }
    }
  }
  if (basepoint) require(ngen.size() > 0 && *basepoint >= 0 && *basepoint < ngen[0],
                         "basepoint is not a 0-generator");
  // simplicial identities d_i d_j = d_{j-1} d_i (i < j) on every generator
  for (int m = 2; m <= N; ++m)
    for (int g = 0; g < ngen[m]; ++g)
      for (int j = 1; j <= m; ++j)
        for (int i = 0; i < j; ++i) {
          SimplexRef a = face(face(gen(m, g), j), i);
          SimplexRef b = face(face(gen(m, g), i), j - 1);
          if (!(a == b))
            require_property(false, cat("simplicial identity d_", i, " d_", j,
                                        " fails on generator ", name_of(m, g)));
        }
}

int LevelIndex::of(int q, const SimplexRef& r) const {
  auto it = index[q].find(r);
  require(it != index[q].end(), "simplex not present in level index");
  return it->second;
}

LevelIndex level_index(const SimplicialSet& X, int maxq) {
  LevelIndex L;
  L.list.resize(maxq + 1);
  L.index.resize(maxq + 1);
  for (int q = 0; q <= maxq; ++q) {
    L.list[q] = X.all_simplices(q);
    for (std::size_t i = 0; i < L.list[q].size(); ++i)
      L.index[q][L.list[q][i]] = static_cast<int>(i);
  }
  return L;
}

bool same_shape(const SimplicialSet& A, const SimplicialSet& B) {
  return A.N == B.N && A.ngen == B.ngen && A.face_of == B.face_of && A.basepoint == B.basepoint;
}

SimplexRef SimplicialMap::apply(const SimplexRef& x) const {
  int m = x.dim - static_cast<int>(x.word.size());
  const SimplexRef& img = image[m][x.gen];
  std::vector<int> f = word_to_map(x.word, x.dim);
  std::vector<int> w2 = word_to_map(img.word, m);
  std::vector<int> total = compose_maps(w2, f);
  return SimplexRef{x.dim, map_to_word(total), img.gen};
}

SimplicialMap make_simplicial_map(std::shared_ptr<const SimplicialSet> src,
                                  std::shared_ptr<const SimplicialSet> tgt,
                                  std::vector<std::vector<SimplexRef>> image) {
  require(src && tgt, "simplicial map endpoints missing");
  require(tgt->N >= src->N, "target truncation too small for simplicial map");
  require(static_cast<int>(image.size()) == src->N + 1, "image table has wrong length");
  SimplicialMap F{std::move(src), std::move(tgt), std::move(image)};
  for (int m = 0; m <= F.src->N; ++m) {
    require(static_cast<int>(F.image[m].size()) == F.src->ngen[m], "image row count mismatch");
    for (int g = 0; g < F.src->ngen[m]; ++g) {
      const SimplexRef& r = F.image[m][g];
      require(r.dim == m, "generator image has wrong dimension");
      int gm = r.dim - static_cast<int>(r.word.size());
      require(gm >= 0 && gm <= F.tgt->N && r.gen >= 0 && r.gen < F.tgt->ngen[gm],
              "generator image out of range");
    }
  }
  for (int m = 1; m <= F.src->N; ++m)
    for (int g = 0; g < F.src->ngen[m]; ++g)
      for (int i = 0; i <= m; ++i) {
        SimplexRef a = F.apply(F.src->face_of[m][g][i]);
        SimplexRef b = F.tgt->face(F.apply(F.src->gen(m, g)), i);
        if (!(a == b))
          require(false, cat("map does not commute with d_", i, " on generator ",
                             F.src->name_of(m, g)));
      }
  return F;
}

SimplicialMap identity_smap(std::shared_ptr<const SimplicialSet> X) {
  std::vector<std::vector<SimplexRef>> image(X->N + 1);
  for (int m = 0; m <= X->N; ++m)
    for (int g = 0; g < X->ngen[m]; ++g) image[m].push_back(X->gen(m, g));
  return make_simplicial_map(X, X, std::move(image));
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
  require(f.tgt == g.src || same_shape(*f.tgt, *g.src), "simplicial maps not composable");
  std::vector<std::vector<SimplexRef>> image(f.src->N + 1);
  for (int m = 0; m <= f.src->N; ++m)
    for (int gg = 0; gg < f.src->ngen[m]; ++gg) image[m].push_back(g.apply(f.image[m][gg]));
  return make_simplicial_map(f.src, g.tgt, std::move(image));
}

std::shared_ptr<const ChainComplex> chains(const SimplicialSet& X, const Ring& ring) {
  std::map<int, int> dims;
  for (int m = 0; m <= X.N; ++m) dims[m] = X.ngen[m];
  std::map<int, SMat> diff;
  std::map<int, std::vector<std::string>> labels;
  for (int m = 0; m <= X.N; ++m) {
    std::vector<std::string> row;
    for (int g = 0; g < X.ngen[m]; ++g) row.push_back(X.name_of(m, g));
    labels[m] = std::move(row);
  }
  for (int m = 1; m <= X.N; ++m) {
    SMat d(X.ngen[m - 1], X.ngen[m]);
    for (int g = 0; g < X.ngen[m]; ++g)
      for (int i = 0; i <= m; ++i) {
        const SimplexRef& r = X.face_of[m][g][i];
        if (!r.word.empty()) continue;  // degenerate faces vanish in normalized chains
        d.add_to(r.gen, g, (i % 2 == 0) ? 1 : -1);
      }
    diff[m] = std::move(d);
  }
  return std::make_shared<const ChainComplex>(make_complex(ring, dims, diff, {}, labels));
}

ChainMap chains_map(const SimplicialMap& f, std::shared_ptr<const ChainComplex> Cs,
                    std::shared_ptr<const ChainComplex> Ct) {
  require(Cs && Ct, "chain map endpoints missing");
  std::map<int, SMat> blocks;
  for (int m = 0; m <= f.src->N; ++m) {
    SMat F(Ct->dim(m), Cs->dim(m));
    for (int g = 0; g < f.src->ngen[m]; ++g) {
      const SimplexRef& r = f.image[m][g];
      if (!r.word.empty()) continue;
      F.add_to(r.gen, g, 1);
    }
    blocks[m] = std::move(F);
  }
  return make_chain_map(Cs, Ct, blocks);
}

std::string sset_to_text(const SimplicialSet& X) {
  std::ostringstream os;
  os << "truncation " << X.N << "\n";
  os << "generators";
  for (int m = 0; m <= X.N; ++m) os << " " << X.ngen[m];
  os << "\n";
  if (X.basepoint) os << "basepoint " << *X.basepoint << "\n";
  for (int m = 1; m <= X.N; ++m)
    for (int g = 0; g < X.ngen[m]; ++g) {
      os << m << " " << g << " :";
      for (const SimplexRef& r : X.face_of[m][g]) {
        os << " (";
        for (std::size_t k = 0; k < r.word.size(); ++k) {
          if (k) os << " ";
          os << r.word[k];
        }
        os << "|" << r.gen << ")";
      }
      os << "\n";
    }
  return os.str();
}

SimplicialSet sset_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  SimplicialSet X;
  bool have_trunc = false, have_gens = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head == "truncation") {
      require(static_cast<bool>(ls >> X.N) && X.N >= 0, "bad truncation line");
      have_trunc = true;
    } else if (head == "generators") {
      require(have_trunc, "generators line before truncation");
      X.ngen.assign(X.N + 1, 0);
      for (int m = 0; m <= X.N; ++m)
        require(static_cast<bool>(ls >> X.ngen[m]), "generators line too short");
      X.face_of.assign(X.N + 1, {});
      for (int m = 1; m <= X.N; ++m)
        X.face_of[m].assign(X.ngen[m], std::vector<SimplexRef>(m + 1));
      have_gens = true;
    } else if (head == "basepoint") {
      int b;
      require(static_cast<bool>(ls >> b), "bad basepoint line");
      X.basepoint = b;
    } else {
      require(have_gens, "generator line before header");
      int m = std::stoi(head), g;
      std::string colon;
      require(static_cast<bool>(ls >> g >> colon) && colon == ":", "malformed generator line");
      require(m >= 1 && m <= X.N && g >= 0 && g < X.ngen[m], "generator id out of range");
      for (int i = 0; i <= m; ++i) {
        std::string tok;
        require(static_cast<bool>(ls >> tok), "generator line is missing faces");
        require(tok.size() >= 3 && tok.front() == '(' && tok.back() == ')',
                "face token must look like (word|gen)");
        std::string body = tok.substr(1, tok.size() - 2);
        auto bar = body.find('|');
        require(bar != std::string::npos, "face token must contain |");
        SimplexRef r;
        r.dim = m - 1;
        std::istringstream ws(body.substr(0, bar));
        int wv;
        while (ws >> wv) r.word.push_back(wv);
        r.gen = std::stoi(body.substr(bar + 1));
        X.face_of[m][g][i] = std::move(r);
      }
    }
  }
  require(have_trunc && have_gens, "missing truncation or generators header");
  X.validate();
  return X;
}

}  // namespace hodgehh
