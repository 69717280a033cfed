#pragma once
#include <functional>

#include "hodgehh/chain.hpp"

namespace hodgehh {

// Degeneracy word: strictly decreasing s-indices, outermost first, so the
// simplex reads s_{w0}(s_{w1}(... s_{wt}(generator))). The empty word is a
// nondegenerate simplex. Unique (Eilenberg-Zilber) normal form.
using Word = std::vector<int>;

struct SimplexRef {
  int dim = 0;
  Word word;
  int gen = 0;
  auto operator<=>(const SimplexRef&) const = default;
};

// A word from generator dimension m up to dimension q is the same thing as a
// monotone surjection [q] -> [m], stored as its value vector of length q+1.
std::vector<int> word_to_map(const Word& w, int q);
Word map_to_word(const std::vector<int>& f);
// pointwise outer(inner(x))
std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner);

// Truncated simplicial set presented by nondegenerate generators and the
// faces of each generator.
struct SimplicialSet {
  int N = 0;
  std::vector<int> ngen;  // size N+1
  // face_of[m][g][i] = d_i of generator g in dimension m, for m = 1..N
  std::vector<std::vector<std::vector<SimplexRef>>> face_of;
  std::optional<int> basepoint;  // 0-generator id
  std::vector<std::vector<std::string>> names;  // optional, per dimension

  bool reduced() const { return ngen.size() > 0 && ngen[0] == 1 && basepoint == 0; }
  SimplexRef gen(int m, int g) const { return SimplexRef{m, {}, g}; }
  SimplexRef face(const SimplexRef& x, int i) const;
  SimplexRef degen(const SimplexRef& x, int i) const;
  // lies over the basepoint (an iterated degeneracy of it, or the point itself)
  bool over_basepoint(const SimplexRef& x) const;
  long count(int q) const;  // all simplices in dimension q, degenerate included
  std::vector<SimplexRef> all_simplices(int q) const;
  std::string name_of(int m, int g) const;
  void validate() const;  // table shapes and the simplicial identities
};

// same generators, faces and basepoint (names ignored)
bool same_shape(const SimplicialSet& A, const SimplicialSet& B);

// per-level simplex lists with inverse lookup, for key-building constructors
struct LevelIndex {
  std::vector<std::vector<SimplexRef>> list;
  std::vector<std::map<SimplexRef, int>> index;
  int of(int q, const SimplexRef& r) const;
};
LevelIndex level_index(const SimplicialSet& X, int maxq);

// map determined by generator images; degeneracies follow by naturality
struct SimplicialMap {
  std::shared_ptr<const SimplicialSet> src, tgt;
  std::vector<std::vector<SimplexRef>> image;  // [m][g]
  SimplexRef apply(const SimplexRef& x) const;
};

SimplicialMap make_simplicial_map(std::shared_ptr<const SimplicialSet> src,
                                  std::shared_ptr<const SimplicialSet> tgt,
                                  std::vector<std::vector<SimplexRef>> image);
SimplicialMap identity_smap(std::shared_ptr<const SimplicialSet> X);
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

// normalized chains: one basis element per nondegenerate generator
std::shared_ptr<const ChainComplex> chains(const SimplicialSet& X, const Ring& ring = Ring::ZZ());
ChainMap chains_map(const SimplicialMap& f, std::shared_ptr<const ChainComplex> Cs,
                    std::shared_ptr<const ChainComplex> Ct);

// Explicit levelwise model: total simplex lists per level with face and
// degeneracy actions on opaque keys. from_explicit extracts the generators,
// cross-checking the whole table against the degeneracy-word engine.
using Key = std::vector<long>;

struct ExplicitModel {
  int N = 0;
  std::string label;
  std::function<std::vector<Key>(int q)> level;
  std::function<Key(int q, const Key&, int i)> face;   // q >= 1
  std::function<Key(int q, const Key&, int i)> degen;  // q <= N-1
  std::optional<Key> basepoint;
  std::function<std::string(int q, const Key&)> name;  // optional
};

struct BuiltSSet {
  std::shared_ptr<const SimplicialSet> S;
  std::vector<std::map<Key, SimplexRef>> key_to_ref;
  std::vector<std::vector<Key>> gen_key;  // per dimension

  const SimplexRef& ref_of(int q, const Key& k) const;
  const Key& key_of(int m, int g) const { return gen_key[m][g]; }
};

BuiltSSet from_explicit(const ExplicitModel& M);

BuiltSSet standard_simplex(int n, int N);
BuiltSSet standard_circle(int N);
BuiltSSet standard_sphere(int d, int N);
// levelwise product; keys pair up per-level simplex indices of the factors
BuiltSSet sset_product(const SimplicialSet& X, const SimplicialSet& Y);
// m-fold power with tuple keys (order: coordinate 0 first)
BuiltSSet sset_power(const SimplicialSet& X, int m);
// tuples with at most n coordinates away from the basepoint
BuiltSSet alpha_subcomplex(const SimplicialSet& X, int m, int n);
BuiltSSet op_sset(const SimplicialSet& X);
// level q = level 2q+1 of X; d~_i = d_{q-i} d_{q+1+i}, s~_i = s_{q-i} s_{q+1+i}
BuiltSSet twisted(const SimplicialSet& X, int N);

SimplicialSet cycle_graph(int k, const std::vector<int>& orientations, int N);

// projection tw(X) -> X^op x X restricting a (2q+1)-simplex to its two halves
struct HomProjection {
  BuiltSSet tw, opx, prod;
  SimplicialMap map;
};
HomProjection hom_projection(const SimplicialSet& X, int N);

// subdivided-circle model of the degree r self-map: c collapses every edge
// to the circle's 1-generator, w is the weak equivalence collapsing all but
// one edge; on H_1 the composite c o w^{-1} is multiplication by r
struct DegreeMap {
  std::shared_ptr<const SimplicialSet> C;
  SimplicialMap c, w;
};
DegreeMap degree_map(int r, int N);

std::string sset_to_text(const SimplicialSet& X);
SimplicialSet sset_from_text(const std::string& text);

}  // namespace hodgehh
