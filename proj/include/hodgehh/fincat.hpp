#pragma once
#include "hodgehh/simplicial.hpp"

namespace hodgehh {

// finite category as a total composition table
struct FinCat {
  int nobj = 0;
  std::vector<int> msrc, mtgt;         // per morphism
  std::vector<int> ident;              // per object
  std::vector<std::vector<int>> comp;  // comp[g][f] = g after f, -1 when not composable

  int nmor() const { return static_cast<int>(msrc.size()); }
  bool composable(int g, int f) const { return msrc[g] == mtgt[f]; }
  int compose(int g, int f) const;
  void validate() const;  // unit laws, associativity, closure
  bool operator==(const FinCat&) const = default;
};

FinCat terminal_cat();
FinCat discrete_cat(int n);
FinCat chain_cat(int n);  // the poset 0 < 1 < ... < n
FinCat arrow_cat();       // chain_cat(1)
FinCat parallel_pair_cat();
FinCat iso_cat();  // two objects, a pair of mutually inverse arrows
FinCat op_cat(const FinCat& C);

std::string cat_to_text(const FinCat& C);
FinCat cat_from_text(const std::string& text);

struct CatFunctor {
  std::shared_ptr<const FinCat> dom, cod;
  std::vector<int> obj, mor;
};
CatFunctor make_cat_functor(std::shared_ptr<const FinCat> dom, std::shared_ptr<const FinCat> cod,
                            std::vector<int> obj, std::vector<int> mor);
CatFunctor identity_cat_functor(std::shared_ptr<const FinCat> C);

// functor into finite sets {0..size-1}
struct SetFunctor {
  std::shared_ptr<const FinCat> dom;
  std::vector<int> size;
  std::vector<std::vector<int>> act;  // per morphism: size[src] values below size[tgt]
};
SetFunctor make_set_functor(std::shared_ptr<const FinCat> dom, std::vector<int> size,
                            std::vector<std::vector<int>> act);

// functor into free modules
struct ModFunctor {
  std::shared_ptr<const FinCat> dom;
  Ring ring;
  std::vector<int> rank;
  std::vector<SMat> act;  // per morphism: rank[tgt] x rank[src]
};
ModFunctor make_mod_functor(std::shared_ptr<const FinCat> dom, const Ring& ring,
                            std::vector<int> rank, std::vector<SMat> act);
ModFunctor constant_mod_functor(std::shared_ptr<const FinCat> dom, const Ring& ring, int rank);
// F composed with i (F defined on i's codomain)
ModFunctor restrict_functor(const ModFunctor& F, const CatFunctor& i);
SetFunctor restrict_set_functor(const SetFunctor& F, const CatFunctor& i);

// all natural families eta[c] : F(c) -> G(c), lexicographically ordered
std::vector<std::vector<std::vector<int>>> nat_transformations(const SetFunctor& F,
                                                               const SetFunctor& G);

// T : C^op x C -> Set; act[f][g] maps T(tgt f, src g) to T(src f, tgt g)
struct SetBifunctor {
  std::shared_ptr<const FinCat> C;
  std::vector<std::vector<int>> size;
  std::vector<std::vector<std::vector<int>>> act;
};
SetBifunctor make_set_bifunctor(std::shared_ptr<const FinCat> C,
                                std::vector<std::vector<int>> size,
                                std::vector<std::vector<std::vector<int>>> act);

struct ModBifunctor {
  std::shared_ptr<const FinCat> C;
  Ring ring;
  std::vector<std::vector<int>> rank;
  std::vector<std::vector<SMat>> act;
};
ModBifunctor make_mod_bifunctor(std::shared_ptr<const FinCat> C, const Ring& ring,
                                std::vector<std::vector<int>> rank,
                                std::vector<std::vector<SMat>> act);

// T(a,b) = all maps F(a) -> G(b), encoded as base-|G(b)| digit strings
SetBifunctor hom_bifunctor(const SetFunctor& F, const SetFunctor& G);
int hom_encode(const std::vector<int>& m, int tgt_size);
std::vector<int> hom_decode(long code, int src_size, int tgt_size);

// external tensor of a contravariant F (a functor on op_cat(C)) with a covariant G
ModBifunctor tensor_bifunctor(const ModFunctor& F_on_op, const ModFunctor& G);

// equalizer of prod_c T(c,c) over all naturality constraints; tuples in lex order
std::vector<std::vector<int>> end_bifunctor(const SetBifunctor& T);

// cokernel in Smith-normalized form
struct ModPresentation {
  Ring ring;
  long ngens = 0;
  long free_rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors above 1
  bool same_module(const ModPresentation& o) const {
    return ring == o.ring && free_rank == o.free_rank && torsion == o.torsion;
  }
  std::string to_string() const;
};
ModPresentation cokernel_presentation(const Ring& ring, const SMat& rel);

ModPresentation coend_bifunctor(const ModBifunctor& T);
ModPresentation colimit(const ModFunctor& F);

struct SetColimit {
  int size = 0;
  std::vector<std::vector<int>> class_of;  // per object
};
SetColimit colimit_set(const SetFunctor& F);

// pointwise left Kan extension along i, with the comma presentations kept
struct CommaObj {
  int c;  // object of the domain of i
  int f;  // arrow i(c) -> j
  bool operator==(const CommaObj&) const = default;
};
struct KanExtension {
  std::shared_ptr<const FinCat> J;
  Ring ring;
  std::vector<std::vector<CommaObj>> comma;  // per object of J
  std::vector<SMat> rel;                     // presentation of each pointwise colimit
  std::vector<SMat> act;                     // generator-level action of each J-arrow
  std::vector<long> free_rank;
  std::vector<std::vector<mpz_class>> torsion;
  std::optional<ModFunctor> kan;   // the free-module functor, when no torsion appears
  std::vector<SMat> cocone;        // free coordinates of each generator, per object
};
KanExtension left_kan(const CatFunctor& i, const ModFunctor& G);

struct SetKan {
  SetFunctor kan;
  std::vector<std::vector<std::vector<int>>> leg;  // per object, per comma entry: G(c) -> kan(j)
};
SetKan left_kan_set(const CatFunctor& i, const SetFunctor& G);

// coend of F tensored against a presented functor, computed on generators
ModPresentation coend_presented(const ModFunctor& F_on_op, const KanExtension& K);

// twisted arrow category: objects are arrows, maps f -> g are (u, v) with g = v f u
struct TwCat {
  std::shared_ptr<const FinCat> cat;
  std::shared_ptr<const FinCat> base, opbase;
  std::vector<int> obj_arrow;
  std::vector<std::pair<int, int>> mor_uv;
  CatFunctor source;  // to op(base)
  CatFunctor target;  // to base
};
TwCat tw_cat(std::shared_ptr<const FinCat> C);

BuiltSSet nerve(std::shared_ptr<const FinCat> C, int N);

// both sides of the comparison at level N, with the canonical isomorphism
struct TwistedNerve {
  TwCat T;
  BuiltSSet nerve_tw, nerve_c, tw_of_nerve;
  SimplicialMap iso;  // nerve(Tw C) -> twisted(nerve C)
};
TwistedNerve twisted_nerve(std::shared_ptr<const FinCat> C, int N);

// deterministic canonical-order enumerations; cap = 0 means unlimited
std::vector<FinCat> enumerate_categories(int max_obj, int max_mor);

// reads the categories listed in dir/index.txt, one serialized category per file,
// validating each table on load
std::vector<FinCat> load_corpus_dir(const std::string& dir);
std::vector<SetFunctor> enumerate_set_functors(std::shared_ptr<const FinCat> C, int max_size,
                                               long cap = 0);
std::vector<ModFunctor> enumerate_mod_functors(std::shared_ptr<const FinCat> C, const Ring& ring,
                                               int max_rank, long cap = 0);
std::vector<CatFunctor> enumerate_cat_functors(std::shared_ptr<const FinCat> I,
                                               std::shared_ptr<const FinCat> J, long cap = 0);

}  // namespace hodgehh
