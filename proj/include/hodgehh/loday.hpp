#pragma once
#include "hodgehh/chain.hpp"
#include "hodgehh/simplicial.hpp"

namespace hodgehh {

// element of an algebra or module, sparse over its weighted basis
using AlgElt = std::map<int, mpq_class>;

// Commutative augmented algebra with a weight-homogeneous basis. Basis 0 is
// the unit and the only weight-0 element; the augmentation kills everything
// else. Products are truncated above weight W: structure constants are
// weight-additive and entries of weight > W are dropped, so the graded
// pieces of weight <= W are exact for the untruncated algebra.
struct AugAlgebra {
  Ring ring = Ring::QQ();
  int W = 0;
  std::string label;
  std::vector<std::string> name;
  std::vector<int> weight;
  std::vector<std::vector<AlgElt>> mul;  // mul[i][j], symmetric

  int dim() const { return static_cast<int>(name.size()); }
  int index_of(const std::string& n) const;  // -1 when absent
  AlgElt multiply(const AlgElt& a, const AlgElt& b) const;
  mpq_class augment(const AlgElt& a) const;  // coefficient of the unit
  std::string elt_to_string(const AlgElt& a) const;
};

// validates: unique weight-0 basis element = the unit, weight-additive
// structure constants within the truncation, commutativity, associativity on
// all basis triples, and that the augmentation is an algebra map
AugAlgebra make_aug_algebra(const Ring& ring, int W, std::vector<std::string> names,
                            std::vector<int> weights, std::vector<std::vector<AlgElt>> mul,
                            std::string label);

// plain-text format: optional "ring", required "truncate", optional "label"
// header lines, then sections BASIS (rows "name weight"), MUL (rows
// "a b -> c1 e1 + c2 e2", "-> 0" for zero), optional AUG (one row of dim
// rational values, validated against the forced augmentation). Unit products
// and products of weight > W may be omitted.
AugAlgebra algebra_from_text(const std::string& text, std::optional<Ring> ring_override = {});
AugAlgebra load_algebra(const std::string& path, std::optional<Ring> ring_override = {});

AugAlgebra ground_algebra(const Ring& ring);                        // just the unit
AugAlgebra poly_algebra(const Ring& ring, int W);                   // k[x], weights <= W
AugAlgebra truncated_poly_algebra(const Ring& ring, int m, int W);  // k[x]/x^m
AugAlgebra poly2_algebra(const Ring& ring, int W);                  // k[x,y], weights <= W
// same algebra with products and basis elements above weight Wnew dropped
AugAlgebra retruncate(const AugAlgebra& A, int Wnew);

// module over an augmented algebra, finite weighted basis, action table
struct AlgModule {
  std::string label;
  std::vector<std::string> name;
  std::vector<int> weight;
  std::vector<std::vector<AlgElt>> act;  // act[algebra basis][module basis]

  int dim() const { return static_cast<int>(name.size()); }
  int index_of(const std::string& n) const;
  AlgElt act_on(const AlgElt& a, const AlgElt& m, const AugAlgebra& A) const;
};

// validates weight-additive action constants, unit acting as the identity,
// and action associativity on all basis triples
AlgModule make_alg_module(const AugAlgebra& A, std::vector<std::string> names,
                          std::vector<int> weights, std::vector<std::vector<AlgElt>> act,
                          std::string label);

// sections BASIS and ACT (rows "a m -> ..."); unit rows and rows of weight
// > W may be omitted
AlgModule module_from_text(const AugAlgebra& A, const std::string& text);
AlgModule load_module(const AugAlgebra& A, const std::string& path);

AlgModule free_module(const AugAlgebra& A);          // M = R with the product action
AlgModule augmentation_module(const AugAlgebra& A);  // M = k through the augmentation

// matrix of R^{(x)s} -> R^{(x)t} induced by f: [s] -> [t], multiplying the
// tensor factors over each fiber (empty fiber: the unit). Function bases are
// indexed little-endian: position j contributes digit * dim^j.
SMat along_map(const AugAlgebra& R, int s, int t, const std::vector<int>& f);

// one basis tensor of the Loday construction: an algebra basis index per
// tensor coordinate, plus a module basis index when coefficients are present
struct TensorLabel {
  std::vector<int> entry;
  int mslot = -1;
  long weight = 0;
  int tag = 0;  // coordinates holding a non-unit factor, the filtration level
};

// Normalized chains of the simplicial module q |-> R^{(x)X_q} (coefficient
// version: the basepoint coordinate carries M). Basis per degree: functions
// from X_q to the algebra basis of total weight <= W whose support lies in
// the image of no single degeneracy. Degrees 0..N+1 are carried so homology
// is valid through degree N. On the circle, coords[q] is ordered so that
// coordinate 0 is the basepoint simplex and coordinate j the simplex whose
// unique nondegenerate edge sits at (j-1, j): the classical cyclic tensor
// layout (a_0; a_1, ..., a_q).
struct LodayComplex {
  std::shared_ptr<const AugAlgebra> R;
  std::shared_ptr<const AlgModule> M;  // null without coefficients
  std::shared_ptr<const SimplicialSet> X;
  int N = 0;
  bool circle = false;
  std::shared_ptr<const ChainComplex> C;
  std::vector<std::vector<SimplexRef>> coords;  // tensor coordinates per degree
  std::vector<std::vector<TensorLabel>> basis;
  std::vector<std::map<std::vector<int>, int>> lookup;  // entry (+ mslot) key

  // -1 when the tensor is degenerate or truncated away
  int index_of(int q, const std::vector<int>& entry, int mslot = -1) const;
};

LodayComplex loday_complex(std::shared_ptr<const AugAlgebra> R,
                           std::shared_ptr<const SimplicialSet> X, int N);
// X must be reduced; the basepoint simplex is removed from the tensor
// coordinates and its slot carries M
LodayComplex loday_with_coefficients(std::shared_ptr<const AugAlgebra> R,
                                     std::shared_ptr<const AlgModule> M,
                                     std::shared_ptr<const SimplicialSet> X, int N);

// subcomplex spanned by basis tensors with at most n non-unit factors
struct FiltrationPiece {
  int level = 0;
  std::shared_ptr<const ChainComplex> of;  // the ambient complex
  std::shared_ptr<const ChainComplex> F;
  ChainMap incl;                       // F -> ambient
  std::vector<std::vector<int>> pick;  // ambient basis indices per degree
};

FiltrationPiece weight_filtration(const LodayComplex& L, int n);
// inclusion F_a -> F_b between two pieces of the same complex, a <= b
ChainMap filtration_step(const FiltrationPiece& inner, const FiltrationPiece& outer);
// F_n / F_{n-1}: basis tensors with exactly n non-unit factors
ChainComplex weight_layer(const LodayComplex& L, int n);
// L / F_n: basis tensors with more than n non-unit factors
ChainComplex filtration_quotient(const LodayComplex& L, int n);

// chain-level shuffle product L_p (x) L_q -> L_{p+q} on the circle complex
// without coefficients: (p,q)-interleavings of the middle factors signed by
// the shuffle permutation, basepoint factors multiplied. Column index is
// a_index * dim(L_q) + b_index, matching kron.
SMat shuffle_matrix(const LodayComplex& L, int p, int q);
std::vector<mpq_class> shuffle_product(const LodayComplex& L, int p,
                                       const std::vector<mpq_class>& a, int q,
                                       const std::vector<mpq_class>& b);

// homology records for degrees 0..N, one per weight block with entries
std::vector<HomologyRecord> homology_by_weight(const LodayComplex& L);

}  // namespace hodgehh
