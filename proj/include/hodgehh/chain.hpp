#pragma once
#include <map>
#include <memory>
#include <optional>

#include "hodgehh/snf.hpp"

namespace hodgehh {

struct HomologyRecord {
  int degree = 0;
  long betti = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, divisibility order
  std::optional<long> weight;
  bool operator==(const HomologyRecord& o) const {
    return degree == o.degree && betti == o.betti && torsion == o.torsion && weight == o.weight;
  }
};

// Bounded chain complex of finitely generated free modules. diff[n] maps
// degree n to degree n-1. Degrees outside [lo, hi] are zero.
struct ChainComplex {
  Ring ring = Ring::ZZ();
  std::map<int, int> dims;
  std::map<int, SMat> diff;
  std::map<int, std::vector<long>> weights;         // optional grading, d preserves it
  std::map<int, std::vector<std::string>> labels;   // optional basis names

  int dim(int n) const;
  SMat boundary(int n) const;  // d_n with correct shape, zero when absent
  int lo() const;
  int hi() const;
  bool in_range(int n) const;
  mpz_class euler_char() const;

  HomologyRecord homology(int n) const;
  std::vector<HomologyRecord> homology_range(int from, int to) const;

  // basis indices of the given weight per degree, then the graded piece
  ChainComplex weight_block(long w) const;
  std::vector<long> weight_values() const;
};

// validates shapes, ring-normalizes entries, checks d*d = 0 and weight preservation
ChainComplex make_complex(const Ring& ring, std::map<int, int> dims, std::map<int, SMat> diff,
                          std::map<int, std::vector<long>> weights = {},
                          std::map<int, std::vector<std::string>> labels = {});

ChainComplex to_rational(const ChainComplex& C);  // same matrices over Q (Z complexes only)
ChainComplex direct_sum(const ChainComplex& A, const ChainComplex& B);

// H_n with a chosen basis: representative cycles for the free part and each
// torsion class, plus coordinates of arbitrary cycles in that basis.
struct HomologyBasis {
  Ring ring = Ring::ZZ();
  int degree = 0;
  long betti = 0;
  std::vector<mpz_class> torsion;
  SMat cycle_reps;    // dim x betti, columns are cycles
  SMat torsion_reps;  // dim x torsion.size()

  std::vector<mpq_class> class_coords(const std::vector<mpq_class>& cycle) const;
  std::vector<mpz_class> torsion_coords(const std::vector<mpq_class>& cycle) const;
  bool is_boundary(const std::vector<mpq_class>& cycle) const;

  // plumbing: coordinates in the kernel basis, then projections
  std::shared_ptr<const LinSolver> ksolve;
  SMat proj_free;  // betti x nullity
  SMat proj_tor;   // torsion.size() x nullity
};

HomologyBasis homology_basis(const ChainComplex& C, int n);

struct ChainMap {
  std::shared_ptr<const ChainComplex> src, tgt;
  std::map<int, SMat> f;

  SMat at(int n) const;  // component with correct shape
};

// validates commutation with differentials and weight preservation
ChainMap make_chain_map(std::shared_ptr<const ChainComplex> src,
                        std::shared_ptr<const ChainComplex> tgt, std::map<int, SMat> f);
ChainMap identity_map(std::shared_ptr<const ChainComplex> C);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f

// matrix of H_n(src) -> H_n(tgt) between free parts, in homology_basis bases
SMat induced_map(const ChainMap& f, int n);

// F_n = A_n + B_{n+1} with d(a,b) = (da, -f(a) - db); proj is the chain map F -> A
struct MappingFiber {
  std::shared_ptr<const ChainComplex> fiber;
  std::shared_ptr<const ChainComplex> A, B;
  ChainMap fmap;  // the map the fiber was taken of
  ChainMap proj;
  SMat include_b(int n) const;  // B_{n+1} -> F_n, used for the connecting map
};

MappingFiber mapping_fiber(const ChainMap& f);

// rank-exactness of ... -> H_n(F) -> H_n(A) -> H_n(B) -> H_{n-1}(F) -> ... over Q
void verify_fiber_les(const MappingFiber& fib, int from, int to);

// alternating dimension sum equals alternating Betti sum over Q
void verify_euler(const ChainComplex& C);

bool is_zero_in(const SMat& M, const Ring& ring);

// entrywise ring.normalize, dropping entries that normalize to zero
SMat normalized(const SMat& M, const Ring& ring);
bool equal_in(const SMat& A, const SMat& B, const Ring& ring);

}  // namespace hodgehh
