#pragma once
#include <optional>

#include "hodgehh/smat.hpp"

namespace hodgehh {

// Smith normal form over Z: U * M * V = D with U, V unimodular and D diagonal
// with d1 | d2 | ... All input entries must be integers.
struct SNFResult {
  SMat D, U, V, Uinv, Vinv;
  std::vector<mpz_class> invariant_factors;  // nonzero diagonal entries, including 1s
  int rank = 0;
};

SNFResult smith_normal_form(const SMat& M);

// Reduced row echelon form over a field (Q or Fp): T * M = R with T invertible.
struct RREFResult {
  SMat R, T, Tinv;
  std::vector<int> pivot_cols;
  int rank = 0;
};

RREFResult rref(const SMat& M, const Ring& ring);

// Basis of ker(M) as columns of the returned matrix. Over Z the basis is
// saturated: it generates ker(M) as a subgroup, not just up to finite index.
SMat kernel_basis(const SMat& M, const Ring& ring);

int rank_of(const SMat& M, const Ring& ring);

// determinant of a square integral matrix, by fraction-free elimination
mpz_class det_bareiss(const SMat& M);

// Solves M x = b exactly in the ring: over Z only integer solutions count.
class LinSolver {
 public:
  LinSolver(const SMat& M, const Ring& ring);
  std::optional<std::vector<mpq_class>> solve(const std::vector<mpq_class>& b) const;
  // solve column-by-column; nullopt if any column has no solution
  std::optional<SMat> solve_mat(const SMat& B) const;
  const SMat& matrix() const { return M_; }

 private:
  SMat M_;
  Ring ring_;
  SNFResult snf_;    // used when ring is Z
  RREFResult rref_;  // used when ring is a field
};

}  // namespace hodgehh
