#pragma once
#include <map>
#include <vector>

#include "hodgehh/ring.hpp"

namespace hodgehh {

// Sparse matrix over the rationals, row-major. A matrix with r rows and c
// columns represents a linear map from R^c to R^r acting on column vectors.
struct SMat {
  int nr = 0, nc = 0;
  std::vector<std::map<int, mpq_class>> row;

  SMat() = default;
  SMat(int r, int c) : nr(r), nc(c), row(static_cast<size_t>(r)) {}

  static SMat identity(int n);
  static SMat zero(int r, int c) { return SMat(r, c); }
  // entries: (row, col, value) triples; duplicates accumulate
  static SMat from_entries(int r, int c,
                           const std::vector<std::tuple<int, int, mpq_class>>& entries);
  static SMat diag(const std::vector<mpq_class>& d);

  mpq_class at(int i, int j) const;
  void set(int i, int j, const mpq_class& v);
  void add_to(int i, int j, const mpq_class& v);

  SMat transpose() const;
  SMat operator*(const SMat& o) const;
  SMat operator+(const SMat& o) const;
  SMat operator-(const SMat& o) const;
  SMat scaled(const mpq_class& c) const;
  bool operator==(const SMat& o) const;
  bool operator!=(const SMat& o) const { return !(*this == o); }

  bool is_zero() const;
  bool is_integral() const;
  long nnz() const;

  std::vector<mpq_class> apply(const std::vector<mpq_class>& x) const;
  // columns sel of this matrix, in the given order
  SMat columns(const std::vector<int>& sel) const;
  SMat rows_slice(int lo, int hi) const;  // rows lo..hi-1
  std::vector<mpq_class> column(int j) const;
  void set_column(int j, const std::vector<mpq_class>& v);

  // direct sum placement helpers
  void insert_block(int r0, int c0, const SMat& B);

  std::string to_string() const;  // human-readable, for diagnostics
};

SMat hstack(const SMat& A, const SMat& B);
SMat vstack(const SMat& A, const SMat& B);
SMat direct_sum(const SMat& A, const SMat& B);
// Kronecker product; block (i,j) is a[i][j] * B
SMat kron(const SMat& A, const SMat& B);

// coordinate-list text interchange: "nrows ncols" header line then "row col value" lines
std::string smat_to_coord_text(const SMat& M);
SMat smat_from_coord_text(const std::string& text);

}  // namespace hodgehh
