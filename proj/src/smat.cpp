#include "hodgehh/smat.hpp"

#include <sstream>

#include "hodgehh/util.hpp"

namespace hodgehh {

SMat SMat::identity(int n) {
  SMat M(n, n);
  for (int i = 0; i < n; ++i) M.row[i][i] = 1;
  return M;
}

SMat SMat::from_entries(int r, int c,
                        const std::vector<std::tuple<int, int, mpq_class>>& entries) {
  SMat M(r, c);
  for (auto& [i, j, v] : entries) M.add_to(i, j, v);
  return M;
}

SMat SMat::diag(const std::vector<mpq_class>& d) {
  SMat M(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) M.row[i][static_cast<int>(i)] = d[i];
  return M;
}

mpq_class SMat::at(int i, int j) const {
  require(i >= 0 && i < nr && j >= 0 && j < nc, "SMat::at index out of range");
  auto it = row[i].find(j);
  return it == row[i].end() ? mpq_class(0) : it->second;
}

void SMat::set(int i, int j, const mpq_class& v) {
  require(i >= 0 && i < nr && j >= 0 && j < nc, "SMat::set index out of range");
  if (v == 0)
    row[i].erase(j);
  else
    row[i][j] = v;
}

void SMat::add_to(int i, int j, const mpq_class& v) {
  require(i >= 0 && i < nr && j >= 0 && j < nc, "SMat::add_to index out of range");
  if (v == 0) return;
  auto [it, fresh] = row[i].try_emplace(j, v);
  if (!fresh) {
    it->second += v;
    if (it->second == 0) row[i].erase(it);
  }
}

SMat SMat::transpose() const {
  SMat T(nc, nr);
  for (int i = 0; i < nr; ++i)
    for (auto& [j, v] : row[i]) T.row[j][i] = v;
  return T;
}

SMat SMat::operator*(const SMat& o) const {
  if (nc != o.nr)
    require(false, cat("SMat multiply shape mismatch: ", nr, "x", nc, " * ", o.nr, "x", o.nc));
  SMat P(nr, o.nc);
  for (int i = 0; i < nr; ++i) {
    std::map<int, mpq_class> acc;
    for (auto& [k, a] : row[i])
      for (auto& [j, b] : o.row[k]) {
        auto [it, fresh] = acc.try_emplace(j, a * b);
        if (!fresh) it->second += a * b;
      }
    for (auto& [j, v] : acc)
      if (v != 0) P.row[i].emplace(j, v);
  }
  return P;
}

SMat SMat::operator+(const SMat& o) const {
  require(nr == o.nr && nc == o.nc, "SMat add shape mismatch");
  SMat S = *this;
  for (int i = 0; i < nr; ++i)
    for (auto& [j, v] : o.row[i]) S.add_to(i, j, v);
  return S;
}

SMat SMat::operator-(const SMat& o) const { return *this + o.scaled(-1); }

SMat SMat::scaled(const mpq_class& c) const {
  SMat S(nr, nc);
  if (c == 0) return S;
  for (int i = 0; i < nr; ++i)
    for (auto& [j, v] : row[i]) S.row[i][j] = v * c;
  return S;
}

bool SMat::operator==(const SMat& o) const {
  return nr == o.nr && nc == o.nc && row == o.row;
}

bool SMat::is_zero() const {
  for (auto& r : row)
    if (!r.empty()) return false;
  return true;
}

bool SMat::is_integral() const {
  for (auto& r : row)
    for (auto& [j, v] : r)
      if (v.get_den() != 1) return false;
  return true;
}

long SMat::nnz() const {
  long n = 0;
  for (auto& r : row) n += static_cast<long>(r.size());
  return n;
}

std::vector<mpq_class> SMat::apply(const std::vector<mpq_class>& x) const {
  require(static_cast<int>(x.size()) == nc, "SMat::apply size mismatch");
  std::vector<mpq_class> y(nr, 0);
  for (int i = 0; i < nr; ++i)
    for (auto& [j, v] : row[i]) y[i] += v * x[j];
  return y;
}

SMat SMat::columns(const std::vector<int>& sel) const {
  SMat C(nr, static_cast<int>(sel.size()));
  for (size_t jj = 0; jj < sel.size(); ++jj) {
    require(sel[jj] >= 0 && sel[jj] < nc, "SMat::columns index out of range");
    for (int i = 0; i < nr; ++i) {
      auto it = row[i].find(sel[jj]);
      if (it != row[i].end()) C.row[i][static_cast<int>(jj)] = it->second;
    }
  }
  return C;
}

SMat SMat::rows_slice(int lo, int hi) const {
  require(0 <= lo && lo <= hi && hi <= nr, "SMat::rows_slice range invalid");
  SMat S(hi - lo, nc);
  for (int i = lo; i < hi; ++i) S.row[i - lo] = row[i];
  return S;
}

std::vector<mpq_class> SMat::column(int j) const {
  require(j >= 0 && j < nc, "SMat::column index out of range");
  std::vector<mpq_class> v(nr, 0);
  for (int i = 0; i < nr; ++i) {
    auto it = row[i].find(j);
    if (it != row[i].end()) v[i] = it->second;
  }
  return v;
}

void SMat::set_column(int j, const std::vector<mpq_class>& v) {
  require(static_cast<int>(v.size()) == nr, "SMat::set_column size mismatch");
  for (int i = 0; i < nr; ++i) set(i, j, v[i]);
}

void SMat::insert_block(int r0, int c0, const SMat& B) {
  require(r0 >= 0 && c0 >= 0 && r0 + B.nr <= nr && c0 + B.nc <= nc,
          "SMat::insert_block out of range");
  for (int i = 0; i < B.nr; ++i)
    for (auto& [j, v] : B.row[i]) set(r0 + i, c0 + j, v);
}

std::string SMat::to_string() const {
  std::ostringstream os;
  os << nr << "x" << nc << "\n";
  for (int i = 0; i < nr; ++i) {
    os << "[";
    for (int j = 0; j < nc; ++j) os << (j ? " " : "") << at(i, j).get_str();
    os << "]\n";
  }
  return os.str();
}

SMat hstack(const SMat& A, const SMat& B) {
  require(A.nr == B.nr, "hstack row mismatch");
  SMat M(A.nr, A.nc + B.nc);
  M.insert_block(0, 0, A);
  M.insert_block(0, A.nc, B);
  return M;
}

SMat vstack(const SMat& A, const SMat& B) {
  require(A.nc == B.nc, "vstack column mismatch");
  SMat M(A.nr + B.nr, A.nc);
  M.insert_block(0, 0, A);
  M.insert_block(A.nr, 0, B);
  return M;
}

SMat direct_sum(const SMat& A, const SMat& B) {
  SMat M(A.nr + B.nr, A.nc + B.nc);
  M.insert_block(0, 0, A);
  M.insert_block(A.nr, A.nc, B);
  return M;
}

std::string smat_to_coord_text(const SMat& M) {
  std::ostringstream os;
  os << M.nr << " " << M.nc << "\n";
  for (int i = 0; i < M.nr; ++i)
    for (auto& [j, v] : M.row[i]) os << i << " " << j << " " << q_to_string(v) << "\n";
  return os.str();
}

SMat smat_from_coord_text(const std::string& text) {
  std::istringstream is(text);
  int r, c;
  if (!(is >> r >> c)) throw validation_error("matrix text: missing size header");
  if (r < 0 || c < 0) throw validation_error("matrix text: negative size");
  SMat M(r, c);
  int i, j;
  std::string val;
  while (is >> i >> j >> val) {
    if (i < 0 || i >= r || j < 0 || j >= c)
      throw validation_error(cat("matrix text: entry (", i, ",", j, ") outside ", r, "x", c));
    M.add_to(i, j, q_from_string(val));
  }
  if (!is.eof() && is.fail()) {
    is.clear();
    std::string tok;
    is >> tok;
    throw validation_error(cat("matrix text: bad token '", tok, "'"));
  }
  return M;
}

SMat kron(const SMat& A, const SMat& B) {
  SMat K(A.nr * B.nr, A.nc * B.nc);
  for (int i = 0; i < A.nr; ++i)
    for (const auto& [j, a] : A.row[i])
      for (int p = 0; p < B.nr; ++p)
        for (const auto& [q, b] : B.row[p]) K.add_to(i * B.nr + p, j * B.nc + q, a * b);
  return K;
}

}  // namespace hodgehh
