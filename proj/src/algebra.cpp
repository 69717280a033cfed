#include <fstream>
#include <sstream>

#include "hodgehh/loday.hpp"

namespace hodgehh {

namespace {

// accumulate c * e_k, keeping the element normalized and sparse
void add_term(AlgElt& acc, int k, const mpq_class& c, const Ring& ring) {
  auto it = acc.find(k);
  mpq_class v = ring.add(it == acc.end() ? mpq_class(0) : it->second, c);
  if (ring.is_zero(v))
    acc.erase(k);
  else
    acc[k] = v;
}

AlgElt combine(const AlgElt& a, const AlgElt& b, const std::vector<std::vector<AlgElt>>& table,
               const Ring& ring) {
  AlgElt out;
  for (const auto& [i, ci] : a)
    for (const auto& [j, cj] : b) {
      mpq_class c = ring.mul(ci, cj);
      for (const auto& [k, ck] : table[i][j]) add_term(out, k, ring.mul(c, ck), ring);
    }
  return out;
}

}  // namespace

int AugAlgebra::index_of(const std::string& n) const {
  for (int i = 0; i < dim(); ++i)
    if (name[i] == n) return i;
  return -1;
}

AlgElt AugAlgebra::multiply(const AlgElt& a, const AlgElt& b) const {
  return combine(a, b, mul, ring);
}

mpq_class AugAlgebra::augment(const AlgElt& a) const {
  auto it = a.find(0);
  return it == a.end() ? mpq_class(0) : it->second;
}

std::string AugAlgebra::elt_to_string(const AlgElt& a) const {
  if (a.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : a) {
    if (!out.empty()) out += " + ";
    if (c != 1) out += q_to_string(c) + " ";
    out += name[k];
  }
  return out;
}

AugAlgebra make_aug_algebra(const Ring& ring, int W, std::vector<std::string> names,
                            std::vector<int> weights, std::vector<std::vector<AlgElt>> mul,
                            std::string label) {
  AugAlgebra A;
  A.ring = ring;
  A.W = W;
  A.label = std::move(label);
  A.name = std::move(names);
  A.weight = std::move(weights);
  A.mul = std::move(mul);
  int n = A.dim();
  require(n >= 1, "algebra needs at least the unit");
  require(W >= 0, "negative weight truncation");
  require(static_cast<int>(A.weight.size()) == n, "one weight per basis element");
  require(A.weight[0] == 0, "basis element 0 must be the unit, weight 0");
  for (int i = 0; i < n; ++i) {
    require(!A.name[i].empty(), "empty basis name");
    for (int j = 0; j < i; ++j)
      if (A.name[i] == A.name[j]) require(false, cat("duplicate basis name ", A.name[i]));
    if (i > 0 && (A.weight[i] < 1 || A.weight[i] > W))
      require(false, cat("basis element ", A.name[i], " has weight ", A.weight[i],
                         ", expected 1..", W));
  }
  require(static_cast<int>(A.mul.size()) == n, "multiplication table must be square");
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(A.mul[i].size()) == n, "multiplication table must be square");
    for (int j = 0; j < n; ++j)
      for (auto& [k, c] : A.mul[i][j]) {
        require(k >= 0 && k < n, "structure constant hits an unknown basis element");
        if (A.weight[k] != A.weight[i] + A.weight[j])
          require(false, cat("product ", A.name[i], " * ", A.name[j],
                             " is not weight-homogeneous at ", A.name[k]));
        c = ring.normalize(c);
        require(!ring.is_zero(c), "zero structure constant stored");
      }
  }
  // the unit row is forced; weight-additivity already confines every product
  // of weight > W to the empty sum
  for (int j = 0; j < n; ++j) {
    require(A.mul[0][j] == AlgElt{{j, 1}}, cat("unit * ", A.name[j], " must be ", A.name[j]));
    require(A.mul[j][0] == AlgElt{{j, 1}}, cat(A.name[j], " * unit must be ", A.name[j]));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j)
      if (A.mul[i][j] != A.mul[j][i])
        require(false, cat("product not commutative on ", A.name[i], ", ", A.name[j]));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // augmentation is an algebra map: the unit coefficient of a product of
      // positive-weight elements vanishes by weight-additivity, checked anyway
      mpq_class lhs = A.augment(A.mul[i][j]);
      mpq_class rhs = ring.mul(i == 0 ? 1 : 0, j == 0 ? 1 : 0);
      require(lhs == rhs, cat("augmentation not multiplicative on ", A.name[i], ", ", A.name[j]));
      for (int k = 0; k < n; ++k) {
        AlgElt l = A.multiply(A.mul[i][j], AlgElt{{k, 1}});
        AlgElt r = A.multiply(AlgElt{{i, 1}}, A.mul[j][k]);
        if (l != r)
          require(false, cat("product not associative on (", A.name[i], ", ", A.name[j], ", ",
                             A.name[k], ")"));
      }
    }
  return A;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

std::string strip(const std::string& line) {
  std::string s = line.substr(0, line.find('#'));
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// "c1 e1 + c2 e2", coefficients optional, "0" for the zero element
AlgElt parse_terms(const std::string& rhs, const std::vector<std::string>& names,
                   const Ring& ring, const std::string& where) {
  AlgElt out;
  if (strip(rhs) == "0") return out;
  std::string piece;
  std::istringstream is(rhs);
  std::vector<std::string> pieces;
  while (std::getline(is, piece, '+')) pieces.push_back(piece);
  require(!pieces.empty(), cat(where, ": empty right-hand side"));
  for (const auto& p : pieces) {
    auto tok = split_ws(p);
    require(tok.size() == 1 || tok.size() == 2, cat(where, ": bad term '", strip(p), "'"));
    mpq_class c = tok.size() == 2 ? q_from_string(tok[0]) : mpq_class(1);
    const std::string& nm = tok.back();
    int k = -1;
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == nm) k = static_cast<int>(i);
    require(k >= 0, cat(where, ": unknown basis element ", nm));
    c = ring.normalize(c);
    require(!ring.is_zero(c), cat(where, ": zero coefficient written out"));
    require(!out.count(k), cat(where, ": repeated basis element ", nm));
    out[k] = c;
  }
  return out;
}

struct SectionedText {
  std::map<std::string, std::string> header;  // key-value lines before the first section
  std::vector<std::pair<std::string, std::vector<std::string>>> sections;

  const std::vector<std::string>* find(const std::string& name) const {
    for (const auto& [n, lines] : sections)
      if (n == name) return &lines;
    return nullptr;
  }
};

bool section_name(const std::string& s) {
  for (char c : s)
    if (c < 'A' || c > 'Z') return false;
  return !s.empty();
}

SectionedText read_sections(const std::string& text, const std::vector<std::string>& header_keys,
                            const std::vector<std::string>& section_names) {
  SectionedText out;
  std::istringstream is(text);
  std::string raw;
  std::string cur;
  while (std::getline(is, raw)) {
    std::string line = strip(raw);
    if (line.empty()) continue;
    if (section_name(line)) {
      bool known = false;
      for (const auto& s : section_names) known = known || s == line;
      require(known, cat("unknown section ", line));
      require(out.find(line) == nullptr, cat("repeated section ", line));
      out.sections.push_back({line, {}});
      cur = line;
      continue;
    }
    if (cur.empty()) {
      auto tok = split_ws(line);
      require(tok.size() >= 2, cat("bad header line '", line, "'"));
      bool known = false;
      for (const auto& k : header_keys) known = known || k == tok[0];
      require(known, cat("unknown header key ", tok[0]));
      require(!out.header.count(tok[0]), cat("repeated header key ", tok[0]));
      out.header[tok[0]] = strip(line.substr(tok[0].size()));
    } else {
      out.sections.back().second.push_back(line);
    }
  }
  return out;
}

// basis rows "name weight"; returns names and weights
void parse_basis(const std::vector<std::string>& lines, std::vector<std::string>& names,
                 std::vector<int>& weights) {
  for (const auto& line : lines) {
    auto tok = split_ws(line);
    require(tok.size() == 2, cat("BASIS row '", line, "' is not 'name weight'"));
    names.push_back(tok[0]);
    weights.push_back(std::stoi(tok[1]));
  }
  require(!names.empty(), "empty BASIS section");
}

}  // namespace

AugAlgebra algebra_from_text(const std::string& text, std::optional<Ring> ring_override) {
  auto st = read_sections(text, {"ring", "truncate", "label"}, {"BASIS", "MUL", "AUG"});
  Ring ring = ring_override ? *ring_override
                            : parse_ring(st.header.count("ring") ? st.header.at("ring") : "Q");
  require(st.header.count("truncate"), "missing truncate header");
  int W = std::stoi(st.header.at("truncate"));
  std::string label = st.header.count("label") ? st.header.at("label") : "";

  const auto* basis = st.find("BASIS");
  require(basis != nullptr, "missing BASIS section");
  std::vector<std::string> names;
  std::vector<int> weights;
  parse_basis(*basis, names, weights);
  int n = static_cast<int>(names.size());

  std::vector<std::vector<AlgElt>> mul(n, std::vector<AlgElt>(n));
  std::vector<std::vector<bool>> given(n, std::vector<bool>(n, false));
  for (int j = 0; j < n; ++j) {
    mul[0][j] = mul[j][0] = AlgElt{{j, 1}};
    given[0][j] = given[j][0] = true;
  }
  given[0][0] = true;
  if (const auto* rows = st.find("MUL"))
    for (const auto& line : *rows) {
      size_t arrow = line.find("->");
      require(arrow != std::string::npos, cat("MUL row '", line, "' is missing ->"));
      auto lhs = split_ws(line.substr(0, arrow));
      require(lhs.size() == 2, cat("MUL row '", line, "' needs two factors"));
      int i = -1, j = -1;
      for (int k = 0; k < n; ++k) {
        if (names[k] == lhs[0]) i = k;
        if (names[k] == lhs[1]) j = k;
      }
      require(i >= 0 && j >= 0, cat("MUL row '", line, "' uses an unknown basis element"));
      AlgElt rhs = parse_terms(line.substr(arrow + 2), names, ring, cat("MUL ", lhs[0], " ", lhs[1]));
      if (i == 0 || j == 0) {
        require(rhs == mul[i][j], cat("MUL row '", line, "' contradicts the unit law"));
        continue;
      }
      require(!given[i][j], cat("duplicate MUL row for ", lhs[0], " ", lhs[1]));
      mul[i][j] = rhs;
      mul[j][i] = rhs;
      given[i][j] = given[j][i] = true;
    }
  for (int i = 1; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!given[i][j] && weights[i] + weights[j] <= W)
        require(false, cat("missing MUL row for ", names[i], " ", names[j]));

  if (const auto* aug = st.find("AUG")) {
    require(aug->size() == 1, "AUG section must be a single row");
    auto tok = split_ws((*aug)[0]);
    require(static_cast<int>(tok.size()) == n, "AUG row needs one value per basis element");
    for (int i = 0; i < n; ++i) {
      mpq_class v = ring.normalize(q_from_string(tok[i]));
      require(v == (i == 0 ? 1 : 0),
              cat("AUG value for ", names[i], " must be ", i == 0 ? 1 : 0));
    }
  }
  return make_aug_algebra(ring, W, std::move(names), std::move(weights), std::move(mul),
                          std::move(label));
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), cat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

AugAlgebra load_algebra(const std::string& path, std::optional<Ring> ring_override) {
  return algebra_from_text(slurp(path), ring_override);
}

AugAlgebra ground_algebra(const Ring& ring) {
  return make_aug_algebra(ring, 0, {"1"}, {0}, {{AlgElt{{0, 1}}}}, "ground");
}

AugAlgebra truncated_poly_algebra(const Ring& ring, int m, int W) {
  require(m >= 1, "x^m = 0 needs m >= 1");
  int n = std::min(m - 1, W) + 1;
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i = 0; i < n; ++i) {
    names.push_back(i == 0 ? "1" : i == 1 ? "x" : cat("x", i));
    weights.push_back(i);
  }
  std::vector<std::vector<AlgElt>> mul(n, std::vector<AlgElt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i + j < n) mul[i][j] = AlgElt{{i + j, 1}};
  return make_aug_algebra(ring, W, std::move(names), std::move(weights), std::move(mul),
                          cat("k[x]/x^", m));
}

AugAlgebra poly_algebra(const Ring& ring, int W) {
  AugAlgebra A = truncated_poly_algebra(ring, W + 1, W);
  A.label = "k[x]";
  return A;
}

AugAlgebra poly2_algebra(const Ring& ring, int W) {
  std::vector<std::string> names;
  std::vector<int> weights;
  std::vector<std::pair<int, int>> expo;  // (a, b) with x^a y^b
  for (int w = 0; w <= W; ++w)
    for (int a = w; a >= 0; --a) {
      int b = w - a;
      std::string nm = "1";
      if (a + b > 0) {
        nm = "";
        for (int t = 0; t < a; ++t) nm += "x";
        for (int t = 0; t < b; ++t) nm += "y";
      }
      names.push_back(nm);
      weights.push_back(w);
      expo.push_back({a, b});
    }
  int n = static_cast<int>(names.size());
  std::vector<std::vector<AlgElt>> mul(n, std::vector<AlgElt>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = expo[i].first + expo[j].first, b = expo[i].second + expo[j].second;
      for (int k = 0; k < n; ++k)
        if (expo[k] == std::pair{a, b}) mul[i][j] = AlgElt{{k, 1}};
    }
  return make_aug_algebra(ring, W, std::move(names), std::move(weights), std::move(mul), "k[x,y]");
}

AugAlgebra retruncate(const AugAlgebra& A, int Wnew) {
  require(Wnew >= 0 && Wnew <= A.W, "retruncate only lowers the truncation");
  std::vector<int> keep;
  for (int i = 0; i < A.dim(); ++i)
    if (A.weight[i] <= Wnew) keep.push_back(i);
  std::vector<int> pos(A.dim(), -1);
  for (size_t i = 0; i < keep.size(); ++i) pos[keep[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  std::vector<int> weights;
  for (int i : keep) {
    names.push_back(A.name[i]);
    weights.push_back(A.weight[i]);
  }
  std::vector<std::vector<AlgElt>> mul(keep.size(), std::vector<AlgElt>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i)
    for (size_t j = 0; j < keep.size(); ++j)
      for (const auto& [k, c] : A.mul[keep[i]][keep[j]])
        if (pos[k] >= 0) mul[i][j][pos[k]] = c;
  return make_aug_algebra(A.ring, Wnew, std::move(names), std::move(weights), std::move(mul),
                          A.label);
}

int AlgModule::index_of(const std::string& n) const {
  for (int i = 0; i < dim(); ++i)
    if (name[i] == n) return i;
  return -1;
}

AlgElt AlgModule::act_on(const AlgElt& a, const AlgElt& m, const AugAlgebra& A) const {
  return combine(a, m, act, A.ring);
}

AlgModule make_alg_module(const AugAlgebra& A, std::vector<std::string> names,
                          std::vector<int> weights, std::vector<std::vector<AlgElt>> act,
                          std::string label) {
  AlgModule M;
  M.label = std::move(label);
  M.name = std::move(names);
  M.weight = std::move(weights);
  M.act = std::move(act);
  int n = M.dim();
  require(n >= 1, "module needs a nonempty basis");
  require(static_cast<int>(M.weight.size()) == n, "one weight per module basis element");
  for (int i = 0; i < n; ++i) {
    require(!M.name[i].empty(), "empty module basis name");
    for (int j = 0; j < i; ++j)
      if (M.name[i] == M.name[j]) require(false, cat("duplicate module basis name ", M.name[i]));
    require(M.weight[i] >= 0 && M.weight[i] <= A.W,
            cat("module weight out of range on ", M.name[i]));
  }
  require(static_cast<int>(M.act.size()) == A.dim(), "one action row per algebra basis element");
  for (int i = 0; i < A.dim(); ++i) {
    require(static_cast<int>(M.act[i].size()) == n, "one action entry per module basis element");
    for (int j = 0; j < n; ++j)
      for (auto& [k, c] : M.act[i][j]) {
        require(k >= 0 && k < n, "action constant hits an unknown module element");
        if (M.weight[k] != A.weight[i] + M.weight[j])
          require(false, cat("action of ", A.name[i], " on ", M.name[j],
                             " is not weight-homogeneous at ", M.name[k]));
        c = A.ring.normalize(c);
        require(!A.ring.is_zero(c), "zero action constant stored");
      }
  }
  for (int j = 0; j < n; ++j)
    require(M.act[0][j] == AlgElt{{j, 1}}, cat("unit must act as the identity on ", M.name[j]));
  for (int i = 0; i < A.dim(); ++i)
    for (int i2 = 0; i2 < A.dim(); ++i2)
      for (int j = 0; j < n; ++j) {
        AlgElt l = M.act_on(A.mul[i][i2], AlgElt{{j, 1}}, A);
        AlgElt r = M.act_on(AlgElt{{i, 1}}, M.act[i2][j], A);
        if (l != r)
          require(false, cat("action not associative on (", A.name[i], ", ", A.name[i2], ", ",
                             M.name[j], ")"));
      }
  return M;
}

AlgModule module_from_text(const AugAlgebra& A, const std::string& text) {
  auto st = read_sections(text, {"label"}, {"BASIS", "ACT"});
  std::string label = st.header.count("label") ? st.header.at("label") : "";
  const auto* basis = st.find("BASIS");
  require(basis != nullptr, "missing BASIS section");
  std::vector<std::string> names;
  std::vector<int> weights;
  parse_basis(*basis, names, weights);
  int n = static_cast<int>(names.size());

  std::vector<std::vector<AlgElt>> act(A.dim(), std::vector<AlgElt>(n));
  std::vector<std::vector<bool>> given(A.dim(), std::vector<bool>(n, false));
  for (int j = 0; j < n; ++j) {
    act[0][j] = AlgElt{{j, 1}};
    given[0][j] = true;
  }
  if (const auto* rows = st.find("ACT"))
    for (const auto& line : *rows) {
      size_t arrow = line.find("->");
      require(arrow != std::string::npos, cat("ACT row '", line, "' is missing ->"));
      auto lhs = split_ws(line.substr(0, arrow));
      require(lhs.size() == 2, cat("ACT row '", line, "' needs an algebra and a module element"));
      int i = A.index_of(lhs[0]);
      int j = -1;
      for (int k = 0; k < n; ++k)
        if (names[k] == lhs[1]) j = k;
      require(i >= 0, cat("ACT row '", line, "' uses an unknown algebra element"));
      require(j >= 0, cat("ACT row '", line, "' uses an unknown module element"));
      AlgElt rhs = parse_terms(line.substr(arrow + 2), names, A.ring, cat("ACT ", lhs[0], " ", lhs[1]));
      if (i == 0) {
        require(rhs == act[0][j], cat("ACT row '", line, "' contradicts the unit law"));
        continue;
      }
      require(!given[i][j], cat("duplicate ACT row for ", lhs[0], " ", lhs[1]));
      act[i][j] = rhs;
      given[i][j] = true;
    }
  for (int i = 1; i < A.dim(); ++i)
    for (int j = 0; j < n; ++j)
      if (!given[i][j] && A.weight[i] + weights[j] <= A.W)
        require(false, cat("missing ACT row for ", A.name[i], " ", names[j]));
  return make_alg_module(A, std::move(names), std::move(weights), std::move(act),
                         std::move(label));
}

AlgModule load_module(const AugAlgebra& A, const std::string& path) {
  return module_from_text(A, slurp(path));
}

AlgModule free_module(const AugAlgebra& A) {
  AlgModule M = make_alg_module(A, A.name, A.weight, A.mul, cat(A.label, " over itself"));
  return M;
}

AlgModule augmentation_module(const AugAlgebra& A) {
  std::vector<std::vector<AlgElt>> act(A.dim());
  act[0] = {AlgElt{{0, 1}}};
  for (int i = 1; i < A.dim(); ++i) act[i] = {AlgElt{}};
  return make_alg_module(A, {"m"}, {0}, std::move(act), "k via the augmentation");
}

SMat along_map(const AugAlgebra& R, int s, int t, const std::vector<int>& f) {
  require(s >= 0 && t >= 0, "along_map needs finite sets");
  require(static_cast<int>(f.size()) == s, "one image per source element");
  for (int v : f) require(v >= 0 && v < t, "along_map image out of range");
  long B = R.dim();
  long rows = 1, cols = 1;
  for (int i = 0; i < t; ++i) {
    rows *= B;
    require(rows <= 4'000'000, "along_map function basis too large");
  }
  for (int i = 0; i < s; ++i) {
    cols *= B;
    require(cols <= 4'000'000, "along_map function basis too large");
  }
  BudgetLease lease(rows * 8 + cols * 8, "along_map");
  std::vector<std::vector<int>> fiber(t);
  for (int y = 0; y < s; ++y) fiber[f[y]].push_back(y);

  SMat out(static_cast<int>(rows), static_cast<int>(cols));
  std::vector<int> digit(s);
  for (long col = 0; col < cols; ++col) {
    long rest = col;
    for (int y = 0; y < s; ++y) {
      digit[y] = static_cast<int>(rest % B);
      rest /= B;
    }
    std::vector<AlgElt> prod(t);
    bool dead = false;
    for (int y2 = 0; y2 < t && !dead; ++y2) {
      AlgElt p{{0, 1}};
      for (int y : fiber[y2]) p = R.multiply(p, AlgElt{{digit[y], 1}});
      dead = p.empty();
      prod[y2] = std::move(p);
    }
    if (dead) continue;
    // expand the tensor of the fiber products into target basis functions
    std::vector<AlgElt::const_iterator> pick(t);
    for (int y2 = 0; y2 < t; ++y2) pick[y2] = prod[y2].begin();
    while (true) {
      mpq_class c = 1;
      long r = 0, pw = 1;
      for (int y2 = 0; y2 < t; ++y2) {
        c = R.ring.mul(c, pick[y2]->second);
        r += pick[y2]->first * pw;
        pw *= B;
      }
      out.add_to(static_cast<int>(r), static_cast<int>(col), c);
      int y2 = 0;
      while (y2 < t && ++pick[y2] == prod[y2].end()) {
        pick[y2] = prod[y2].begin();
        ++y2;
      }
      if (y2 == t) break;
    }
  }
  return out;
}

}  // namespace hodgehh
