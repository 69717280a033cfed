#pragma once
#include "hodgehh/chain.hpp"

namespace hodgehh {

// Finite poset on elements 0..n-1. leq[a][b] means a <= b.
struct Poset {
  int n = 0;
  std::vector<std::vector<bool>> leq;

  bool le(int a, int b) const { return leq[a][b]; }
  bool lt(int a, int b) const { return a != b && leq[a][b]; }
  std::optional<int> minimum() const;  // element below all others, if any
  std::optional<int> maximum() const;
  // all strictly ascending chains (u_0 < ... < u_s), ordered by length then lex
  std::vector<std::vector<int>> chains() const;
};

// reflexive-transitive closure of the given relations; rejects cycles
Poset make_poset(int n, const std::vector<std::pair<int, int>>& le_pairs);
Poset chain_poset(int n);
Poset antichain_poset(int n);

// Covariant diagram on P: a complex per element, a restriction map along
// every strict relation, functorial on composable pairs.
struct PosetDiagram {
  Poset P;
  std::vector<std::shared_ptr<const ChainComplex>> value;
  std::map<std::pair<int, int>, ChainMap> res;  // (v, w) with v < w: D(v) -> D(w)

  const ChainMap& res_at(int v, int w) const;
};

// validates shapes, endpoints, and functoriality (offending triple reported)
PosetDiagram make_diagram(Poset P, std::vector<std::shared_ptr<const ChainComplex>> value,
                          std::map<std::pair<int, int>, ChainMap> res);
PosetDiagram restrict_diagram(const PosetDiagram& D, const std::vector<int>& keep);

// Derived limit as the total complex over ascending chains of P:
// block (flag u_0<...<u_s, q) sits in total degree q - s; the differential is
// the inner d plus (-1)^q times the flag coboundary (omissions, then a
// restriction off the top element).
struct HolimResult {
  std::shared_ptr<const ChainComplex> total;
  PosetDiagram diagram;
  std::vector<std::vector<int>> flags;
  std::map<std::pair<int, int>, int> block_start;  // (flag index, q) -> offset in degree q-s

  int flag_index(const std::vector<int>& flag) const;
  int offset(int flag_id, int q) const;
};

HolimResult poset_holim(const PosetDiagram& D);

// cone with compatible legs C -> D(v) induces a chain map into the limit,
// supported on the one-element flags
ChainMap holim_cone(const HolimResult& H, std::shared_ptr<const ChainComplex> C,
                    const std::map<int, ChainMap>& legs);

// forgetting flags outside a subposet: big restricted to small along inj
// (inj[v] = element of the big poset), a chain map big.total -> small.total
ChainMap holim_restrict_map(const HolimResult& big, const HolimResult& small,
                            const std::vector<int>& inj);

// transport along a poset isomorphism phi with value maps g[v]: D(v) -> E(phi v)
ChainMap holim_transport(const HolimResult& src, const HolimResult& dst,
                         const std::vector<int>& phi, const std::map<int, ChainMap>& g);

// when P has a minimum the limit collapses there: equal homology in the range
void verify_holim_collapse(const HolimResult& H, int from, int to);

}  // namespace hodgehh
