// Prints the homology of the dense unnormalized bar complex of an algebra
// file, totals and per weight: generates the fixture the normalized Loday
// construction is checked against.
#include <iostream>

#include "hodgehh/bar_oracle.hpp"

using namespace hodgehh;

int main(int argc, char** argv) {
  if (argc < 3 || argc > 4) {
    std::cerr << "usage: bar_oracle <algebra file> <max degree> [ring]\n";
    return 2;
  }
  try {
    std::optional<Ring> ring;
    if (argc == 4) ring = parse_ring(argv[3]);
    AugAlgebra A = load_algebra(argv[1], ring);
    int N = std::stoi(argv[2]);
    ChainComplex C = bar_oracle_complex(A, N);
    std::cout << "algebra " << (A.label.empty() ? argv[1] : A.label) << " ring " << A.ring.name()
              << " truncate " << A.W << " max-degree " << N << "\n";
    for (int q = 0; q <= N; ++q) {
      HomologyRecord rec = C.homology(q);
      std::cout << "degree " << q << " betti " << rec.betti;
      if (!rec.torsion.empty()) {
        std::cout << " torsion";
        for (const auto& t : rec.torsion) std::cout << " " << t.get_str();
      }
      std::cout << "\n";
    }
    for (long w : C.weight_values()) {
      ChainComplex B = C.weight_block(w);
      for (int q = 0; q <= N; ++q) {
        if (B.dim(q) == 0 && B.dim(q + 1) == 0) continue;
        HomologyRecord rec = B.homology(q);
        std::cout << "degree " << q << " weight " << w << " betti " << rec.betti;
        if (!rec.torsion.empty()) {
          std::cout << " torsion";
          for (const auto& t : rec.torsion) std::cout << " " << t.get_str();
        }
        std::cout << "\n";
      }
    }
    return 0;
  } catch (const budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
