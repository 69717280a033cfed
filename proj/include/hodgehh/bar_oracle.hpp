#pragma once
#include "hodgehh/loday.hpp"

namespace hodgehh {

// Dense unnormalized cyclic bar complex: degree q holds every (q+1)-tuple of
// algebra basis elements and the differential multiplies neighbours straight
// out of the structure-constant table, the last face wrapping around. No
// simplicial machinery and no degeneracy bookkeeping, so it crosschecks the
// normalized construction by an independent route.
inline ChainComplex bar_oracle_complex(const AugAlgebra& A, int N) {
  long B = A.dim();
  std::map<int, int> dims;
  std::map<int, SMat> diff;
  std::map<int, std::vector<long>> weights;
  long sz = 1;
  for (int q = 0; q <= N + 1; ++q) {
    sz *= B;
    require(sz <= 200000, "bar oracle complex too large");
    dims[q] = static_cast<int>(sz);
    weights[q].resize(sz);
    for (long idx = 0; idx < sz; ++idx) {
      long rest = idx, w = 0;
      for (int j = 0; j <= q; ++j) {
        w += A.weight[rest % B];
        rest /= B;
      }
      weights[q][idx] = w;
    }
  }
  for (int q = 1; q <= N + 1; ++q) {
    SMat d(dims.at(q - 1), dims.at(q));
    std::vector<int> a(q + 1);
    for (long col = 0; col < dims.at(q); ++col) {
      long rest = col;
      for (int j = 0; j <= q; ++j) {
        a[j] = static_cast<int>(rest % B);
        rest /= B;
      }
      for (int i = 0; i <= q; ++i) {
        const AlgElt& prod = i < q ? A.mul[a[i]][a[i + 1]] : A.mul[a[q]][a[0]];
        for (const auto& [k, c] : prod) {
          long r = 0, pw = 1;
          if (i < q) {
            for (int j = 0; j < q; ++j) {
              int dj = j < i ? a[j] : j == i ? k : a[j + 1];
              r += dj * pw;
              pw *= B;
            }
          } else {
            r = k;
            pw = B;
            for (int j = 1; j < q; ++j) {
              r += a[j] * pw;
              pw *= B;
            }
          }
          d.add_to(static_cast<int>(r), static_cast<int>(col), i % 2 ? mpq_class(-c) : c);
        }
      }
    }
    diff[q] = std::move(d);
  }
  return make_complex(A.ring, std::move(dims), std::move(diff), std::move(weights));
}

}  // namespace hodgehh
