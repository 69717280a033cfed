#pragma once
#include <atomic>
#include <exception>

#ifdef HODGEHH_HAVE_OPENMP
#include <omp.h>
#endif

namespace hodgehh {

// Serial is the reference path; Parallel must produce identical results and
// is checked against it in the benchmark and the parallel tests.
enum class Exec { Serial, Parallel };

namespace detail {
inline std::atomic<int> thread_cap{0};  // 0 = library default
}

inline void set_thread_cap(int n) { detail::thread_cap.store(n < 0 ? 0 : n); }
inline int thread_cap() { return detail::thread_cap.load(); }

inline int effective_threads() {
  int cap = thread_cap();
#ifdef HODGEHH_HAVE_OPENMP
  int hw = omp_get_max_threads();
  return cap == 0 ? hw : (cap < hw ? cap : hw);
#else
  return cap == 0 ? 1 : 1;
#endif
}

// Independent iterations over [0, n); exceptions are captured and rethrown
// once on the calling thread.
template <class F>
void par_for(Exec exec, long n, F&& fn) {
#ifdef HODGEHH_HAVE_OPENMP
  if (exec == Exec::Parallel && effective_threads() > 1) {
    std::exception_ptr err = nullptr;
#pragma omp parallel for schedule(dynamic, 16) num_threads(effective_threads())
    for (long i = 0; i < n; ++i) {
      try {
        fn(i);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (long i = 0; i < n; ++i) fn(i);
}

}  // namespace hodgehh
