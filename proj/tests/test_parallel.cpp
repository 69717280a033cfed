#include <numeric>
#include <vector>

#include "doctest.h"
#include "hodgehh/parallel.hpp"
#include "hodgehh/util.hpp"

using namespace hodgehh;

TEST_CASE("both execution modes fill disjoint slots identically") {
  for (Exec e : {Exec::Serial, Exec::Parallel}) {
    std::vector<long> out(10000, 0);
    par_for(e, 10000, [&](long i) { out[i] = i * i % 97; });
    long sum = std::accumulate(out.begin(), out.end(), 0L);
    CHECK(sum == 479772);  // fixed value, same for both modes
  }
}

TEST_CASE("exceptions propagate out of the loop") {
  for (Exec e : {Exec::Serial, Exec::Parallel}) {
    CHECK_THROWS_AS(par_for(e, 100,
                            [&](long i) {
                              if (i == 37) throw property_error("boom");
                            }),
                    property_error);
  }
}

TEST_CASE("thread cap round trips") {
  set_thread_cap(2);
  CHECK(thread_cap() == 2);
  CHECK(effective_threads() >= 1);
  set_thread_cap(0);
  CHECK(thread_cap() == 0);
  set_thread_cap(-5);
  CHECK(thread_cap() == 0);
}
