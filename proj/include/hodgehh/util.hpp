#pragma once
#include <atomic>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgehh {

// Thrown on malformed input, violated preconditions, failed construction-time
// invariants (exit code 2 at the CLI boundary).
struct validation_error : std::runtime_error {
  explicit validation_error(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a computation would exceed the configured memory budget
// (exit code 3 at the CLI boundary).
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& m) : std::runtime_error(m) {}
};

// Thrown when a verified mathematical property fails on concrete data
// (exit code 4 at the CLI boundary). Carries the offending instance.
struct property_error : std::runtime_error {
  explicit property_error(const std::string& m) : std::runtime_error(m) {}
};

// Coarse memory budget, charged at the big allocation chokepoints
// (explicit simplex levels, chain complex blocks, group-algebra tables).
class Budget {
 public:
  static Budget& instance();
  void reset();
  void set_limit_mb(long mb);
  long limit_mb() const { return limit_mb_; }
  // charge `bytes`; throws budget_error when the running total would exceed the cap
  void charge(std::int64_t bytes, const char* what);
  void release(std::int64_t bytes) { used_.fetch_sub(bytes); }
  std::int64_t used_bytes() const { return used_.load(); }

 private:
  std::atomic<std::int64_t> used_{0};
  long limit_mb_ = 2048;
};

inline void charge_budget(std::int64_t bytes, const char* what) {
  Budget::instance().charge(bytes, what);
}

// scoped charge for transient workspaces: released when the computation ends
class BudgetLease {
 public:
  BudgetLease(std::int64_t bytes, const char* what) : bytes_(bytes) {
    Budget::instance().charge(bytes_, what);
  }
  ~BudgetLease() { Budget::instance().release(bytes_); }
  BudgetLease(const BudgetLease&) = delete;
  BudgetLease& operator=(const BudgetLease&) = delete;

 private:
  std::int64_t bytes_;
};

template <class... Ts>
std::string cat(const Ts&... parts) {
  std::ostringstream os;
  (os << ... << parts);
  return os.str();
}

template <class T>
std::string join(const std::vector<T>& v, const std::string& sep) {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw validation_error(msg);
}

// literal-message overload; skips the std::string construction on the hot path
inline void require(bool cond, const char* msg) {
  if (!cond) throw validation_error(msg);
}

inline void require_property(bool cond, const std::string& msg) {
  if (!cond) throw property_error(msg);
}

inline void require_property(bool cond, const char* msg) {
  if (!cond) throw property_error(msg);
}

inline long long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace hodgehh
