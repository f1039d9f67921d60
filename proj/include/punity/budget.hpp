// budget.hpp -- work accounting for join/entropy kernels.  A unit of work is
// one member value evaluated on one admissible word.
#pragma once

#include <atomic>
#include <stdexcept>

namespace punity {

struct budget_exceeded_error : std::runtime_error {
  explicit budget_exceeded_error(const std::string& what) : std::runtime_error(what) {}
};

class EvalBudget {
 public:
  static constexpr long long kDefault = 100'000'000;

  explicit EvalBudget(long long limit = kDefault) : limit_(limit), used_(0) {}

  void charge(long long n) {
    long long total = used_.fetch_add(n, std::memory_order_relaxed) + n;
    if (total > limit_)
      throw budget_exceeded_error("evaluation budget exhausted (" + std::to_string(total) +
                                  " > " + std::to_string(limit_) + " word evaluations)");
  }
  long long used() const { return used_.load(std::memory_order_relaxed); }
  long long limit() const { return limit_; }

 private:
  long long limit_;
  std::atomic<long long> used_;
};

}  // namespace punity
