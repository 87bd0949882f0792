#pragma once

#include <atomic>
#include <memory>
#include <stdexcept>

namespace coxsaito {

struct BudgetExhausted : std::runtime_error {
  BudgetExhausted() : std::runtime_error("budget exhausted") {}
};

// Step counter shared by the engine calls of one run. A negative limit means
// unlimited. Charging past the limit throws BudgetExhausted.
class Budget {
 public:
  explicit Budget(long long limit = -1) : limit_(limit) {}
  void charge(long long steps) {
    long long used = used_.fetch_add(steps, std::memory_order_relaxed) + steps;
    if (limit_ >= 0 && used > limit_) throw BudgetExhausted();
  }
  long long used() const { return used_.load(); }
  long long limit() const { return limit_; }
  bool exhausted() const { return limit_ >= 0 && used_.load() > limit_; }

 private:
  long long limit_;
  std::atomic<long long> used_{0};
};

inline void charge(Budget* b, long long steps) {
  if (b) b->charge(steps);
}

}  // namespace coxsaito
