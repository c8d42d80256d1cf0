#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "linform/error.hpp"

namespace linform::detail {

/// Shared node accounting for a parallel walk. Workers flush local counts in
/// batches; a walk fails with BudgetExceeded once the total passes the budget
/// (0 means unlimited). The total is independent of scheduling, so whether a
/// walk fails does not depend on the thread count.
class NodeBudget {
 public:
  explicit NodeBudget(std::uint64_t budget) : budget_(budget) {}

  void add(std::uint64_t n) {
    const auto total = total_.fetch_add(n, std::memory_order_relaxed) + n;
    if (budget_ != 0 && total > budget_)
      fail(ErrorCode::BudgetExceeded, "search exceeded the node budget of " + std::to_string(budget_));
  }

  std::uint64_t total() const noexcept { return total_.load(std::memory_order_relaxed); }

 private:
  std::uint64_t budget_;
  std::atomic<std::uint64_t> total_{0};
};

/// Number of independent subtrees of the canonical k-set tree: one per value
/// of the second element a_1 (or a single subtree when k = 1).
inline std::size_t walk_task_count(std::size_t k, std::int64_t diameter) {
  if (k <= 1) return 1;
  const std::int64_t hi = diameter - static_cast<std::int64_t>(k) + 2;
  return hi >= 1 ? static_cast<std::size_t>(hi) : 0;
}

/// Depth-first walk over the canonical sets {0 = a_0 < a_1 < ... < a_{k-1} <= diameter}
/// whose second element is a_1 = task + 1, in lexicographic order.
///
/// Visitor interface:
///   bool descend(std::span<const std::int64_t> prefix)   // 2 <= |prefix| < k
///   void leaf(std::span<const std::int64_t> set)         // |set| = k and gcd 1
template <class Visitor>
std::uint64_t walk_canonical_task(std::size_t k, std::int64_t diameter, std::size_t task,
                                  Visitor& vis, NodeBudget& budget) {
  constexpr std::uint64_t kFlushEvery = 4096;
  std::uint64_t nodes = 0;
  std::uint64_t unflushed = 0;
  auto tick = [&] {
    ++nodes;
    if (++unflushed == kFlushEvery) {
      budget.add(unflushed);
      unflushed = 0;
    }
  };

  std::vector<std::int64_t> prefix{0};
  if (k == 1) {
    tick();
    vis.leaf(std::span<const std::int64_t>(prefix));
    budget.add(unflushed);
    return nodes;
  }

  std::vector<std::int64_t> gcds{0};
  prefix.reserve(k);
  gcds.reserve(k);

  auto rec = [&](auto& self) -> void {
    tick();
    const std::size_t j = prefix.size();
    const std::span<const std::int64_t> view(prefix);
    if (j == k) {
      if (gcds.back() == 1) vis.leaf(view);
      return;
    }
    if (!vis.descend(view)) return;
    const std::int64_t last = diameter - static_cast<std::int64_t>(k - 1 - j);
    for (std::int64_t x = prefix.back() + 1; x <= last; ++x) {
      prefix.push_back(x);
      gcds.push_back(std::gcd(gcds.back(), x));
      self(self);
      prefix.pop_back();
      gcds.pop_back();
    }
  };

  const auto a1 = static_cast<std::int64_t>(task) + 1;
  prefix.push_back(a1);
  gcds.push_back(a1);
  rec(rec);
  budget.add(unflushed);
  return nodes;
}

/// True when the sorted canonical set is lexicographically <= its reflection.
inline bool is_reflection_representative(std::span<const std::int64_t> set) {
  const std::size_t k = set.size();
  const std::int64_t d = set.back();
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t r = d - set[k - 1 - i];
    if (set[i] != r) return set[i] < r;
  }
  return true;
}

}  // namespace linform::detail
