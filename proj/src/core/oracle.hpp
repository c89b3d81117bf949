#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "core/instance.hpp"
#include "core/verifier.hpp"

namespace propavg {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

// Result of walking every one of the n^m ownership assignments. first is the
// earliest satisfying allocation in counter order (good 0 is the least
// significant digit), giving a canonical witness. When a target allocation is
// supplied, target_found reports whether the enumeration saw it among the
// satisfying ones.
struct EnumerationResult {
  std::uint64_t total = 0;
  std::uint64_t count = 0;
  std::optional<Allocation> first;
  bool target_found = false;
};

// Exact count of allocations satisfying the notion for every agent. Refuses
// with BudgetError when n^m exceeds budget.
EnumerationResult enumerate_satisfying(const Instance& inst, Notion n, std::uint64_t budget = kDefaultBudget,
                                       const Allocation* target = nullptr);

// Early-exit existence test: stops at the first satisfying allocation instead
// of counting them all. Same budget rule.
bool any_satisfying(const Instance& inst, Notion n, std::uint64_t budget = kDefaultBudget);

struct SweepOutcome {
  std::uint64_t checked = 0;
  std::vector<Instance> counterexamples;  // instances with no satisfying allocation
  std::uint64_t budget_skipped = 0;       // instances too large for the budget
};

// Drains the generator (call until nullopt) and records every instance for
// which no allocation satisfies the notion. Instances over budget are skipped
// and counted rather than failing the whole sweep.
SweepOutcome existence_sweep(const std::function<std::optional<Instance>()>& next_instance, Notion n,
                             std::uint64_t budget = kDefaultBudget);

}  // namespace propavg
