#include "core/oracle.hpp"

#include <algorithm>
#include <string>

namespace propavg {

namespace {

// n^m with an early out; returns nullopt when the count exceeds budget.
std::optional<std::uint64_t> assignment_count(int n, int m, std::uint64_t budget) {
  std::uint64_t total = 1;
  for (int k = 0; k < m; ++k) {
    if (total > budget / static_cast<std::uint64_t>(n)) return std::nullopt;
    total *= static_cast<std::uint64_t>(n);
  }
  return total;
}

void check_budget(const Instance& inst, std::uint64_t budget) {
  if (!assignment_count(inst.agents(), inst.goods(), budget))
    throw BudgetError("assignment space " + std::to_string(inst.agents()) + "^" +
                      std::to_string(inst.goods()) + " exceeds budget " + std::to_string(budget));
}

Allocation to_allocation(const std::vector<int>& owner, int n_agents) {
  Allocation alloc;
  alloc.bundles.resize(n_agents);
  for (int g = 0; g < static_cast<int>(owner.size()); ++g) alloc.bundles[owner[g]].push_back(g);
  return alloc;
}

// Visits assignments in mixed-radix counter order (good 0 least significant)
// until the visitor returns false.
template <typename Visitor>
void for_each_assignment(const Instance& inst, Visitor&& visit) {
  const int n = inst.agents(), m = inst.goods();
  std::vector<int> owner(m, 0);
  while (true) {
    if (!visit(owner)) return;
    int g = 0;
    while (g < m && owner[g] == n - 1) owner[g++] = 0;
    if (g == m) return;
    ++owner[g];
  }
}

bool satisfies_all(const Instance& inst, const Allocation& alloc, Notion n) {
  for (int i = 0; i < inst.agents(); ++i)
    if (!is_satisfied(inst, alloc, i, n)) return false;
  return true;
}

}  // namespace

EnumerationResult enumerate_satisfying(const Instance& inst, Notion n, std::uint64_t budget,
                                       const Allocation* target) {
  check_budget(inst, budget);

  std::vector<int> target_owner;
  if (target) {
    if (auto bad = validate_allocation(inst, *target)) throw InputError("invalid target allocation: " + *bad);
    target_owner.resize(inst.goods());
    for (int i = 0; i < inst.agents(); ++i)
      for (int g : target->bundles[i]) target_owner[g] = i;
  }

  EnumerationResult result;
  for_each_assignment(inst, [&](const std::vector<int>& owner) {
    ++result.total;
    Allocation alloc = to_allocation(owner, inst.agents());
    if (satisfies_all(inst, alloc, n)) {
      ++result.count;
      if (!result.first) result.first = std::move(alloc);
      if (target && owner == target_owner) result.target_found = true;
    }
    return true;
  });
  return result;
}

bool any_satisfying(const Instance& inst, Notion n, std::uint64_t budget) {
  check_budget(inst, budget);
  bool found = false;
  for_each_assignment(inst, [&](const std::vector<int>& owner) {
    found = satisfies_all(inst, to_allocation(owner, inst.agents()), n);
    return !found;
  });
  return found;
}

SweepOutcome existence_sweep(const std::function<std::optional<Instance>()>& next_instance, Notion n,
                             std::uint64_t budget) {
  SweepOutcome outcome;
  while (auto inst = next_instance()) {
    try {
      if (!any_satisfying(*inst, n, budget)) outcome.counterexamples.push_back(std::move(*inst));
      ++outcome.checked;
    } catch (const BudgetError&) {
      ++outcome.budget_skipped;
    }
  }
  return outcome;
}

}  // namespace propavg
