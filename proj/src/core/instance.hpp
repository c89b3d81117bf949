#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace propavg {

using Value = std::int64_t;

// Malformed caller input: bad dimensions, out-of-range indices, values past
// the documented overflow bound, unparsable files.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal guarantee. Reaching one of these is a bug, never a
// consequence of bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

// Enumeration workload exceeding the caller-supplied budget.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

// Good indices, strictly ascending.
using Bundle = std::vector<int>;

// One bundle per agent; a valid allocation partitions all goods.
struct Allocation {
  std::vector<Bundle> bundles;
};

// Additive valuation profile: an n_agents x n_goods matrix of non-negative
// integers. Every comparison downstream is bounded by n*(n+1)*row_total, so
// construction rejects rows whose total would push that product past int64.
// Callers with rational data are expected to pre-scale to integers.
class Instance {
 public:
  static Instance create(int n_agents, int n_goods, std::vector<Value> row_major);

  int agents() const { return n_agents_; }
  int goods() const { return n_goods_; }
  Value value(int agent, int good) const { return values_[static_cast<std::size_t>(agent) * n_goods_ + good]; }
  Value total(int agent) const { return totals_[agent]; }
  const std::vector<Value>& raw_values() const { return values_; }

 private:
  Instance() = default;

  int n_agents_ = 0;
  int n_goods_ = 0;
  std::vector<Value> values_;
  std::vector<Value> totals_;
};

// Sum of the agent's values over the bundle.
Value bundle_value(const Instance& inst, int agent, const Bundle& bundle);

// Value of the least valuable good in the bundle from the agent's view;
// 0 for the empty bundle.
Value min_good_value(const Instance& inst, int agent, const Bundle& bundle);

// nullopt when alloc partitions all goods of inst into inst.agents() bundles,
// otherwise a description of the first violation found.
std::optional<std::string> validate_allocation(const Instance& inst, const Allocation& alloc);

}  // namespace propavg
