#include "core/instance.hpp"

#include <limits>

namespace propavg {

namespace {

void check_agent(const Instance& inst, int agent) {
  if (agent < 0 || agent >= inst.agents())
    throw InputError("agent index " + std::to_string(agent) + " out of range [0, " +
                     std::to_string(inst.agents()) + ")");
}

void check_bundle(const Instance& inst, const Bundle& bundle) {
  int prev = -1;
  for (int g : bundle) {
    if (g < 0 || g >= inst.goods())
      throw InputError("good index " + std::to_string(g) + " out of range [0, " +
                       std::to_string(inst.goods()) + ")");
    if (g <= prev) throw InputError("bundle indices must be strictly ascending");
    prev = g;
  }
}

}  // namespace

Instance Instance::create(int n_agents, int n_goods, std::vector<Value> row_major) {
  if (n_agents < 1) throw InputError("n_agents must be positive");
  if (n_goods < 0) throw InputError("n_goods must be non-negative");
  if (row_major.size() != static_cast<std::size_t>(n_agents) * n_goods)
    throw InputError("value matrix has " + std::to_string(row_major.size()) + " entries, expected " +
                     std::to_string(static_cast<std::size_t>(n_agents) * n_goods));

  // Widest intermediate anywhere in the library is n*(n+1)*row_total.
  const Value scale = static_cast<Value>(n_agents) * (n_agents + 1);
  const Value max_total = std::numeric_limits<Value>::max() / scale;

  Instance inst;
  inst.n_agents_ = n_agents;
  inst.n_goods_ = n_goods;
  inst.totals_.resize(n_agents, 0);
  for (int i = 0; i < n_agents; ++i) {
    Value total = 0;
    for (int g = 0; g < n_goods; ++g) {
      Value v = row_major[static_cast<std::size_t>(i) * n_goods + g];
      if (v < 0) throw InputError("negative value for agent " + std::to_string(i) + ", good " + std::to_string(g));
      if (__builtin_add_overflow(total, v, &total) || total > max_total)
        throw InputError("agent " + std::to_string(i) + " total exceeds the supported bound (n*(n+1)*total must fit in int64); pre-scale the input");
    }
    inst.totals_[i] = total;
  }
  inst.values_ = std::move(row_major);
  return inst;
}

Value bundle_value(const Instance& inst, int agent, const Bundle& bundle) {
  check_agent(inst, agent);
  check_bundle(inst, bundle);
  Value sum = 0;
  for (int g : bundle) sum += inst.value(agent, g);
  return sum;
}

Value min_good_value(const Instance& inst, int agent, const Bundle& bundle) {
  check_agent(inst, agent);
  check_bundle(inst, bundle);
  if (bundle.empty()) return 0;
  Value m = inst.value(agent, bundle[0]);
  for (std::size_t k = 1; k < bundle.size(); ++k) m = std::min(m, inst.value(agent, bundle[k]));
  return m;
}

std::optional<std::string> validate_allocation(const Instance& inst, const Allocation& alloc) {
  if (alloc.bundles.size() != static_cast<std::size_t>(inst.agents()))
    return "allocation has " + std::to_string(alloc.bundles.size()) + " bundles, expected " +
           std::to_string(inst.agents());
  std::vector<int> owner(inst.goods(), -1);
  for (int i = 0; i < inst.agents(); ++i) {
    int prev = -1;
    for (int g : alloc.bundles[i]) {
      if (g < 0 || g >= inst.goods())
        return "bundle of agent " + std::to_string(i) + " contains out-of-range good " + std::to_string(g);
      if (g <= prev)
        return "bundle of agent " + std::to_string(i) + " is not strictly ascending at good " + std::to_string(g);
      prev = g;
      if (owner[g] != -1)
        return "good " + std::to_string(g) + " assigned to both agent " + std::to_string(owner[g]) +
               " and agent " + std::to_string(i);
      owner[g] = i;
    }
  }
  for (int g = 0; g < inst.goods(); ++g)
    if (owner[g] == -1) return "good " + std::to_string(g) + " is unassigned";
  return std::nullopt;
}

}  // namespace propavg
