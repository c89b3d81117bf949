#pragma once

#include <utility>
#include <vector>

#include "core/instance.hpp"
#include "core/matching.hpp"

namespace propavg {

// A candidate split of one recursion level's goods into one slot per level
// agent. Slots are positions, not yet owned by anyone; one slot is the
// designated reserve that grows while the split is being repaired.
struct SlotPartition {
  std::vector<Bundle> bundles;  // good ids, strictly ascending within a slot
  int reserve_slot = 0;
};

// The eligibility graph of a partition: left vertices are the level's agents
// except the last one (the chooser), right vertices are the slots. An edge
// (i, u) says slot u is good enough for agent i assuming the worst about the
// remaining slots: n(n-1)*v_i(X_u) + n*sum_{u' != r, u' != u} min_i(X_u')
// >= (n-1)*v_i(level goods). The reserve's bundle never contributes a min
// term, and for u = r the sum runs over every other slot.
struct PropavgGraph {
  SlotPartition partition;
  BipartiteGraph graph;
};

PropavgGraph build_propavg_graph(const Instance& inst, const std::vector<int>& agents,
                                 SlotPartition partition);

// Whether the graph minus the reserve slot has a perfect matching, i.e. the
// non-chooser agents can all be placed if the chooser were handed the reserve.
bool reserve_removable(const PropavgGraph& g);

// Whether the graph minus any single slot has a perfect matching, i.e. the
// placement survives the chooser taking whichever slot it likes best.
bool all_slots_removable(const PropavgGraph& g);

// Outcome of the singleton-award pass that opens each level: agents whose
// value for some single good already covers their adjusted share are handed
// that good and leave the level. Scan order is agents ascending then goods
// ascending, first qualifying pair each round, rescanning after every award;
// the pass never awards the last remaining agent, so active_agents is never
// empty.
struct PreprocessState {
  std::vector<int> active_agents;
  std::vector<std::pair<int, int>> removed;  // (agent, good) in award order
  std::vector<int> active_goods;
};

PreprocessState preprocess(const Instance& inst, const std::vector<int>& agents,
                           const std::vector<int>& goods);

// Seeds the repair loop from a solved (n-1)-agent split of the same goods:
// slot i takes sub bundle i, plus an empty reserve slot at the end. The
// result is checked reserve-removable; a failure is an internal error because
// the construction guarantees it for any level that had no singleton awards.
PropavgGraph initial_partition_from_subsolution(const Instance& inst, const std::vector<int>& agents,
                                                const std::vector<Bundle>& sub_bundles);

struct GoodMove {
  int slot;
  int good;
};

// First good (scanning non-reserve slots ascending, goods ascending inside a
// slot) whose move into the reserve keeps the graph reserve-removable.
// Requires a graph that is reserve-removable but not all-slots-removable;
// calling it on an already repaired graph is an input error. Exhausting all
// candidates without success is an internal error: the repair loop is
// guaranteed a safe move as long as its entry conditions hold.
GoodMove find_safe_reserve_move(const Instance& inst, const std::vector<int>& agents,
                                const PropavgGraph& g);

// Hands the chooser (last agent) its most valuable slot (ties to the lowest
// slot index) and places everyone else along a perfect matching that avoids
// that slot. Requires all_slots_removable. Returns bundles aligned with
// agents.
std::vector<Bundle> finalize_level(const Instance& inst, const std::vector<int>& agents,
                                   const PropavgGraph& g);

// Restricts inst to the given agents and goods (bundles re-indexed to the
// restriction) and checks every listed agent accepts its bundle under the
// averaged-min share at that level. Used by the paranoid solve mode and by
// tests to audit intermediate levels.
bool level_propavg_satisfied(const Instance& inst, const std::vector<int>& agents,
                             const std::vector<int>& goods, const std::vector<Bundle>& bundles);

struct LevelTrace {
  int n_agents = 0;
  int n_goods = 0;
  std::vector<std::pair<int, int>> singleton_awards;
  int repair_iterations = 0;
  std::vector<int> moved_goods;
  int chooser_slot = -1;  // -1 for levels resolved by awards or the base case
};

struct SolverTrace {
  std::vector<LevelTrace> levels;
};

struct SolveOptions {
  // Re-derives every internal guarantee through independent recomputation
  // (edge preservation after moves, move safety, sub-solution quality, the
  // Hall-condition bridge on small levels). Meant for tests; the cheap
  // always-on guards stay active regardless.
  bool paranoid = false;
};

// Computes an allocation every agent accepts under the averaged-min-value
// share relaxation, in polynomial time. Deterministic: equal instances give
// equal allocations and traces. The result is re-verified before returning;
// a verification failure is an internal error.
Allocation solve(const Instance& inst);
std::pair<Allocation, SolverTrace> solve_traced(const Instance& inst, const SolveOptions& opts = {});

}  // namespace propavg
