#include "core/solver.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "core/verifier.hpp"

namespace propavg {

namespace {

void check_level_agents(const Instance& inst, const std::vector<int>& agents, std::size_t min_size) {
  if (agents.size() < min_size)
    throw InputError("level needs at least " + std::to_string(min_size) + " agents");
  std::vector<char> seen(inst.agents(), 0);
  for (int i : agents) {
    if (i < 0 || i >= inst.agents())
      throw InputError("agent index " + std::to_string(i) + " out of range [0, " +
                       std::to_string(inst.agents()) + ")");
    if (seen[i]) throw InputError("duplicate agent index " + std::to_string(i));
    seen[i] = 1;
  }
}

void check_level_goods(const Instance& inst, const std::vector<int>& goods) {
  int prev = -1;
  for (int g : goods) {
    if (g < 0 || g >= inst.goods())
      throw InputError("good index " + std::to_string(g) + " out of range [0, " +
                       std::to_string(inst.goods()) + ")");
    if (g <= prev) throw InputError("level goods must be strictly ascending");
    prev = g;
  }
}

void check_partition(const Instance& inst, const SlotPartition& part) {
  if (part.reserve_slot < 0 || part.reserve_slot >= static_cast<int>(part.bundles.size()))
    throw InputError("reserve slot out of range");
  std::vector<char> seen(inst.goods(), 0);
  for (const Bundle& b : part.bundles) {
    int prev = -1;
    for (int g : b) {
      if (g < 0 || g >= inst.goods())
        throw InputError("good index " + std::to_string(g) + " out of range [0, " +
                         std::to_string(inst.goods()) + ")");
      if (g <= prev) throw InputError("slot bundles must be strictly ascending");
      prev = g;
      if (seen[g]) throw InputError("good " + std::to_string(g) + " appears in two slots");
      seen[g] = 1;
    }
  }
}

// Shared by the public builder and the move scan, after inputs are known good.
BipartiteGraph build_edges(const Instance& inst, const std::vector<int>& agents,
                           const SlotPartition& part) {
  const int n = static_cast<int>(part.bundles.size());
  const int r = part.reserve_slot;
  BipartiteGraph g;
  g.left_size = n - 1;
  g.right_size = n;
  g.adj.resize(n - 1);
  std::vector<Value> v(n), m(n);
  for (int li = 0; li < n - 1; ++li) {
    const int agent = agents[li];
    Value total = 0, min_sum = 0;
    for (int u = 0; u < n; ++u) {
      Value sum = 0, least = 0;
      bool first = true;
      for (int good : part.bundles[u]) {
        Value val = inst.value(agent, good);
        sum += val;
        least = first ? val : std::min(least, val);
        first = false;
      }
      v[u] = sum;
      m[u] = least;
      total += sum;
      if (u != r) min_sum += least;
    }
    for (int u = 0; u < n; ++u) {
      const Value hold = (u == r) ? min_sum : min_sum - m[u];
      if (static_cast<Value>(n) * (n - 1) * v[u] + static_cast<Value>(n) * hold >=
          static_cast<Value>(n - 1) * total)
        g.adj[li].push_back(u);
    }
  }
  return g;
}

std::optional<GoodMove> scan_safe_move(const Instance& inst, const std::vector<int>& agents,
                                       const PropavgGraph& g) {
  const int n = static_cast<int>(g.partition.bundles.size());
  const int r = g.partition.reserve_slot;
  SlotPartition work = g.partition;
  for (int u = 0; u < n; ++u) {
    if (u == r) continue;
    const Bundle candidates = work.bundles[u];
    for (int good : candidates) {
      auto& from = work.bundles[u];
      auto& into = work.bundles[r];
      from.erase(std::find(from.begin(), from.end(), good));
      into.insert(std::lower_bound(into.begin(), into.end(), good), good);
      const bool ok = has_perfect_matching(build_edges(inst, agents, work), r);
      into.erase(std::find(into.begin(), into.end(), good));
      from.insert(std::lower_bound(from.begin(), from.end(), good), good);
      if (ok) return GoodMove{u, good};
    }
  }
  return std::nullopt;
}

std::pair<std::vector<Bundle>, int> finalize_with_slot(const Instance& inst,
                                                       const std::vector<int>& agents,
                                                       const PropavgGraph& g) {
  const int n = static_cast<int>(agents.size());
  const int chooser = agents.back();
  Value best = -1;
  int best_slot = -1;
  for (int u = 0; u < n; ++u) {
    Value v = 0;
    for (int good : g.partition.bundles[u]) v += inst.value(chooser, good);
    if (v > best) {
      best = v;
      best_slot = u;
    }
  }
  Matching mm = max_matching(g.graph, best_slot);
  if (mm.size != n - 1)
    throw InternalError("no perfect placement for the non-chooser agents despite full repair");
  std::vector<Bundle> out(n);
  out[n - 1] = g.partition.bundles[best_slot];
  for (int li = 0; li < n - 1; ++li) out[li] = g.partition.bundles[mm.right_of[li]];
  return {std::move(out), best_slot};
}

struct Ctx {
  const Instance& inst;
  const SolveOptions& opts;
  SolverTrace& trace;
};

void paranoid_post_move(const PropavgGraph& before, const PropavgGraph& after, const GoodMove& mv,
                        std::size_t moved_from_size) {
  if (!has_perfect_matching(after.graph, after.partition.reserve_slot))
    throw InternalError("self-check: applied move lost reserve-removability");
  // A move out of a slot that keeps at least one good can only shrink that
  // slot's pull on other agents: edges elsewhere must survive.
  if (moved_from_size >= 2) {
    for (int li = 0; li < before.graph.left_size; ++li)
      for (int u : before.graph.adj[li]) {
        if (u == mv.slot) continue;
        const auto& row = after.graph.adj[li];
        if (!std::binary_search(row.begin(), row.end(), u))
          throw InternalError("self-check: edge lost at an untouched slot after a move");
      }
  }
  if (after.graph.left_size <= 9) {
    const bool repaired = all_slots_removable(after);
    const bool deficient =
        hall_deficient_set(after.graph, kNoExclusion, /*strict=*/true).has_value();
    if (repaired == deficient)
      throw InternalError("self-check: strict Hall witness disagrees with slot removability");
  }
}

std::vector<Bundle> solve_level(Ctx& ctx, const std::vector<int>& agents,
                                const std::vector<int>& goods) {
  const int n = static_cast<int>(agents.size());
  const std::size_t slot = ctx.trace.levels.size();
  ctx.trace.levels.emplace_back();
  LevelTrace lt;
  lt.n_agents = n;
  lt.n_goods = static_cast<int>(goods.size());

  if (n == 1) {
    ctx.trace.levels[slot] = std::move(lt);
    return {goods};
  }

  PreprocessState pre = preprocess(ctx.inst, agents, goods);
  if (!pre.removed.empty()) {
    lt.singleton_awards = pre.removed;
    ctx.trace.levels[slot] = std::move(lt);
    std::vector<Bundle> sub = solve_level(ctx, pre.active_agents, pre.active_goods);
    std::vector<Bundle> out(n);
    std::size_t next_active = 0;
    for (int pos = 0; pos < n; ++pos) {
      const int agent = agents[pos];
      auto hit = std::find_if(pre.removed.begin(), pre.removed.end(),
                              [agent](const auto& ag) { return ag.first == agent; });
      if (hit != pre.removed.end())
        out[pos] = {hit->second};
      else
        out[pos] = std::move(sub[next_active++]);
    }
    return out;
  }

  std::vector<int> sub_agents(agents.begin(), agents.end() - 1);
  std::vector<Bundle> sub = solve_level(ctx, sub_agents, goods);
  if (ctx.opts.paranoid && !level_propavg_satisfied(ctx.inst, sub_agents, goods, sub))
    throw InternalError("self-check: sub-solution fails its own level check");

  PropavgGraph g = initial_partition_from_subsolution(ctx.inst, agents, sub);
  int iters = 0;
  while (true) {
    if (!reserve_removable(g))
      throw InternalError("repair loop entered an iteration without reserve-removability");
    if (all_slots_removable(g)) break;
    if (iters >= static_cast<int>(goods.size()))
      throw InternalError("repair loop exceeded the level's good count");
    std::optional<GoodMove> mv = scan_safe_move(ctx.inst, agents, g);
    if (!mv)
      throw InternalError("no good can move to the reserve without losing reserve-removability");
    SlotPartition part = g.partition;
    const std::size_t from_size = part.bundles[mv->slot].size();
    auto& from = part.bundles[mv->slot];
    auto& into = part.bundles[part.reserve_slot];
    from.erase(std::find(from.begin(), from.end(), mv->good));
    into.insert(std::lower_bound(into.begin(), into.end(), mv->good), mv->good);
    PropavgGraph next = build_propavg_graph(ctx.inst, agents, std::move(part));
    if (next.partition.bundles[next.partition.reserve_slot].size() !=
        g.partition.bundles[g.partition.reserve_slot].size() + 1)
      throw InternalError("reserve bundle did not grow across a move");
    if (ctx.opts.paranoid) paranoid_post_move(g, next, *mv, from_size);
    g = std::move(next);
    lt.moved_goods.push_back(mv->good);
    ++iters;
  }
  lt.repair_iterations = iters;

  auto [bundles, chosen] = finalize_with_slot(ctx.inst, agents, g);
  lt.chooser_slot = chosen;
  ctx.trace.levels[slot] = std::move(lt);
  return bundles;
}

}  // namespace

PropavgGraph build_propavg_graph(const Instance& inst, const std::vector<int>& agents,
                                 SlotPartition partition) {
  check_level_agents(inst, agents, 2);
  if (partition.bundles.size() != agents.size())
    throw InputError("partition must have exactly one slot per level agent");
  check_partition(inst, partition);
  PropavgGraph g;
  g.graph = build_edges(inst, agents, partition);
  g.partition = std::move(partition);
  return g;
}

bool reserve_removable(const PropavgGraph& g) {
  return has_perfect_matching(g.graph, g.partition.reserve_slot);
}

bool all_slots_removable(const PropavgGraph& g) {
  for (int u = 0; u < g.graph.right_size; ++u)
    if (!has_perfect_matching(g.graph, u)) return false;
  return true;
}

PreprocessState preprocess(const Instance& inst, const std::vector<int>& agents,
                           const std::vector<int>& goods) {
  check_level_agents(inst, agents, 2);
  check_level_goods(inst, goods);

  const Value n = static_cast<Value>(agents.size());
  std::vector<Value> total(inst.agents(), 0);
  for (int i : agents)
    for (int g : goods) total[i] += inst.value(i, g);

  PreprocessState st;
  st.active_agents = agents;
  st.active_goods = goods;
  std::vector<Value> awarded(inst.agents(), 0);  // value each agent sees in goods given away

  while (st.active_agents.size() >= 2) {
    bool found = false;
    for (std::size_t ai = 0; ai < st.active_agents.size() && !found; ++ai) {
      const int i = st.active_agents[ai];
      for (std::size_t gi = 0; gi < st.active_goods.size(); ++gi) {
        const int g = st.active_goods[gi];
        if (n * (n - 1) * inst.value(i, g) >= (n - 1) * total[i] - n * awarded[i]) {
          st.removed.emplace_back(i, g);
          st.active_agents.erase(st.active_agents.begin() + ai);
          st.active_goods.erase(st.active_goods.begin() + gi);
          for (int j : st.active_agents) awarded[j] += inst.value(j, g);
          found = true;
          break;
        }
      }
    }
    if (!found) break;
  }
  return st;
}

PropavgGraph initial_partition_from_subsolution(const Instance& inst, const std::vector<int>& agents,
                                                const std::vector<Bundle>& sub_bundles) {
  check_level_agents(inst, agents, 2);
  if (sub_bundles.size() + 1 != agents.size())
    throw InputError("expected one sub-solution bundle per non-chooser agent");
  SlotPartition part;
  part.bundles = sub_bundles;
  part.bundles.emplace_back();
  part.reserve_slot = static_cast<int>(agents.size()) - 1;
  PropavgGraph g = build_propavg_graph(inst, agents, std::move(part));
  if (!reserve_removable(g))
    throw InternalError("seed partition from the sub-solution is not reserve-removable");
  return g;
}

GoodMove find_safe_reserve_move(const Instance& inst, const std::vector<int>& agents,
                                const PropavgGraph& g) {
  check_level_agents(inst, agents, 2);
  if (agents.size() != g.partition.bundles.size())
    throw InputError("agent list does not match the partition's slot count");
  if (!reserve_removable(g)) throw InputError("graph is not reserve-removable");
  if (all_slots_removable(g))
    throw InputError("graph is already fully repaired; there is nothing to move");
  std::optional<GoodMove> mv = scan_safe_move(inst, agents, g);
  if (!mv)
    throw InternalError("no good can move to the reserve without losing reserve-removability");
  return *mv;
}

std::vector<Bundle> finalize_level(const Instance& inst, const std::vector<int>& agents,
                                   const PropavgGraph& g) {
  check_level_agents(inst, agents, 2);
  if (agents.size() != g.partition.bundles.size())
    throw InputError("agent list does not match the partition's slot count");
  if (!all_slots_removable(g)) throw InputError("partition is not fully repaired");
  return finalize_with_slot(inst, agents, g).first;
}

bool level_propavg_satisfied(const Instance& inst, const std::vector<int>& agents,
                             const std::vector<int>& goods, const std::vector<Bundle>& bundles) {
  check_level_agents(inst, agents, 1);
  check_level_goods(inst, goods);
  if (bundles.size() != agents.size())
    throw InputError("expected one bundle per level agent");

  std::vector<int> local(inst.goods(), -1);
  for (std::size_t k = 0; k < goods.size(); ++k) local[goods[k]] = static_cast<int>(k);

  std::vector<Value> values;
  values.reserve(agents.size() * goods.size());
  for (int i : agents)
    for (int g : goods) values.push_back(inst.value(i, g));
  Instance sub = Instance::create(static_cast<int>(agents.size()), static_cast<int>(goods.size()),
                                  std::move(values));

  Allocation alloc;
  alloc.bundles.resize(bundles.size());
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    for (int g : bundles[k]) {
      if (g < 0 || g >= inst.goods() || local[g] < 0)
        throw InputError("bundle good " + std::to_string(g) + " is not a level good");
      alloc.bundles[k].push_back(local[g]);
    }
    std::sort(alloc.bundles[k].begin(), alloc.bundles[k].end());
  }
  return verify(sub, alloc, Notion::PROPAVG).all_satisfied;
}

Allocation solve(const Instance& inst) { return solve_traced(inst).first; }

std::pair<Allocation, SolverTrace> solve_traced(const Instance& inst, const SolveOptions& opts) {
  std::vector<int> agents(inst.agents());
  std::iota(agents.begin(), agents.end(), 0);
  std::vector<int> goods(inst.goods());
  std::iota(goods.begin(), goods.end(), 0);

  SolverTrace trace;
  Ctx ctx{inst, opts, trace};
  Allocation out;
  out.bundles = solve_level(ctx, agents, goods);

  if (auto bad = validate_allocation(inst, out))
    throw InternalError("solver produced an invalid allocation: " + *bad);
  if (!verify(inst, out, Notion::PROPAVG).all_satisfied)
    throw InternalError("solver output failed its own verification");
  return {std::move(out), std::move(trace)};
}

}  // namespace propavg
