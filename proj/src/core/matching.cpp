#include "core/matching.hpp"

#include <cstdint>
#include <string>

#include "core/instance.hpp"

namespace propavg {

namespace {

void check_graph(const BipartiteGraph& g) {
  if (g.left_size < 0 || g.right_size < 0) throw InputError("negative graph dimension");
  if (g.adj.size() != static_cast<std::size_t>(g.left_size))
    throw InputError("adjacency list count " + std::to_string(g.adj.size()) + " does not match left_size " +
                     std::to_string(g.left_size));
  for (const auto& row : g.adj) {
    int prev = -1;
    for (int u : row) {
      if (u < 0 || u >= g.right_size)
        throw InputError("adjacency index " + std::to_string(u) + " out of range [0, " +
                         std::to_string(g.right_size) + ")");
      if (u <= prev) throw InputError("adjacency lists must be strictly ascending");
      prev = u;
    }
  }
}

bool augment(const BipartiteGraph& g, int v, int excluded_right, std::vector<char>& seen,
             std::vector<int>& left_of) {
  for (int u : g.adj[v]) {
    if (u == excluded_right || seen[u]) continue;
    seen[u] = 1;
    if (left_of[u] < 0 || augment(g, left_of[u], excluded_right, seen, left_of)) {
      left_of[u] = v;
      return true;
    }
  }
  return false;
}

}  // namespace

Matching max_matching(const BipartiteGraph& g, int excluded_right) {
  check_graph(g);
  std::vector<int> left_of(g.right_size, -1);
  Matching m;
  m.right_of.assign(g.left_size, -1);
  std::vector<char> seen(g.right_size);
  for (int v = 0; v < g.left_size; ++v) {
    seen.assign(g.right_size, 0);
    if (augment(g, v, excluded_right, seen, left_of)) ++m.size;
  }
  for (int u = 0; u < g.right_size; ++u)
    if (left_of[u] >= 0) m.right_of[left_of[u]] = u;
  return m;
}

bool has_perfect_matching(const BipartiteGraph& g, int excluded_right) {
  return max_matching(g, excluded_right).size == g.left_size;
}

std::optional<std::vector<int>> hall_deficient_set(const BipartiteGraph& g, int excluded_right,
                                                  bool strict, int cap) {
  check_graph(g);
  if (g.left_size > cap)
    throw InputError("left_size " + std::to_string(g.left_size) + " exceeds subset enumeration cap " +
                     std::to_string(cap));
  if (g.right_size > 63) throw InputError("right_size too large for neighbourhood masks");

  std::vector<std::uint64_t> nbr(g.left_size, 0);
  for (int v = 0; v < g.left_size; ++v)
    for (int u : g.adj[v])
      if (u != excluded_right) nbr[v] |= std::uint64_t{1} << u;

  const std::uint64_t limit = std::uint64_t{1} << g.left_size;
  for (std::uint64_t mask = 1; mask < limit; ++mask) {
    std::uint64_t joint = 0;
    for (int v = 0; v < g.left_size; ++v)
      if (mask >> v & 1) joint |= nbr[v];
    int need = __builtin_popcountll(mask) + (strict ? 1 : 0);
    if (need > __builtin_popcountll(joint)) {
      std::vector<int> set;
      for (int v = 0; v < g.left_size; ++v)
        if (mask >> v & 1) set.push_back(v);
      return set;
    }
  }
  return std::nullopt;
}

}  // namespace propavg
