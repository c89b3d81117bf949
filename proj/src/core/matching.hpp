#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace propavg {

// Bipartite graph in left-adjacency form. adj[v] lists the right neighbours
// of left vertex v, strictly ascending.
struct BipartiteGraph {
  int left_size = 0;
  int right_size = 0;
  std::vector<std::vector<int>> adj;
};

inline constexpr int kNoExclusion = -1;

struct Matching {
  std::vector<int> right_of;  // per left vertex: matched right index, or -1
  int size = 0;

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int v = 0; v < static_cast<int>(right_of.size()); ++v)
      if (right_of[v] >= 0) out.emplace_back(v, right_of[v]);
    return out;
  }
};

// Maximum matching by deterministic augmenting-path search: left vertices are
// processed ascending and each search tries neighbours ascending, so equal
// graphs always produce the same matching. excluded_right, when not
// kNoExclusion, is treated as absent from the graph.
Matching max_matching(const BipartiteGraph& g, int excluded_right = kNoExclusion);

// True when every left vertex is matched in the graph minus excluded_right.
bool has_perfect_matching(const BipartiteGraph& g, int excluded_right = kNoExclusion);

// Exhaustive search for a Hall-condition violation, neighbourhoods taken in
// the graph minus excluded_right. Returns the first (by subset rank) nonempty
// S of left vertices with |S| > |N(S)|, or with |S| + 1 > |N(S)| when strict
// is set; nullopt when none exists. Guarded by cap: left_size above it is
// refused (2^left_size subsets).
std::optional<std::vector<int>> hall_deficient_set(const BipartiteGraph& g, int excluded_right,
                                                  bool strict, int cap = 20);

}  // namespace propavg
