#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "core/instance.hpp"

namespace propavg {

// Fairness notions, ordered share-based first. The share-based group compares
// v_i(X_i) + d_i against a proportional share v_i(M)/n where d_i is a
// notion-specific allowance; the envy group compares bundles pairwise.
enum class Notion {
  PROP,      // d = 0
  PROP1,     // d = largest single-good value held by others
  PROPM,     // d = largest over others of their bundle's min value
  PROPAVG,   // d = average over others of their bundle's min value
  AVG_EFX,   // d = sum over others of min values, divided by n
  PROPX,     // d = smallest over others of their bundle's min value
  EF,
  EF1,
  EFX,
};

inline constexpr Notion kAllNotions[] = {Notion::PROP,    Notion::PROP1, Notion::PROPM,
                                         Notion::PROPAVG, Notion::AVG_EFX, Notion::PROPX,
                                         Notion::EF,      Notion::EF1,   Notion::EFX};

const char* notion_name(Notion n);
std::optional<Notion> notion_from_name(std::string_view name);
bool is_share_based(Notion n);

// Allowance d_i as an exact fraction num/coef (coef positive). For the
// divided notions with a single agent the allowance degenerates to 0/1, which
// makes the satisfaction check the plain proportionality one.
struct Deficiency {
  Value coef;
  Value num;
};

// Share-based notions only; envy notions have no allowance and are refused.
Deficiency deficiency_numerator(const Instance& inst, const Allocation& alloc, int agent, Notion n);

bool is_satisfied(const Instance& inst, const Allocation& alloc, int agent, Notion n);

// The integer comparison that decided an agent's verdict: satisfied iff
// lhs >= rhs. Share-based: lhs = coef*n*v_i(X_i) + n*num, rhs = coef*v_i(M).
// Envy-based: the tightest pairwise comparison (smallest lhs - rhs, ties to
// the lowest other agent); (0, 0) when there is no other agent.
struct AgentVerdict {
  bool satisfied;
  Value lhs;
  Value rhs;
};

struct SatisfactionReport {
  Notion notion;
  std::vector<AgentVerdict> agents;
  bool all_satisfied;
};

SatisfactionReport verify(const Instance& inst, const Allocation& alloc, Notion n);

}  // namespace propavg
