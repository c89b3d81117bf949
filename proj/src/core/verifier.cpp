#include "core/verifier.hpp"

#include <algorithm>
#include <string>

namespace propavg {

const char* notion_name(Notion n) {
  switch (n) {
    case Notion::PROP: return "PROP";
    case Notion::PROP1: return "PROP1";
    case Notion::PROPM: return "PROPM";
    case Notion::PROPAVG: return "PROPAVG";
    case Notion::AVG_EFX: return "AVG_EFX";
    case Notion::PROPX: return "PROPX";
    case Notion::EF: return "EF";
    case Notion::EF1: return "EF1";
    case Notion::EFX: return "EFX";
  }
  throw InputError("unknown notion");
}

std::optional<Notion> notion_from_name(std::string_view name) {
  for (Notion n : kAllNotions)
    if (name == notion_name(n)) return n;
  return std::nullopt;
}

bool is_share_based(Notion n) {
  switch (n) {
    case Notion::EF:
    case Notion::EF1:
    case Notion::EFX: return false;
    default: return true;
  }
}

namespace {

void check_inputs(const Instance& inst, const Allocation& alloc, int agent) {
  if (agent < 0 || agent >= inst.agents())
    throw InputError("agent index " + std::to_string(agent) + " out of range [0, " +
                     std::to_string(inst.agents()) + ")");
  if (auto bad = validate_allocation(inst, alloc)) throw InputError("invalid allocation: " + *bad);
}

Value unchecked_bundle_value(const Instance& inst, int agent, const Bundle& b) {
  Value sum = 0;
  for (int g : b) sum += inst.value(agent, g);
  return sum;
}

Value unchecked_min_good(const Instance& inst, int agent, const Bundle& b) {
  Value m = 0;
  bool first = true;
  for (int g : b) {
    Value v = inst.value(agent, g);
    m = first ? v : std::min(m, v);
    first = false;
  }
  return m;
}

Deficiency unchecked_deficiency(const Instance& inst, const Allocation& alloc, int agent, Notion n) {
  const int na = inst.agents();
  if (na == 1) return {1, 0};
  switch (n) {
    case Notion::PROP:
      return {1, 0};
    case Notion::PROP1: {
      Value best = 0;
      for (int k = 0; k < na; ++k) {
        if (k == agent) continue;
        for (int g : alloc.bundles[k]) best = std::max(best, inst.value(agent, g));
      }
      return {1, best};
    }
    case Notion::PROPM: {
      Value best = 0;
      for (int k = 0; k < na; ++k)
        if (k != agent) best = std::max(best, unchecked_min_good(inst, agent, alloc.bundles[k]));
      return {1, best};
    }
    case Notion::PROPAVG: {
      Value sum = 0;
      for (int k = 0; k < na; ++k)
        if (k != agent) sum += unchecked_min_good(inst, agent, alloc.bundles[k]);
      return {na - 1, sum};
    }
    case Notion::AVG_EFX: {
      Value sum = 0;
      for (int k = 0; k < na; ++k)
        if (k != agent) sum += unchecked_min_good(inst, agent, alloc.bundles[k]);
      return {na, sum};
    }
    case Notion::PROPX: {
      Value best = 0;
      bool first = true;
      for (int k = 0; k < na; ++k) {
        if (k == agent) continue;
        Value m = unchecked_min_good(inst, agent, alloc.bundles[k]);
        best = first ? m : std::min(best, m);
        first = false;
      }
      return {1, best};
    }
    default:
      throw InputError(std::string("notion ") + notion_name(n) + " has no share-based allowance");
  }
}

AgentVerdict share_based_verdict(const Instance& inst, const Allocation& alloc, int agent, Notion n) {
  Deficiency d = unchecked_deficiency(inst, alloc, agent, n);
  const Value na = inst.agents();
  Value lhs = d.coef * na * unchecked_bundle_value(inst, agent, alloc.bundles[agent]) + na * d.num;
  Value rhs = d.coef * inst.total(agent);
  return {lhs >= rhs, lhs, rhs};
}

AgentVerdict envy_verdict(const Instance& inst, const Allocation& alloc, int agent, Notion n) {
  const int na = inst.agents();
  const Value own = unchecked_bundle_value(inst, agent, alloc.bundles[agent]);
  AgentVerdict out{true, 0, 0};
  bool have_pair = false;
  for (int k = 0; k < na; ++k) {
    if (k == agent) continue;
    const Bundle& other = alloc.bundles[k];
    Value lhs = own, rhs = unchecked_bundle_value(inst, agent, other);
    switch (n) {
      case Notion::EF:
        break;
      case Notion::EF1: {
        if (other.empty()) {
          rhs = 0;  // nothing to envy and nothing to remove; passes vacuously
        } else {
          Value best = inst.value(agent, other[0]);
          for (int g : other) best = std::max(best, inst.value(agent, g));
          rhs -= best;
        }
        break;
      }
      case Notion::EFX:
        lhs += unchecked_min_good(inst, agent, other);
        break;
      default:
        throw InternalError("envy verdict called with share-based notion");
    }
    if (!have_pair || lhs - rhs < out.lhs - out.rhs) out = {lhs >= rhs, lhs, rhs};
    have_pair = true;
  }
  return out;
}

AgentVerdict agent_verdict(const Instance& inst, const Allocation& alloc, int agent, Notion n) {
  return is_share_based(n) ? share_based_verdict(inst, alloc, agent, n)
                           : envy_verdict(inst, alloc, agent, n);
}

}  // namespace

Deficiency deficiency_numerator(const Instance& inst, const Allocation& alloc, int agent, Notion n) {
  check_inputs(inst, alloc, agent);
  if (!is_share_based(n))
    throw InputError(std::string("notion ") + notion_name(n) + " has no share-based allowance");
  return unchecked_deficiency(inst, alloc, agent, n);
}

bool is_satisfied(const Instance& inst, const Allocation& alloc, int agent, Notion n) {
  check_inputs(inst, alloc, agent);
  return agent_verdict(inst, alloc, agent, n).satisfied;
}

SatisfactionReport verify(const Instance& inst, const Allocation& alloc, Notion n) {
  if (auto bad = validate_allocation(inst, alloc)) throw InputError("invalid allocation: " + *bad);
  SatisfactionReport report;
  report.notion = n;
  report.all_satisfied = true;
  report.agents.reserve(inst.agents());
  for (int i = 0; i < inst.agents(); ++i) {
    report.agents.push_back(agent_verdict(inst, alloc, i, n));
    report.all_satisfied = report.all_satisfied && report.agents.back().satisfied;
  }
  return report;
}

}  // namespace propavg
