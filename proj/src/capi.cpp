#include "propavg.h"

#include <algorithm>
#include <cstring>
#include <random>
#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/oracle.hpp"
#include "core/serialize.hpp"
#include "core/solver.hpp"
#include "core/verifier.hpp"

struct propavg_instance {
  propavg::Instance impl;
};
struct propavg_allocation {
  propavg::Allocation impl;
};
struct propavg_report {
  propavg::SatisfactionReport impl;
};
struct propavg_trace {
  propavg::SolverTrace impl;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* msg) { g_last_error = msg; }

template <typename Fn>
propavg_status guarded(Fn&& fn) {
  try {
    fn();
    return PROPAVG_OK;
  } catch (const propavg::BudgetError& e) {
    set_error(e.what());
    return PROPAVG_ERR_BUDGET;
  } catch (const propavg::InputError& e) {
    set_error(e.what());
    return PROPAVG_ERR_INPUT;
  } catch (const propavg::InternalError& e) {
    set_error(e.what());
    return PROPAVG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PROPAVG_ERR_INTERNAL;
  }
}

propavg::Notion to_notion(propavg_notion n) {
  if (n < PROPAVG_NOTION_PROP || n > PROPAVG_NOTION_EFX)
    throw propavg::InputError("unknown notion code " + std::to_string(static_cast<int>(n)));
  return static_cast<propavg::Notion>(static_cast<int>(n));
}

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void require(bool cond, const char* msg) {
  if (!cond) throw propavg::InputError(msg);
}

const propavg::LevelTrace* level_at(const propavg_trace* trace, int32_t level) {
  if (!trace || level < 0 || level >= static_cast<int32_t>(trace->impl.levels.size())) {
    set_error("trace level index out of range");
    return nullptr;
  }
  return &trace->impl.levels[level];
}

const propavg::AgentVerdict* verdict_at(const propavg_report* report, int32_t agent) {
  if (!report || agent < 0 || agent >= static_cast<int32_t>(report->impl.agents.size())) {
    set_error("report agent index out of range");
    return nullptr;
  }
  return &report->impl.agents[agent];
}

}  // namespace

extern "C" {

const char* propavg_version(void) { return "1.0.0"; }

const char* propavg_last_error(void) { return g_last_error.c_str(); }

const char* propavg_notion_name(propavg_notion notion) {
  if (notion < PROPAVG_NOTION_PROP || notion > PROPAVG_NOTION_EFX) return nullptr;
  return propavg::notion_name(static_cast<propavg::Notion>(static_cast<int>(notion)));
}

int propavg_notion_parse(const char* name) {
  if (!name) return -1;
  auto n = propavg::notion_from_name(name);
  return n ? static_cast<int>(*n) : -1;
}

propavg_status propavg_instance_create(int32_t n_agents, int32_t n_goods, const int64_t* values,
                                       propavg_instance** out) {
  return guarded([&] {
    require(out != nullptr, "out pointer is NULL");
    const bool needs_values = n_agents > 0 && n_goods > 0;
    require(!needs_values || values != nullptr, "values pointer is NULL");
    std::vector<propavg::Value> data;
    if (needs_values) data.assign(values, values + static_cast<std::size_t>(n_agents) * n_goods);
    *out = new propavg_instance{propavg::Instance::create(n_agents, n_goods, std::move(data))};
  });
}

propavg_status propavg_instance_generate(int32_t n_agents, int32_t n_goods, int64_t max_value,
                                         uint64_t seed, propavg_instance** out) {
  return guarded([&] {
    require(out != nullptr, "out pointer is NULL");
    require(max_value >= 0, "max_value must be non-negative");
    require(n_agents >= 1, "n_agents must be positive");
    require(n_goods >= 0, "n_goods must be non-negative");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int64_t> dist(0, max_value);
    std::vector<propavg::Value> data(static_cast<std::size_t>(n_agents) * n_goods);
    for (auto& v : data) v = dist(rng);
    *out = new propavg_instance{propavg::Instance::create(n_agents, n_goods, std::move(data))};
  });
}

propavg_status propavg_instance_from_json(const char* text, propavg_instance** out) {
  return guarded([&] {
    require(out != nullptr, "out pointer is NULL");
    require(text != nullptr, "text pointer is NULL");
    *out = new propavg_instance{propavg::instance_from_json(text)};
  });
}

propavg_status propavg_instance_to_json(const propavg_instance* inst, char** out_text) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(out_text != nullptr, "out pointer is NULL");
    *out_text = copy_out(propavg::instance_to_json(inst->impl));
  });
}

void propavg_instance_free(propavg_instance* inst) { delete inst; }

int32_t propavg_instance_agents(const propavg_instance* inst) {
  return inst ? inst->impl.agents() : -1;
}

int32_t propavg_instance_goods(const propavg_instance* inst) {
  return inst ? inst->impl.goods() : -1;
}

int64_t propavg_instance_value(const propavg_instance* inst, int32_t agent, int32_t good) {
  if (!inst || agent < 0 || agent >= inst->impl.agents() || good < 0 ||
      good >= inst->impl.goods()) {
    set_error("propavg_instance_value: bad handle or index");
    return -1;
  }
  return inst->impl.value(agent, good);
}

propavg_status propavg_allocation_create(const propavg_instance* inst, const int32_t* bundle_sizes,
                                         const int32_t* goods, propavg_allocation** out) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(out != nullptr, "out pointer is NULL");
    require(bundle_sizes != nullptr, "bundle_sizes pointer is NULL");
    propavg::Allocation alloc;
    alloc.bundles.resize(inst->impl.agents());
    std::size_t offset = 0;
    for (int i = 0; i < inst->impl.agents(); ++i) {
      require(bundle_sizes[i] >= 0, "bundle sizes must be non-negative");
      require(bundle_sizes[i] == 0 || goods != nullptr, "goods pointer is NULL");
      auto& b = alloc.bundles[i];
      b.assign(goods + offset, goods + offset + bundle_sizes[i]);
      std::sort(b.begin(), b.end());
      offset += static_cast<std::size_t>(bundle_sizes[i]);
    }
    if (auto bad = propavg::validate_allocation(inst->impl, alloc))
      throw propavg::InputError("invalid allocation: " + *bad);
    *out = new propavg_allocation{std::move(alloc)};
  });
}

propavg_status propavg_allocation_from_json(const propavg_instance* inst, const char* text,
                                            propavg_allocation** out) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(text != nullptr, "text pointer is NULL");
    require(out != nullptr, "out pointer is NULL");
    propavg::Allocation alloc = propavg::allocation_from_json(inst->impl, text);
    if (auto bad = propavg::validate_allocation(inst->impl, alloc))
      throw propavg::InputError("invalid allocation: " + *bad);
    *out = new propavg_allocation{std::move(alloc)};
  });
}

void propavg_allocation_free(propavg_allocation* alloc) { delete alloc; }

int32_t propavg_allocation_agents(const propavg_allocation* alloc) {
  return alloc ? static_cast<int32_t>(alloc->impl.bundles.size()) : -1;
}

int32_t propavg_allocation_bundle_size(const propavg_allocation* alloc, int32_t agent) {
  if (!alloc || agent < 0 || agent >= static_cast<int32_t>(alloc->impl.bundles.size())) {
    set_error("propavg_allocation_bundle_size: bad handle or index");
    return -1;
  }
  return static_cast<int32_t>(alloc->impl.bundles[agent].size());
}

propavg_status propavg_allocation_bundle(const propavg_allocation* alloc, int32_t agent,
                                         int32_t* buf, int32_t cap) {
  return guarded([&] {
    require(alloc != nullptr, "allocation is NULL");
    require(agent >= 0 && agent < static_cast<int32_t>(alloc->impl.bundles.size()),
            "agent index out of range");
    const auto& b = alloc->impl.bundles[agent];
    require(cap >= static_cast<int32_t>(b.size()), "buffer too small for bundle");
    require(b.empty() || buf != nullptr, "buffer pointer is NULL");
    for (std::size_t k = 0; k < b.size(); ++k) buf[k] = b[k];
  });
}

propavg_status propavg_solve(const propavg_instance* inst, propavg_allocation** out,
                             propavg_trace** out_trace) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(out != nullptr, "out pointer is NULL");
    auto [alloc, trace] = propavg::solve_traced(inst->impl);
    *out = new propavg_allocation{std::move(alloc)};
    if (out_trace) *out_trace = new propavg_trace{std::move(trace)};
  });
}

void propavg_trace_free(propavg_trace* trace) { delete trace; }

int32_t propavg_trace_levels(const propavg_trace* trace) {
  return trace ? static_cast<int32_t>(trace->impl.levels.size()) : -1;
}

int32_t propavg_trace_level_agents(const propavg_trace* trace, int32_t level) {
  const auto* lt = level_at(trace, level);
  return lt ? lt->n_agents : -1;
}

int32_t propavg_trace_level_goods(const propavg_trace* trace, int32_t level) {
  const auto* lt = level_at(trace, level);
  return lt ? lt->n_goods : -1;
}

int32_t propavg_trace_level_awards(const propavg_trace* trace, int32_t level) {
  const auto* lt = level_at(trace, level);
  return lt ? static_cast<int32_t>(lt->singleton_awards.size()) : -1;
}

int32_t propavg_trace_level_iterations(const propavg_trace* trace, int32_t level) {
  const auto* lt = level_at(trace, level);
  return lt ? lt->repair_iterations : -1;
}

int32_t propavg_trace_level_chooser_slot(const propavg_trace* trace, int32_t level) {
  const auto* lt = level_at(trace, level);
  return lt ? lt->chooser_slot : -2;
}

propavg_status propavg_verify(const propavg_instance* inst, const propavg_allocation* alloc,
                              propavg_notion notion, propavg_report** out) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(alloc != nullptr, "allocation is NULL");
    require(out != nullptr, "out pointer is NULL");
    *out = new propavg_report{propavg::verify(inst->impl, alloc->impl, to_notion(notion))};
  });
}

void propavg_report_free(propavg_report* report) { delete report; }

int propavg_report_all_satisfied(const propavg_report* report) {
  return report ? (report->impl.all_satisfied ? 1 : 0) : -1;
}

int propavg_report_agent_satisfied(const propavg_report* report, int32_t agent) {
  const auto* v = verdict_at(report, agent);
  return v ? (v->satisfied ? 1 : 0) : -1;
}

int64_t propavg_report_lhs(const propavg_report* report, int32_t agent) {
  const auto* v = verdict_at(report, agent);
  return v ? v->lhs : -1;
}

int64_t propavg_report_rhs(const propavg_report* report, int32_t agent) {
  const auto* v = verdict_at(report, agent);
  return v ? v->rhs : -1;
}

propavg_status propavg_enumerate(const propavg_instance* inst, propavg_notion notion,
                                 uint64_t budget, uint64_t* out_count,
                                 propavg_allocation** out_first) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(out_count != nullptr, "out_count pointer is NULL");
    auto result = propavg::enumerate_satisfying(inst->impl, to_notion(notion), budget);
    *out_count = result.count;
    if (out_first)
      *out_first = result.first ? new propavg_allocation{std::move(*result.first)} : nullptr;
  });
}

propavg_status propavg_exists(const propavg_instance* inst, propavg_notion notion, uint64_t budget,
                              int* out_exists) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(out_exists != nullptr, "out_exists pointer is NULL");
    *out_exists = propavg::any_satisfying(inst->impl, to_notion(notion), budget) ? 1 : 0;
  });
}

propavg_status propavg_result_to_json(const propavg_instance* inst, const propavg_allocation* alloc,
                                      const propavg_trace* trace, const propavg_notion* notions,
                                      int32_t n_notions, char** out_text) {
  return guarded([&] {
    require(inst != nullptr, "instance is NULL");
    require(alloc != nullptr, "allocation is NULL");
    require(out_text != nullptr, "out pointer is NULL");
    require(n_notions >= 0, "n_notions must be non-negative");
    require(n_notions == 0 || notions != nullptr, "notions pointer is NULL");
    std::vector<propavg::Notion> list;
    list.reserve(n_notions);
    for (int32_t k = 0; k < n_notions; ++k) list.push_back(to_notion(notions[k]));
    *out_text = copy_out(propavg::result_to_json(
        inst->impl, alloc->impl, trace ? &trace->impl : nullptr, list));
  });
}

void propavg_string_free(char* text) { delete[] text; }

}  // extern "C"
