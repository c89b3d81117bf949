// Command-line front end for libpropavg. Talks to the library exclusively
// through the public C API; file formats are JSON documents (see README).
//
// Exit codes: 0 success, 1 a requested verification came back false (or a
// sweep found a counterexample), 2 bad input, 3 internal library error.

#include <propavg.h>

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitUnsatisfied = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

struct InstanceDeleter {
  void operator()(propavg_instance* p) const { propavg_instance_free(p); }
};
struct AllocationDeleter {
  void operator()(propavg_allocation* p) const { propavg_allocation_free(p); }
};
struct ReportDeleter {
  void operator()(propavg_report* p) const { propavg_report_free(p); }
};
struct TraceDeleter {
  void operator()(propavg_trace* p) const { propavg_trace_free(p); }
};
using InstancePtr = std::unique_ptr<propavg_instance, InstanceDeleter>;
using AllocationPtr = std::unique_ptr<propavg_allocation, AllocationDeleter>;
using ReportPtr = std::unique_ptr<propavg_report, ReportDeleter>;
using TracePtr = std::unique_ptr<propavg_trace, TraceDeleter>;

class ExitWith : public std::exception {
 public:
  explicit ExitWith(int code, std::string msg = "") : code_(code), msg_(std::move(msg)) {}
  int code() const { return code_; }
  const char* what() const noexcept override { return msg_.c_str(); }

 private:
  int code_;
  std::string msg_;
};

int status_exit_code(propavg_status st) {
  switch (st) {
    case PROPAVG_OK: return kExitOk;
    case PROPAVG_ERR_INTERNAL: return kExitInternal;
    default: return kExitInput;  // input and budget problems are caller errors
  }
}

void check(propavg_status st, const std::string& context) {
  if (st != PROPAVG_OK)
    throw ExitWith(status_exit_code(st), context + ": " + propavg_last_error());
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ExitWith(kExitInput, "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ExitWith(kExitInput, "cannot write " + path);
  f << text;
}

InstancePtr load_instance(const std::string& path) {
  propavg_instance* inst = nullptr;
  check(propavg_instance_from_json(read_input(path).c_str(), &inst), "instance " + path);
  return InstancePtr(inst);
}

std::vector<propavg_notion> parse_notions(const std::vector<std::string>& names,
                                          std::vector<propavg_notion> fallback) {
  if (names.empty()) return fallback;
  std::vector<propavg_notion> out;
  for (const auto& name : names) {
    int code = propavg_notion_parse(name.c_str());
    if (code < 0)
      throw ExitWith(kExitInput, "unknown notion \"" + name +
                                     "\" (try PROP, PROP1, PROPM, PROPAVG, AVG_EFX, PROPX, EF, EF1, EFX)");
    propavg_notion n = static_cast<propavg_notion>(code);
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

Json report_to_json(const propavg_report* report, int agents) {
  Json block;
  block["all_satisfied"] = propavg_report_all_satisfied(report) == 1;
  Json per_agent = Json::array();
  for (int i = 0; i < agents; ++i) {
    Json cell;
    cell["agent"] = i;
    cell["satisfied"] = propavg_report_agent_satisfied(report, i) == 1;
    cell["lhs"] = propavg_report_lhs(report, i);
    cell["rhs"] = propavg_report_rhs(report, i);
    per_agent.push_back(std::move(cell));
  }
  block["agents"] = std::move(per_agent);
  return block;
}

Json instance_json(const propavg_instance* inst) {
  char* text = nullptr;
  check(propavg_instance_to_json(inst, &text), "serialize instance");
  Json doc = Json::parse(text);
  propavg_string_free(text);
  return doc;
}

// ---- solve ----

int cmd_solve(const std::string& instance_path, const std::string& out_path,
              const std::vector<std::string>& notion_names) {
  InstancePtr inst = load_instance(instance_path);
  auto notions = parse_notions(notion_names, {});
  if (std::find(notions.begin(), notions.end(), PROPAVG_NOTION_PROPAVG) == notions.end())
    notions.insert(notions.begin(), PROPAVG_NOTION_PROPAVG);

  propavg_allocation* alloc = nullptr;
  propavg_trace* trace = nullptr;
  check(propavg_solve(inst.get(), &alloc, &trace), "solve");
  AllocationPtr alloc_guard(alloc);
  TracePtr trace_guard(trace);

  char* text = nullptr;
  check(propavg_result_to_json(inst.get(), alloc, trace, notions.data(),
                               static_cast<int32_t>(notions.size()), &text),
        "serialize result");
  std::string doc(text);
  propavg_string_free(text);
  write_output(out_path, doc);
  return kExitOk;
}

// ---- verify ----

int cmd_verify(const std::string& instance_path, const std::string& allocation_path,
               const std::vector<std::string>& notion_names, bool as_json) {
  InstancePtr inst = load_instance(instance_path);
  propavg_allocation* alloc = nullptr;
  check(propavg_allocation_from_json(inst.get(), read_input(allocation_path).c_str(), &alloc),
        "allocation " + allocation_path);
  AllocationPtr alloc_guard(alloc);

  auto notions = parse_notions(notion_names, {PROPAVG_NOTION_PROPAVG});
  const int agents = propavg_instance_agents(inst.get());

  bool all_ok = true;
  Json out;
  out["notions"] = Json::object();
  for (propavg_notion n : notions) {
    propavg_report* report = nullptr;
    check(propavg_verify(inst.get(), alloc, n, &report), "verify");
    ReportPtr report_guard(report);
    const bool ok = propavg_report_all_satisfied(report) == 1;
    all_ok = all_ok && ok;
    if (as_json) {
      out["notions"][propavg_notion_name(n)] = report_to_json(report, agents);
    } else {
      std::printf("%s: %s\n", propavg_notion_name(n), ok ? "satisfied" : "VIOLATED");
      for (int i = 0; i < agents; ++i) {
        const bool agent_ok = propavg_report_agent_satisfied(report, i) == 1;
        std::printf("  agent %d: %s (lhs %" PRId64 " %s rhs %" PRId64 ")\n", i,
                    agent_ok ? "ok" : "FAIL", propavg_report_lhs(report, i),
                    agent_ok ? ">=" : "<", propavg_report_rhs(report, i));
      }
    }
  }
  if (as_json) {
    out["all_satisfied"] = all_ok;
    std::cout << out.dump(2) << "\n";
  }
  return all_ok ? kExitOk : kExitUnsatisfied;
}

// ---- gen ----

int cmd_gen(int agents, int goods, std::int64_t max_value, std::uint64_t seed, int count,
            const std::string& out_prefix) {
  if (count < 1) throw ExitWith(kExitInput, "--count must be at least 1");
  if (count > 1 && out_prefix.empty())
    throw ExitWith(kExitInput, "--count above 1 needs --out PREFIX");

  int width = 3;
  for (int c = count - 1; c >= 1000; c /= 10) ++width;

  for (int k = 0; k < count; ++k) {
    propavg_instance* inst = nullptr;
    check(propavg_instance_generate(agents, goods, max_value, seed + static_cast<std::uint64_t>(k),
                                    &inst),
          "generate");
    InstancePtr guard(inst);
    char* text = nullptr;
    check(propavg_instance_to_json(inst, &text), "serialize instance");
    std::string doc(text);
    propavg_string_free(text);
    if (count == 1 && out_prefix.empty()) {
      std::cout << doc;
    } else if (count == 1) {
      write_output(out_prefix, doc);
    } else {
      std::ostringstream name;
      name << out_prefix << std::setw(width) << std::setfill('0') << k << ".json";
      write_output(name.str(), doc);
    }
  }
  return kExitOk;
}

// ---- bench ----

int cmd_bench(int agents, int goods, std::int64_t max_value, std::uint64_t seed, int trials,
              bool as_json) {
  if (trials < 0) throw ExitWith(kExitInput, "--trials must be non-negative");
  std::vector<double> times_ms;
  int max_iterations = 0;

  for (int t = 0; t < trials; ++t) {
    propavg_instance* inst = nullptr;
    check(propavg_instance_generate(agents, goods, max_value, seed + static_cast<std::uint64_t>(t),
                                    &inst),
          "generate");
    InstancePtr inst_guard(inst);

    propavg_allocation* alloc = nullptr;
    propavg_trace* trace = nullptr;
    const auto start = std::chrono::steady_clock::now();
    check(propavg_solve(inst, &alloc, &trace), "solve");
    const auto stop = std::chrono::steady_clock::now();
    AllocationPtr alloc_guard(alloc);
    TracePtr trace_guard(trace);
    times_ms.push_back(std::chrono::duration<double, std::milli>(stop - start).count());

    propavg_report* report = nullptr;
    check(propavg_verify(inst, alloc, PROPAVG_NOTION_PROPAVG, &report), "verify");
    ReportPtr report_guard(report);
    if (propavg_report_all_satisfied(report) != 1)
      throw ExitWith(kExitInternal, "solver output failed verification in trial " + std::to_string(t));

    for (int32_t lvl = 0; lvl < propavg_trace_levels(trace); ++lvl)
      max_iterations = std::max(max_iterations, propavg_trace_level_iterations(trace, lvl));
  }

  std::vector<double> sorted = times_ms;
  std::sort(sorted.begin(), sorted.end());
  double median = 0.0, mean = 0.0, worst = 0.0;
  if (!sorted.empty()) {
    const std::size_t mid = sorted.size() / 2;
    median = sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    for (double t : sorted) mean += t;
    mean /= static_cast<double>(sorted.size());
    worst = sorted.back();
  }

  if (as_json) {
    Json out;
    out["agents"] = agents;
    out["goods"] = goods;
    out["max_value"] = max_value;
    out["seed"] = seed;
    out["trials"] = trials;
    out["all_verified"] = true;
    out["median_ms"] = median;
    out["mean_ms"] = mean;
    out["max_ms"] = worst;
    out["max_repair_iterations"] = max_iterations;
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("bench: %d trials on %dx%d values<=%" PRId64 " (seed %" PRIu64 ")\n", trials, agents,
                goods, max_value, seed);
    std::printf("  all outputs verified\n");
    std::printf("  solve time ms: median %.3f  mean %.3f  max %.3f\n", median, mean, worst);
    std::printf("  max repair iterations in any level: %d\n", max_iterations);
  }
  return kExitOk;
}

// ---- sweep ----

int cmd_sweep(int agents, int goods, std::int64_t max_value, std::uint64_t seed, int count,
              bool exhaustive, const std::string& notion_name, std::uint64_t budget, bool as_json) {
  auto notions = parse_notions({notion_name}, {PROPAVG_NOTION_PROPAVG});
  const propavg_notion notion = notions.front();

  std::uint64_t checked = 0, skipped = 0;
  std::vector<Json> counterexamples;

  const auto consider = [&](propavg_instance* raw) {
    InstancePtr inst(raw);
    int exists = 0;
    propavg_status st = propavg_exists(inst.get(), notion, budget, &exists);
    if (st == PROPAVG_ERR_BUDGET) {
      ++skipped;
      std::fprintf(stderr, "warning: instance skipped, %s\n", propavg_last_error());
      return;
    }
    check(st, "existence check");
    ++checked;
    if (!exists) counterexamples.push_back(instance_json(inst.get()));
  };

  if (exhaustive) {
    if (agents < 1 || goods < 0 || max_value < 0)
      throw ExitWith(kExitInput, "exhaustive sweep needs positive dimensions");
    const std::size_t cells = static_cast<std::size_t>(agents) * static_cast<std::size_t>(goods);
    std::vector<std::int64_t> values(cells, 0);
    while (true) {
      propavg_instance* inst = nullptr;
      check(propavg_instance_create(agents, goods, values.data(), &inst), "create");
      consider(inst);
      std::size_t k = 0;
      while (k < cells && values[k] == max_value) values[k++] = 0;
      if (k == cells) break;
      ++values[k];
    }
  } else {
    if (count < 1) throw ExitWith(kExitInput, "--count must be at least 1 for a random sweep");
    for (int k = 0; k < count; ++k) {
      propavg_instance* inst = nullptr;
      check(propavg_instance_generate(agents, goods, max_value,
                                      seed + static_cast<std::uint64_t>(k), &inst),
            "generate");
      consider(inst);
    }
  }

  if (as_json) {
    Json out;
    out["notion"] = propavg_notion_name(notion);
    out["checked"] = checked;
    out["budget_skipped"] = skipped;
    out["counterexamples"] = counterexamples;
    std::cout << out.dump(2) << "\n";
  } else {
    std::printf("sweep: %" PRIu64 " instances checked for %s, %" PRIu64 " skipped over budget\n",
                checked, propavg_notion_name(notion), skipped);
    if (counterexamples.empty()) {
      std::printf("  every instance admits a satisfying allocation\n");
    } else {
      std::printf("  %zu instance(s) admit NO satisfying allocation:\n", counterexamples.size());
      for (const Json& ce : counterexamples) std::printf("    %s\n", ce["valuations"].dump().c_str());
    }
  }
  return counterexamples.empty() ? kExitOk : kExitUnsatisfied;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solver and verifier for averaged-min-value fair shares\n"
               "(valuations are non-negative integers; pre-scale rational data)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(propavg_version()));
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output where the command has a text form");

  std::string instance_path, allocation_path, out_path;
  std::vector<std::string> notion_names;
  int agents = 2, goods = 4, count = 1, trials = 10;
  std::int64_t max_value = 100;
  std::uint64_t seed = 1, budget = 10'000'000;
  std::string sweep_notion = "PROPAVG";
  bool exhaustive = false;

  auto* solve = app.add_subcommand("solve", "compute an allocation and emit a result document");
  solve->add_option("--instance", instance_path, "instance file (\"-\" for stdin)")->required();
  solve->add_option("--out", out_path, "write the result document here instead of stdout");
  solve->add_option("--notion", notion_names, "extra certificate blocks to include")->delimiter(',');

  auto* verify = app.add_subcommand("verify", "check an allocation against fairness notions");
  verify->add_option("--instance", instance_path, "instance file (\"-\" for stdin)")->required();
  verify->add_option("--allocation", allocation_path, "allocation file (bundle array or result document)")
      ->required();
  verify->add_option("--notion", notion_names, "notions to check (default PROPAVG)")->delimiter(',');

  auto* gen = app.add_subcommand("gen", "generate uniform random instances");
  gen->add_option("--agents", agents, "number of agents")->required();
  gen->add_option("--goods", goods, "number of goods")->required();
  gen->add_option("--max-value", max_value, "values drawn uniformly from [0, max-value]");
  gen->add_option("--seed", seed, "instance k uses seed+k; equal seeds give identical bytes");
  gen->add_option("--count", count, "how many instances");
  gen->add_option("--out", out_path, "output file (single) or prefix (multiple)");

  auto* bench = app.add_subcommand("bench", "time the solver on random instances and verify outputs");
  bench->add_option("--agents", agents, "number of agents")->required();
  bench->add_option("--goods", goods, "number of goods")->required();
  bench->add_option("--max-value", max_value, "values drawn uniformly from [0, max-value]");
  bench->add_option("--seed", seed, "trial t uses seed+t");
  bench->add_option("--trials", trials, "number of instances to solve");

  auto* sweep = app.add_subcommand("sweep", "hunt for instances with no satisfying allocation");
  sweep->add_option("--agents", agents, "number of agents")->required();
  sweep->add_option("--goods", goods, "number of goods")->required();
  sweep->add_option("--max-value", max_value, "value alphabet is [0, max-value]");
  sweep->add_flag("--exhaustive", exhaustive, "walk every value matrix instead of sampling");
  sweep->add_option("--count", count, "random instances to sample (ignored with --exhaustive)");
  sweep->add_option("--seed", seed, "instance k uses seed+k");
  sweep->add_option("--notion", sweep_notion, "notion whose existence is probed (default PROPAVG)");
  sweep->add_option("--budget", budget, "max assignments enumerated per instance");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(instance_path, out_path, notion_names);
    if (verify->parsed()) return cmd_verify(instance_path, allocation_path, notion_names, as_json);
    if (gen->parsed()) return cmd_gen(agents, goods, max_value, seed, count, out_path);
    if (bench->parsed()) return cmd_bench(agents, goods, max_value, seed, trials, as_json);
    if (sweep->parsed())
      return cmd_sweep(agents, goods, max_value, seed, count, exhaustive, sweep_notion, budget,
                       as_json);
  } catch (const ExitWith& e) {
    if (e.what()[0] != '\0') std::fprintf(stderr, "error: %s\n", e.what());
    return e.code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitInput;
}
