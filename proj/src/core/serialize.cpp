#include "core/serialize.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

namespace propavg {

namespace {

using Json = nlohmann::ordered_json;

Json parse(const std::string& text) {
  Json doc = Json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) throw InputError("malformed JSON document");
  return doc;
}

int get_dim(const Json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer())
    throw InputError(std::string("missing or non-integer \"") + key + "\" field");
  auto v = doc[key].get<std::int64_t>();
  if (v < 0 || v > std::numeric_limits<int>::max())
    throw InputError(std::string("\"") + key + "\" out of range");
  return static_cast<int>(v);
}

}  // namespace

std::string instance_to_json(const Instance& inst) {
  Json doc;
  doc["agents"] = inst.agents();
  doc["goods"] = inst.goods();
  Json rows = Json::array();
  for (int i = 0; i < inst.agents(); ++i) {
    Json row = Json::array();
    for (int g = 0; g < inst.goods(); ++g) row.push_back(inst.value(i, g));
    rows.push_back(std::move(row));
  }
  doc["valuations"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Instance instance_from_json(const std::string& text) {
  Json doc = parse(text);
  if (!doc.is_object()) throw InputError("instance document must be a JSON object");
  const int agents = get_dim(doc, "agents");
  const int goods = get_dim(doc, "goods");
  if (!doc.contains("valuations") || !doc["valuations"].is_array())
    throw InputError("missing \"valuations\" array");
  const Json& rows = doc["valuations"];
  if (static_cast<int>(rows.size()) != agents)
    throw InputError("expected " + std::to_string(agents) + " valuation rows, found " +
                     std::to_string(rows.size()));
  std::vector<Value> values;
  values.reserve(static_cast<std::size_t>(agents) * goods);
  for (const Json& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != goods)
      throw InputError("each valuation row must list exactly " + std::to_string(goods) + " integers");
    for (const Json& cell : row) {
      if (!cell.is_number_integer()) throw InputError("valuations must be integers");
      values.push_back(cell.get<Value>());
    }
  }
  return Instance::create(agents, goods, std::move(values));
}

Allocation allocation_from_json(const Instance& inst, const std::string& text) {
  Json doc = parse(text);
  const Json* bundles = nullptr;
  if (doc.is_array()) {
    bundles = &doc;
  } else if (doc.is_object() && doc.contains("allocation") && doc["allocation"].is_array()) {
    bundles = &doc["allocation"];
  } else {
    throw InputError("expected a bundle array or an object with an \"allocation\" array");
  }

  Allocation alloc;
  alloc.bundles.reserve(bundles->size());
  for (const Json& entry : *bundles) {
    if (!entry.is_array()) throw InputError("each bundle must be an array of good indices");
    Bundle b;
    for (const Json& cell : entry) {
      if (!cell.is_number_integer()) throw InputError("good indices must be integers");
      auto g = cell.get<std::int64_t>();
      if (g < 0 || g >= inst.goods())
        throw InputError("good index " + std::to_string(g) + " out of range [0, " +
                         std::to_string(inst.goods()) + ")");
      b.push_back(static_cast<int>(g));
    }
    std::sort(b.begin(), b.end());
    if (std::adjacent_find(b.begin(), b.end()) != b.end())
      throw InputError("bundle repeats a good index");
    alloc.bundles.push_back(std::move(b));
  }
  return alloc;
}

std::string result_to_json(const Instance& inst, const Allocation& alloc, const SolverTrace* trace,
                           const std::vector<Notion>& notions) {
  if (auto bad = validate_allocation(inst, alloc)) throw InputError("invalid allocation: " + *bad);

  Json doc;
  Json bundles = Json::array();
  for (const Bundle& b : alloc.bundles) bundles.push_back(b);
  doc["allocation"] = std::move(bundles);

  Json certs = Json::object();
  std::vector<Notion> seen;
  for (Notion n : notions) {
    if (std::find(seen.begin(), seen.end(), n) != seen.end()) continue;
    seen.push_back(n);
    SatisfactionReport report = verify(inst, alloc, n);
    Json block;
    block["all_satisfied"] = report.all_satisfied;
    Json per_agent = Json::array();
    for (int i = 0; i < inst.agents(); ++i) {
      const AgentVerdict& v = report.agents[i];
      Json cell;
      cell["agent"] = i;
      cell["satisfied"] = v.satisfied;
      cell["lhs"] = v.lhs;
      cell["rhs"] = v.rhs;
      per_agent.push_back(std::move(cell));
    }
    block["agents"] = std::move(per_agent);
    certs[notion_name(n)] = std::move(block);
  }
  doc["certificates"] = std::move(certs);

  if (trace) {
    Json levels = Json::array();
    int max_iters = 0;
    for (const LevelTrace& lt : trace->levels) {
      Json level;
      level["agents"] = lt.n_agents;
      level["goods"] = lt.n_goods;
      Json awards = Json::array();
      for (const auto& [agent, good] : lt.singleton_awards) awards.push_back(Json::array({agent, good}));
      level["singleton_awards"] = std::move(awards);
      level["repair_iterations"] = lt.repair_iterations;
      level["moved_goods"] = lt.moved_goods;
      level["chooser_slot"] = lt.chooser_slot;
      levels.push_back(std::move(level));
      max_iters = std::max(max_iters, lt.repair_iterations);
    }
    Json tr;
    tr["levels"] = std::move(levels);
    tr["max_repair_iterations"] = max_iters;
    doc["trace"] = std::move(tr);
  }
  return doc.dump(2) + "\n";
}

}  // namespace propavg
