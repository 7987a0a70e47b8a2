#include "coldspare/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace coldspare {
namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::string& where,
                         std::initializer_list<const char*> allowed) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ConfigError(where + ": unknown key \"" + it.key() + "\"");
  }
}

const json& require(const json& object, const std::string& where, const char* key) {
  const auto it = object.find(key);
  if (it == object.end())
    throw ConfigError(where + ": missing \"" + std::string(key) + "\"");
  return *it;
}

const json& as_object(const json& value, const std::string& where) {
  if (!value.is_object()) throw ConfigError(where + ": must be an object");
  return value;
}

const json& as_array(const json& value, const std::string& where) {
  if (!value.is_array()) throw ConfigError(where + ": must be an array");
  return value;
}

double as_number(const json& value, const std::string& where) {
  if (!value.is_number()) throw ConfigError(where + ": must be a number");
  return value.get<double>();
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer())
    throw ConfigError(where + ": must be an integer");
  return value.get<int>();
}

int id_key(const std::string& key, const std::string& where) {
  // per-type maps arrive with module ids rendered as object keys
  std::size_t used = 0;
  int id = 0;
  try {
    id = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != key.size())
    throw ConfigError(where + ": key \"" + key + "\" is not a module id");
  return id;
}

std::map<int, int> parse_id_counts(const json& value, const std::string& where) {
  std::map<int, int> counts;
  for (const auto& [key, entry] : as_object(value, where).items())
    counts[id_key(key, where)] = as_int(entry, where + "[\"" + key + "\"]");
  return counts;
}

Catalog parse_catalog(const json& value) {
  std::vector<ModuleTypeSpec> entries;
  const json& array = as_array(value, "catalog");
  for (std::size_t i = 0; i < array.size(); ++i) {
    const std::string where = "catalog[" + std::to_string(i) + "]";
    const json& entry = as_object(array[i], where);
    reject_unknown_keys(entry, where,
                        {"id", "role", "failure_rate", "cost", "maintenance_cost",
                         "detect_switch_self", "detect_switch_other"});
    ModuleTypeSpec spec;
    spec.id = as_int(require(entry, where, "id"), where + ".id");
    const json& role = require(entry, where, "role");
    if (!role.is_string()) throw ConfigError(where + ".role: must be a string");
    spec.role = role_from_string(role.get<std::string>());
    spec.failure_rate =
        as_number(require(entry, where, "failure_rate"), where + ".failure_rate");
    spec.cost = as_number(require(entry, where, "cost"), where + ".cost");
    if (entry.contains("maintenance_cost"))
      spec.maintenance_cost =
          as_number(entry["maintenance_cost"], where + ".maintenance_cost");
    if (entry.contains("detect_switch_self"))
      spec.detect_switch_self =
          as_number(entry["detect_switch_self"], where + ".detect_switch_self");
    if (entry.contains("detect_switch_other"))
      spec.detect_switch_other =
          as_number(entry["detect_switch_other"], where + ".detect_switch_other");
    entries.push_back(spec);
  }
  return Catalog(std::move(entries));
}

RobotBlueprint parse_robot(const json& value, std::size_t position) {
  const std::string where = "robots[" + std::to_string(position) + "]";
  const json& entry = as_object(value, where);
  reject_unknown_keys(entry, where,
                      {"type_index", "total_slots", "free_slots", "modules", "limits"});
  RobotBlueprint robot;
  robot.type_index = entry.contains("type_index")
                         ? as_int(entry["type_index"], where + ".type_index")
                         : static_cast<int>(position) + 1;
  robot.slot_capacity =
      as_int(require(entry, where, "total_slots"), where + ".total_slots");
  robot.free_slots = as_int(require(entry, where, "free_slots"), where + ".free_slots");
  const json& modules = as_array(require(entry, where, "modules"), where + ".modules");
  for (std::size_t i = 0; i < modules.size(); ++i)
    robot.active_modules.push_back(
        as_int(modules[i], where + ".modules[" + std::to_string(i) + "]"));
  if (entry.contains("limits"))
    robot.per_type_limits = parse_id_counts(entry["limits"], where + ".limits");
  return robot;
}

FunctionalRequirement parse_requirement(const json& value) {
  if (value.is_string()) {
    const std::string name = value.get<std::string>();
    if (name == "full") return FunctionalRequirement::full();
    if (name == "minimal") return FunctionalRequirement::minimal();
    throw ConfigError("requirement: unknown kind \"" + name + "\"");
  }
  const json& object = as_object(value, "requirement");
  reject_unknown_keys(object, "requirement", {"partial"});
  const json& thresholds =
      as_array(require(object, "requirement", "partial"), "requirement.partial");
  std::vector<int> m;
  for (std::size_t i = 0; i < thresholds.size(); ++i)
    m.push_back(
        as_int(thresholds[i], "requirement.partial[" + std::to_string(i) + "]"));
  return FunctionalRequirement::partial(std::move(m));
}

RedundancyMap parse_storage(const json& value, const TeamScenario& scenario,
                            std::size_t team_size) {
  const json& array = as_array(value, "storage");
  if (array.size() != team_size)
    throw ConfigError("storage: length " + std::to_string(array.size()) +
                      " does not match team size (" + std::to_string(team_size) + ")");
  RedundancyMap storage(team_size);
  for (std::size_t j = 0; j < array.size(); ++j) {
    const std::string where = "storage[" + std::to_string(j) + "]";
    for (const auto& [id, count] : parse_id_counts(array[j], where)) {
      if (!scenario.catalog.contains(id))
        throw ConfigError(where + ": unknown module id " + std::to_string(id));
      if (count < 0)
        throw ConfigError(where + ": count for module id " + std::to_string(id) +
                          " must be >= 0");
      storage.set_spares(j, id, count);
    }
  }
  return storage;
}

LoadedScenario load_scenario_json(const json& root) {
  const json& top = as_object(root, "scenario");
  reject_unknown_keys(top, "scenario",
                      {"catalog", "robots", "counts", "horizon_months", "requirement",
                       "limits", "storage"});

  LoadedScenario loaded;
  TeamScenario& scenario = loaded.scenario;
  scenario.catalog = parse_catalog(require(top, "scenario", "catalog"));

  const json& robots = as_array(require(top, "scenario", "robots"), "robots");
  for (std::size_t i = 0; i < robots.size(); ++i)
    scenario.blueprints.push_back(parse_robot(robots[i], i));

  if (top.contains("counts")) {
    const json& counts = as_array(top["counts"], "counts");
    if (counts.size() != scenario.blueprints.size())
      throw ConfigError("counts: length " + std::to_string(counts.size()) +
                        " does not match robots (" +
                        std::to_string(scenario.blueprints.size()) + ")");
    for (std::size_t i = 0; i < counts.size(); ++i)
      scenario.counts.push_back(
          as_int(counts[i], "counts[" + std::to_string(i) + "]"));
  } else {
    scenario.counts.assign(scenario.blueprints.size(), 1);
  }

  scenario.horizon_months =
      as_number(require(top, "scenario", "horizon_months"), "horizon_months");
  if (top.contains("requirement"))
    scenario.requirement = parse_requirement(top["requirement"]);
  if (top.contains("limits"))
    scenario.shared_type_limits = parse_id_counts(top["limits"], "limits");

  validate_scenario(scenario);

  if (top.contains("storage"))
    loaded.storage =
        parse_storage(top["storage"], scenario, team_layout(scenario).robot_count());
  return loaded;
}

}  // namespace

LoadedScenario load_scenario_text(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("scenario JSON: ") + err.what());
  }
  return load_scenario_json(root);
}

LoadedScenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_scenario_text(buffer.str());
}

Allocation parse_genes(const std::string& text) {
  Allocation allocation;
  std::string cleaned = text;
  for (char& c : cleaned)
    if (c == ',' || c == '[' || c == ']') c = ' ';
  std::istringstream in(cleaned);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      const int gene = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      allocation.genes.push_back(gene);
    } catch (const std::exception&) {
      throw ConfigError("genes: \"" + token + "\" is not an integer");
    }
  }
  if (allocation.genes.empty()) throw ConfigError("genes: empty gene list");
  return allocation;
}

std::string format_fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.9f", value);
  return buffer;
}

void write_front_csv(std::ostream& out, const std::vector<ParetoPoint>& front) {
  out << "reliability,cost,genes\n";
  for (const ParetoPoint& point : front) {
    out << format_fixed(point.reliability) << ',' << format_fixed(point.cost) << ',';
    for (std::size_t i = 0; i < point.allocation.genes.size(); ++i) {
      if (i) out << ' ';
      out << point.allocation.genes[i];
    }
    out << '\n';
  }
}

std::vector<ParetoPoint> read_front_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("front CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "reliability,cost,genes")
    throw ConfigError("front CSV: unexpected header \"" + line + "\"");
  std::vector<ParetoPoint> front;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "front CSV row " + std::to_string(row);
    const std::size_t first = line.find(',');
    const std::size_t second = first == std::string::npos
                                   ? std::string::npos
                                   : line.find(',', first + 1);
    if (second == std::string::npos)
      throw ConfigError(where + ": expected 3 comma-separated fields");
    ParetoPoint point;
    try {
      point.reliability = std::stod(line.substr(0, first));
      point.cost = std::stod(line.substr(first + 1, second - first - 1));
    } catch (const std::exception&) {
      throw ConfigError(where + ": malformed number");
    }
    // teams without free slots serialize an empty genes column
    const std::string genes_field = line.substr(second + 1);
    if (genes_field.find_first_not_of(" \t") != std::string::npos)
      point.allocation = parse_genes(genes_field);
    front.push_back(std::move(point));
  }
  return front;
}

}  // namespace coldspare
