#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coldspare {

/// Numeric argument outside its domain (negative time, non-positive rate, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Structurally inconsistent configuration: unknown module id, missing role,
/// allocation length mismatch, malformed scenario data.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Storage limit violation (per-robot or per-type spare caps).
class ConstraintError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The six module roles a robot can carry.
enum class Role {
  Platform,
  Battery,
  Processor,
  Manipulator,
  Communication,
  ActiveProtection,
};

inline constexpr int kRoleCount = 6;

Role role_from_string(const std::string& name);
std::string to_string(Role role);

/// Composite abilities expressed as products of per-role reliabilities.
enum class Capability {
  Primary,         // all six roles
  Report,          // communication * processor
  MoveManipulate,  // platform * battery * processor
  Manipulate,      // battery * manipulator
};

const std::vector<Role>& capability_roles(Capability cap);
std::string to_string(Capability cap);

/// One replaceable module type. failure_rate is per month; the two switch
/// probabilities cover detection plus switching as a single parameter:
/// detect_switch_self applies when the robot services itself,
/// detect_switch_other when another robot assists. maintenance_cost is the
/// price of one corrective replacement.
struct ModuleTypeSpec {
  int id = 0;
  Role role = Role::Platform;
  double failure_rate = 0.0;
  double cost = 0.0;
  double detect_switch_self = 1.0;
  double detect_switch_other = 1.0;
  double maintenance_cost = 0.0;
};

/// Validated, id-indexed set of module types.
class Catalog {
 public:
  Catalog() = default;
  explicit Catalog(std::vector<ModuleTypeSpec> entries);

  const ModuleTypeSpec& at(int id) const;  // throws ConfigError on unknown id
  bool contains(int id) const { return index_.count(id) != 0; }
  const std::vector<ModuleTypeSpec>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<ModuleTypeSpec> entries_;
  std::map<int, std::size_t> index_;
};

/// Static build plan of one robot: which modules run, how many spare slots
/// remain, and optional per-type caps on how many spares a slot row may hold.
/// Robots sharing a type_index form one functional group for the team-level
/// reliability combinators.
struct RobotBlueprint {
  int type_index = 1;
  std::vector<int> active_modules;
  int free_slots = 0;
  int slot_capacity = 0;
  std::map<int, int> per_type_limits;  // module id -> max spares, absent = free_slots
};

/// Team-level success criterion.
///  Full:    every robot functional.
///  Minimal: at least one robot functional in every group.
///  Partial: at least thresholds[g] robots functional in group g
///           (groups ordered by ascending type_index).
struct FunctionalRequirement {
  enum class Kind { Full, Minimal, Partial };

  Kind kind = Kind::Minimal;
  std::vector<int> thresholds;

  static FunctionalRequirement full() { return {Kind::Full, {}}; }
  static FunctionalRequirement minimal() { return {Kind::Minimal, {}}; }
  static FunctionalRequirement partial(std::vector<int> m) {
    return {Kind::Partial, std::move(m)};
  }
};

std::string to_string(const FunctionalRequirement& req);

/// A deployable team: module catalog, robot blueprints with instance counts,
/// mission horizon and the functional requirement. shared_type_limits caps
/// spares per module type on every robot (on top of blueprint limits).
struct TeamScenario {
  Catalog catalog;
  std::vector<RobotBlueprint> blueprints;
  std::vector<int> counts;
  double horizon_months = 0.0;
  FunctionalRequirement requirement = FunctionalRequirement::minimal();
  std::map<int, int> shared_type_limits;
};

/// Robot-instance expansion of a scenario: blueprints repeated by count, gene
/// spans of the spare-slot chromosome, and functional groups.
struct TeamLayout {
  std::vector<std::size_t> blueprint_of;  // instance -> blueprint index
  std::vector<std::pair<std::size_t, std::size_t>> gene_span;  // [first, last)
  std::size_t gene_count = 0;
  // type_index -> instances carrying it, ascending type_index
  std::vector<std::pair<int, std::vector<std::size_t>>> groups;

  std::size_t robot_count() const { return blueprint_of.size(); }
};

TeamLayout team_layout(const TeamScenario& scenario);

/// Full scenario validation; throws DomainError/ConfigError with a field path.
void validate_scenario(const TeamScenario& scenario);

/// Spare counts per robot instance keyed by module id. Active modules live in
/// the blueprints; this map holds only the cold standby stock, so the total
/// count of a type on a robot is (active ? 1 : 0) + spares_of(robot, id).
class RedundancyMap {
 public:
  RedundancyMap() = default;
  explicit RedundancyMap(std::size_t robot_count) : spares_(robot_count) {}

  std::size_t robot_count() const { return spares_.size(); }

  int spares_of(std::size_t robot, int id) const;
  void set_spares(std::size_t robot, int id, int count);
  void add_spare(std::size_t robot, int id) {
    set_spares(robot, id, spares_of(robot, id) + 1);
  }

  /// Total spares of one type across the team (the shared pool size).
  long team_spares(int id) const;
  /// Total spares of all types on one robot.
  long robot_total(std::size_t robot) const;

  const std::map<int, int>& robot_spares(std::size_t robot) const;

  bool operator==(const RedundancyMap& other) const {
    return spares_ == other.spares_;
  }

 private:
  std::vector<std::map<int, int>> spares_;
};

}  // namespace coldspare
