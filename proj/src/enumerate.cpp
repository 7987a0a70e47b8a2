#include "coldspare/enumerate.hpp"

#include <algorithm>
#include <map>

#include "coldspare/cost.hpp"
#include "coldspare/nsga2.hpp"
#include "coldspare/reliability.hpp"

namespace coldspare {

std::string count_to_string(CountValue value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

CountValue saturating_mul(CountValue a, CountValue b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCountMax / b) return kCountMax;
  return a * b;
}

}  // namespace

CountValue saturating_product(const std::vector<long>& factors) {
  CountValue product = 1;
  for (long f : factors) {
    if (f < 0) throw DomainError("count factors must be >= 0");
    product = saturating_mul(product, static_cast<CountValue>(f));
  }
  return product;
}

CountValue gene_space_size(const TeamScenario& scenario) {
  const TeamLayout layout = team_layout(scenario);
  const CountValue alphabet = static_cast<CountValue>(scenario.catalog.size()) + 1;
  CountValue size = 1;
  for (std::size_t s = 0; s < layout.gene_count; ++s)
    size = saturating_mul(size, alphabet);
  return size;
}

CountValue module_count_space(const std::vector<long>& per_type_maxima) {
  return saturating_product(per_type_maxima);
}

CountValue per_robot_count_space(const std::vector<std::vector<long>>& per_robot_maxima) {
  CountValue product = 1;
  for (const auto& robot : per_robot_maxima)
    product = saturating_mul(product, saturating_product(robot));
  return product;
}

namespace {

/// Depth-first walk over per-robot spare multisets.
class MultisetWalker {
 public:
  MultisetWalker(const TeamScenario& scenario, const TeamLayout& layout, double months)
      : scenario_(scenario),
        layout_(layout),
        months_(months),
        redundancy_(layout.robot_count()) {
    for (const ModuleTypeSpec& m : scenario.catalog.entries()) ids_.push_back(m.id);
    std::sort(ids_.begin(), ids_.end());
  }

  std::vector<ParetoPoint> run() {
    walk_robot(0);
    std::vector<ParetoPoint> points;
    points.reserve(front_.size());
    for (auto& [reliability, entry] : front_)
      points.push_back({reliability, entry.cost, Allocation{std::move(entry.genes)}});
    return points;
  }

 private:
  struct FrontEntry {
    double cost;
    std::vector<int> genes;
  };

  void walk_robot(std::size_t robot) {
    if (robot == layout_.robot_count()) {
      emit();
      return;
    }
    const RobotBlueprint& bp = scenario_.blueprints[layout_.blueprint_of[robot]];
    walk_type(robot, bp, 0, bp.free_slots);
  }

  void walk_type(std::size_t robot, const RobotBlueprint& bp, std::size_t type_pos,
                 int slots_left) {
    if (type_pos == ids_.size()) {
      walk_robot(robot + 1);
      return;
    }
    const int id = ids_[type_pos];
    const int max_here = std::min(slots_left, effective_type_limit(scenario_, bp, id));
    for (int count = 0; count <= max_here; ++count) {
      if (count > 0) redundancy_.set_spares(robot, id, count);
      walk_type(robot, bp, type_pos + 1, slots_left - count);
      if (count > 0) redundancy_.set_spares(robot, id, 0);
    }
  }

  void emit() {
    const double reliability = requirement_reliability(
        scenario_.requirement, layout_,
        per_robot_reliabilities(scenario_, layout_, redundancy_, months_,
                                SwitchSource::SelfDirected));
    const double cost = acquisition_cost(scenario_, redundancy_);
    insert(reliability, cost);
  }

  void insert(double reliability, double cost) {
    // the map is a clean front: ascending reliability implies ascending cost,
    // so the first entry at or above a reliability is also the cheapest there
    auto above = front_.lower_bound(reliability);
    if (above != front_.end() && above->second.cost <= cost) {
      if (above->first == reliability && above->second.cost == cost) {
        std::vector<int> genes = encode(scenario_, redundancy_).genes;
        if (genes < above->second.genes) above->second.genes = std::move(genes);
      }
      return;  // dominated (or an exact tie, resolved to the smaller genes)
    }
    // candidate survives; drop everything it dominates
    if (above != front_.end() && above->first == reliability)
      above = front_.erase(above);  // same reliability, costlier
    while (above != front_.begin()) {
      auto below = std::prev(above);
      if (below->second.cost < cost) break;
      front_.erase(below);
    }
    front_.emplace(reliability, FrontEntry{cost, encode(scenario_, redundancy_).genes});
  }

  const TeamScenario& scenario_;
  const TeamLayout& layout_;
  double months_;
  RedundancyMap redundancy_;
  std::vector<int> ids_;
  std::map<double, FrontEntry> front_;
};

}  // namespace

EnumerationResult exhaustive_enumerate(const TeamScenario& scenario, double months,
                                       CountValue ceiling) {
  validate_scenario(scenario);
  EnumerationResult result;
  result.search_space = gene_space_size(scenario);
  if (result.search_space > ceiling) return result;

  const TeamLayout layout = team_layout(scenario);
  MultisetWalker walker(scenario, layout, months);
  result.front = finalize_front(walker.run(), scenario);
  result.enumerated = true;
  return result;
}

}  // namespace coldspare
