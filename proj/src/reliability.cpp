#include "coldspare/reliability.hpp"

#include <algorithm>
#include <cmath>

namespace coldspare {

double module_reliability(double failure_rate, double months, int spares,
                          double switch_probability) {
  if (!(failure_rate > 0.0)) throw DomainError("failure_rate must be > 0");
  if (!(months >= 0.0)) throw DomainError("months must be >= 0");
  if (spares < 0) throw DomainError("spares must be >= 0");
  if (!(switch_probability >= 0.0 && switch_probability <= 1.0))
    throw DomainError("switch_probability must be in [0,1]");

  const double lt = failure_rate * months;
  double term = std::exp(-lt);  // P(k failures), starting at k = 0
  const double base = term;
  double standby = 0.0;
  for (int k = 1; k <= spares; ++k) {
    term *= lt / k;
    standby += term;
  }
  return std::min(base + switch_probability * standby, 1.0);
}

double perfect_switch_reliability(double failure_rate, double months, int spares) {
  return module_reliability(failure_rate, months, spares, 1.0);
}

namespace {

double switch_probability_of(const ModuleTypeSpec& spec, SwitchSource source) {
  return source == SwitchSource::SelfDirected ? spec.detect_switch_self
                                              : spec.detect_switch_other;
}

int spares_or_zero(const std::map<int, int>& spares, int id) {
  auto it = spares.find(id);
  return it == spares.end() ? 0 : it->second;
}

double series_reliability(const RobotBlueprint& blueprint,
                          const std::map<int, int>& spares, const Catalog& catalog,
                          double months, SwitchSource source) {
  double r = 1.0;
  for (int id : blueprint.active_modules) {
    const ModuleTypeSpec& spec = catalog.at(id);
    r *= module_reliability(spec.failure_rate, months, spares_or_zero(spares, id),
                            switch_probability_of(spec, source));
  }
  return r;
}

}  // namespace

double robot_reliability(const RobotBlueprint& blueprint,
                         const std::map<int, int>& spares, const Catalog& catalog,
                         double months) {
  return series_reliability(blueprint, spares, catalog, months,
                            SwitchSource::SelfDirected);
}

double capability_reliability(const RobotBlueprint& blueprint,
                              const std::map<int, int>& spares,
                              const Catalog& catalog, double months,
                              Capability capability) {
  double r = 1.0;
  for (Role role : capability_roles(capability)) {
    bool covered = false;
    for (int id : blueprint.active_modules) {
      const ModuleTypeSpec& spec = catalog.at(id);
      if (spec.role != role) continue;
      covered = true;
      r *= module_reliability(spec.failure_rate, months,
                              spares_or_zero(spares, id), spec.detect_switch_self);
    }
    if (!covered)
      throw ConfigError("capability " + to_string(capability) +
                        " needs role " + to_string(role) +
                        " which the blueprint does not carry");
  }
  return r;
}

double poisson_binomial_tail(const std::vector<double>& probs, int min_successes) {
  const int n = static_cast<int>(probs.size());
  if (min_successes < 0 || min_successes > n)
    throw DomainError("min_successes must be in [0, probs.size()]");
  for (double p : probs)
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability outside [0,1]");

  // dist[k] = P(exactly k of the first i events occur)
  std::vector<double> dist(static_cast<std::size_t>(n) + 1, 0.0);
  dist[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const double p = probs[static_cast<std::size_t>(i)];
    for (int k = i + 1; k >= 1; --k)
      dist[static_cast<std::size_t>(k)] =
          dist[static_cast<std::size_t>(k)] * (1.0 - p) +
          dist[static_cast<std::size_t>(k - 1)] * p;
    dist[0] *= 1.0 - p;
  }
  double tail = 0.0;
  for (int k = n; k >= min_successes; --k) tail += dist[static_cast<std::size_t>(k)];
  return std::min(tail, 1.0);
}

std::vector<double> per_robot_reliabilities(const TeamScenario& scenario,
                                            const TeamLayout& layout,
                                            const RedundancyMap& redundancy,
                                            double months, SwitchSource source) {
  if (redundancy.robot_count() != layout.robot_count())
    throw ConfigError("redundancy map covers " +
                      std::to_string(redundancy.robot_count()) + " robots, team has " +
                      std::to_string(layout.robot_count()));
  std::vector<double> rels;
  rels.reserve(layout.robot_count());
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
    rels.push_back(series_reliability(bp, redundancy.robot_spares(j),
                                      scenario.catalog, months, source));
  }
  return rels;
}

double requirement_reliability(const FunctionalRequirement& requirement,
                               const TeamLayout& layout,
                               const std::vector<double>& robot_reliabilities) {
  if (robot_reliabilities.size() != layout.robot_count())
    throw ConfigError("reliability list does not match team size");

  switch (requirement.kind) {
    case FunctionalRequirement::Kind::Full: {
      double r = 1.0;
      for (double rj : robot_reliabilities) r *= rj;
      return r;
    }
    case FunctionalRequirement::Kind::Minimal: {
      double r = 1.0;
      for (const auto& [type_index, members] : layout.groups) {
        (void)type_index;
        double all_down = 1.0;
        for (std::size_t j : members) all_down *= 1.0 - robot_reliabilities[j];
        r *= 1.0 - all_down;
      }
      return r;
    }
    case FunctionalRequirement::Kind::Partial: {
      if (requirement.thresholds.size() != layout.groups.size())
        throw ConfigError("partial requirement needs one threshold per group");
      double r = 1.0;
      for (std::size_t g = 0; g < layout.groups.size(); ++g) {
        std::vector<double> member_rels;
        member_rels.reserve(layout.groups[g].second.size());
        for (std::size_t j : layout.groups[g].second)
          member_rels.push_back(robot_reliabilities[j]);
        r *= poisson_binomial_tail(member_rels, requirement.thresholds[g]);
      }
      return r;
    }
  }
  throw DomainError("invalid requirement kind");
}

double team_reliability(const TeamScenario& scenario,
                        const RedundancyMap& redundancy, double months) {
  const TeamLayout layout = team_layout(scenario);
  return requirement_reliability(
      scenario.requirement, layout,
      per_robot_reliabilities(scenario, layout, redundancy, months,
                              SwitchSource::SelfDirected));
}

double team_reliability_own_storage(const TeamScenario& scenario,
                                    const RedundancyMap& storage, double months,
                                    OwnStorageForm form) {
  const TeamLayout layout = team_layout(scenario);
  if (form == OwnStorageForm::SeriesByRequirement)
    return requirement_reliability(
        scenario.requirement, layout,
        per_robot_reliabilities(scenario, layout, storage, months,
                                SwitchSource::Assisted));

  // RobotParallel: one functioning module keeps a robot up, robots in series.
  if (storage.robot_count() != layout.robot_count())
    throw ConfigError("storage map does not match team size");
  double r = 1.0;
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
    const auto& spares = storage.robot_spares(j);
    double all_down = 1.0;
    for (int id : bp.active_modules) {
      const ModuleTypeSpec& spec = scenario.catalog.at(id);
      auto it = spares.find(id);
      const int w = it == spares.end() ? 0 : it->second;
      all_down *= 1.0 - module_reliability(spec.failure_rate, months, w,
                                           spec.detect_switch_other);
    }
    r *= 1.0 - all_down;
  }
  return r;
}

}  // namespace coldspare
