#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "coldspare/reliability.hpp"
#include "coldspare/rng.hpp"
#include "fixture.hpp"

using namespace coldspare;
using coldspare::testing::blueprint;
using coldspare::testing::six_robot_team;

namespace {

/// Poisson CDF summed from explicitly formed terms in extended precision,
/// an independent path to the same quantity as the standby recurrence.
double poisson_cdf_reference(double mean, int count) {
  const long double m = mean;
  long double sum = 0.0L;
  for (int k = 0; k <= count; ++k)
    sum += k == 0 ? std::exp(-m)
                  : std::exp(-m + k * std::log(m) -
                             std::lgamma(static_cast<long double>(k) + 1.0L));
  return static_cast<double>(sum);
}

/// Brute-force P(at least m of the events occur) over all outcome subsets.
double tail_by_enumeration(const std::vector<double>& probs, int m) {
  const std::size_t n = probs.size();
  double total = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int successes = 0;
    double p = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        ++successes;
        p *= probs[i];
      } else {
        p *= 1.0 - probs[i];
      }
    }
    if (successes >= m) total += p;
  }
  return total;
}

RedundancyMap no_spares(const TeamScenario& scenario) {
  return RedundancyMap(team_layout(scenario).robot_count());
}

}  // namespace

TEST_CASE("standby module reliability matches directly summed references") {
  // frozen values computed from the factorial sum R = e^-lt + p*sum lt^k/k!
  CHECK(module_reliability(0.0031, 60.0, 0, 1.0) ==
        doctest::Approx(0.8302735949819326).epsilon(1e-12));
  CHECK(module_reliability(0.0031, 60.0, 2, 0.98) ==
        doctest::Approx(0.9956906970683168).epsilon(1e-12));
  CHECK(module_reliability(0.0050, 120.0, 3, 0.5) ==
        doctest::Approx(0.7727267836203892).epsilon(1e-12));
  CHECK(module_reliability(0.0079, 36.0, 5, 0.25) ==
        doctest::Approx(0.8143490546209567).epsilon(1e-12));
  // large lt = 40 exercises the recurrence far from the small-rate regime
  CHECK(module_reliability(0.5, 80.0, 40, 0.9) ==
        doctest::Approx(0.48772636052628326).epsilon(1e-12));
  CHECK(module_reliability(0.01, 200.0, 10, 0.0) ==
        doctest::Approx(0.1353352832366127).epsilon(1e-12));
}

TEST_CASE("guaranteed switching equals the Poisson CDF") {
  for (double lt : {0.0, 0.01, 0.7, 3.0, 17.5, 50.0})
    for (int spares : {0, 1, 2, 7, 40, 100}) {
      const double rate = 0.25;
      const double months = lt / rate;
      CHECK(std::fabs(perfect_switch_reliability(rate, months, spares) -
                      poisson_cdf_reference(lt, spares)) <= 1e-12);
    }
}

TEST_CASE("degenerate switching and stock levels collapse to the bare module") {
  for (double p : {0.0, 0.3, 1.0})
    CHECK(module_reliability(0.02, 30.0, 0, p) == doctest::Approx(std::exp(-0.6)));
  for (int spares : {0, 1, 5, 50})
    CHECK(module_reliability(0.02, 30.0, spares, 0.0) ==
          doctest::Approx(std::exp(-0.6)));
  CHECK(module_reliability(0.02, 0.0, 3, 0.5) == 1.0);
}

TEST_CASE("module reliability is monotone in stock, switching and time") {
  double previous = 0.0;
  for (int spares = 0; spares <= 6; ++spares) {
    const double r = module_reliability(0.05, 40.0, spares, 0.7);
    CHECK(r >= previous);
    previous = r;
  }
  previous = 0.0;
  for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const double r = module_reliability(0.05, 40.0, 3, p);
    CHECK(r > previous);
    previous = r;
  }
  previous = 1.0;
  for (double t : {0.0, 10.0, 50.0, 200.0, 1000.0}) {
    const double r = module_reliability(0.05, t, 3, 0.7);
    CHECK(r <= previous);
    previous = r;
  }
  CHECK(module_reliability(1e-9, 1.0, 100, 1.0) <= 1.0);
}

TEST_CASE("module reliability rejects out-of-domain arguments") {
  CHECK_THROWS_AS(module_reliability(0.0, 10.0, 0, 1.0), DomainError);
  CHECK_THROWS_AS(module_reliability(-0.1, 10.0, 0, 1.0), DomainError);
  CHECK_THROWS_AS(module_reliability(0.1, -1.0, 0, 1.0), DomainError);
  CHECK_THROWS_AS(module_reliability(0.1, 10.0, -1, 1.0), DomainError);
  CHECK_THROWS_AS(module_reliability(0.1, 10.0, 0, -0.01), DomainError);
  CHECK_THROWS_AS(module_reliability(0.1, 10.0, 0, 1.01), DomainError);
}

TEST_CASE("robot reliability is the series product of its modules") {
  const Catalog catalog = coldspare::testing::six_robot_catalog();
  const RobotBlueprint bp = blueprint({1, 4, 7, 10}, 2);
  const std::map<int, int> empty;
  CHECK(robot_reliability(bp, empty, catalog, 60.0) ==
        doctest::Approx(0.4421969092798987).epsilon(1e-12));
  const std::map<int, int> spares{{4, 1}, {7, 1}};
  double expected = 1.0;
  for (int id : bp.active_modules) {
    const ModuleTypeSpec& spec = catalog.at(id);
    const auto it = spares.find(id);
    expected *= module_reliability(spec.failure_rate, 60.0,
                                   it == spares.end() ? 0 : it->second, 0.98);
  }
  CHECK(robot_reliability(bp, spares, catalog, 60.0) == doctest::Approx(expected));
  CHECK(robot_reliability(bp, spares, catalog, 60.0) ==
        doctest::Approx(0.6865975845057779).epsilon(1e-12));
}

TEST_CASE("capability reliability covers exactly the roles it needs") {
  const Catalog catalog = coldspare::testing::six_robot_catalog();
  const std::map<int, int> empty;

  // platform+battery+processor slice of a four-module robot
  const RobotBlueprint bp = blueprint({1, 4, 7, 10}, 2);
  const double expected = module_reliability(0.0031, 60.0, 0, 0.98) *
                          module_reliability(0.0050, 60.0, 0, 0.98) *
                          module_reliability(0.0034, 60.0, 0, 0.98);
  CHECK(capability_reliability(bp, empty, catalog, 60.0,
                               Capability::MoveManipulate) ==
        doctest::Approx(expected));
  CHECK_THROWS_AS(
      capability_reliability(bp, empty, catalog, 60.0, Capability::Report),
      ConfigError);

  // a robot with two battery modules: Manipulate multiplies both in series
  const Catalog mini = Catalog({{1, Role::Battery, 0.0031, 1, 0.98, 0.98, 0},
                                {3, Role::Battery, 0.0034, 1, 0.98, 0.98, 0},
                                {8, Role::Manipulator, 0.0036, 1, 0.98, 0.98, 0}});
  const RobotBlueprint twin = blueprint({1, 3, 8}, 0, 3);
  CHECK(capability_reliability(twin, empty, mini, 60.0, Capability::Manipulate) ==
        doctest::Approx(module_reliability(0.0031, 60.0, 0, 0.98) *
                        module_reliability(0.0034, 60.0, 0, 0.98) *
                        module_reliability(0.0036, 60.0, 0, 0.98)));
  CHECK_THROWS_AS(
      capability_reliability(twin, empty, mini, 60.0, Capability::Primary),
      ConfigError);
}

TEST_CASE("at-least-m tail matches exhaustive enumeration") {
  Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.index(8));
    std::vector<double> probs;
    for (int i = 0; i < n; ++i) probs.push_back(rng.uniform());
    for (int m = 0; m <= n; ++m)
      CHECK(poisson_binomial_tail(probs, m) ==
            doctest::Approx(tail_by_enumeration(probs, m)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(poisson_binomial_tail({0.5}, -1), DomainError);
  CHECK_THROWS_AS(poisson_binomial_tail({0.5}, 2), DomainError);
  CHECK_THROWS_AS(poisson_binomial_tail({1.5}, 0), DomainError);
}

TEST_CASE("six-robot team hits its frozen zero-spare values") {
  const TeamScenario scenario = six_robot_team();
  const RedundancyMap zero = no_spares(scenario);
  const TeamLayout layout = team_layout(scenario);

  const std::vector<double> expected = {0.4421969092798987, 0.34576359115930777,
                                        0.48968154858573615, 0.5015760690660556,
                                        0.8253068684916823, 0.6531163421206756};
  const std::vector<double> rels = per_robot_reliabilities(
      scenario, layout, zero, 60.0, SwitchSource::SelfDirected);
  REQUIRE(rels.size() == expected.size());
  for (std::size_t j = 0; j < rels.size(); ++j)
    CHECK(rels[j] == doctest::Approx(expected[j]).epsilon(1e-12));

  CHECK(team_reliability(scenario, zero, 60.0) ==
        doctest::Approx(0.9943750916184186).epsilon(1e-12));
  CHECK(team_reliability(scenario, zero, 120.0) ==
        doctest::Approx(0.9263133399268849).epsilon(1e-12));

  CHECK(requirement_reliability(FunctionalRequirement::full(), layout, rels) ==
        doctest::Approx(0.020241911445804388).epsilon(1e-12));
  CHECK(requirement_reliability(FunctionalRequirement::partial({3}), layout, rels) ==
        doctest::Approx(0.7441239845194345).epsilon(1e-12));
}

TEST_CASE("spare stock lifts the frozen six-robot team value") {
  const TeamScenario scenario = six_robot_team();
  RedundancyMap spares(6);
  spares.set_spares(0, 4, 1);
  spares.set_spares(0, 7, 1);
  spares.set_spares(3, 1, 1);
  spares.set_spares(3, 4, 1);
  spares.set_spares(3, 7, 1);
  CHECK(team_reliability(scenario, spares, 60.0) ==
        doctest::Approx(0.9994975253868688).epsilon(1e-12));
  // the fixture sets both switch probabilities to the same value, so the
  // self-directed and assisted families must agree exactly on it
  CHECK(team_reliability_own_storage(scenario, spares, 60.0) ==
        doctest::Approx(team_reliability(scenario, spares, 60.0)).epsilon(1e-15));
}

TEST_CASE("requirement families are ordered full <= partial <= minimal") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  for (int trial = 0; trial < 300; ++trial) {
    TeamScenario scenario;
    scenario.catalog = Catalog({{1, Role::Platform, 0.01, 1, 1, 1, 0}});
    const int groups = 1 + static_cast<int>(gen() % 3);
    std::vector<int> thresholds;
    for (int g = 0; g < groups; ++g) {
      const int members = 3 + static_cast<int>(gen() % 3);
      scenario.blueprints.push_back(blueprint({1}, 0, 1, g + 1));
      scenario.counts.push_back(members);
      // threshold 2 with 3+ members keeps all three families strictly apart
      thresholds.push_back(2);
    }
    scenario.horizon_months = 10.0;
    const TeamLayout layout = team_layout(scenario);
    std::vector<double> rels;
    for (std::size_t j = 0; j < layout.robot_count(); ++j) rels.push_back(unit(gen));

    const double full =
        requirement_reliability(FunctionalRequirement::full(), layout, rels);
    const double partial = requirement_reliability(
        FunctionalRequirement::partial(thresholds), layout, rels);
    const double minimal =
        requirement_reliability(FunctionalRequirement::minimal(), layout, rels);
    CHECK(full < partial);
    CHECK(partial < minimal);
  }
}

TEST_CASE("single-group minimal requirement is one minus the all-down product") {
  const TeamScenario scenario = six_robot_team();
  const TeamLayout layout = team_layout(scenario);
  REQUIRE(layout.groups.size() == 1);
  const std::vector<double> rels = {0.3, 0.5, 0.7, 0.2, 0.9, 0.4};
  const double expected = 1.0 - 0.7 * 0.5 * 0.3 * 0.8 * 0.1 * 0.6;
  CHECK(requirement_reliability(FunctionalRequirement::minimal(), layout, rels) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("homogeneous groups reduce to the closed power and binomial forms") {
  // five identical robots in one group, reliability r each
  TeamScenario scenario;
  scenario.catalog = Catalog({{1, Role::Platform, 0.02, 1, 1, 1, 0}});
  scenario.blueprints = {blueprint({1}, 0, 1)};
  scenario.counts = {5};
  scenario.horizon_months = 30.0;
  const TeamLayout layout = team_layout(scenario);
  const RedundancyMap zero = no_spares(scenario);
  const double r = module_reliability(0.02, 30.0, 0, 1.0);

  const std::vector<double> rels(5, r);
  CHECK(requirement_reliability(FunctionalRequirement::full(), layout, rels) ==
        doctest::Approx(std::pow(r, 5)).epsilon(1e-12));
  CHECK(requirement_reliability(FunctionalRequirement::minimal(), layout, rels) ==
        doctest::Approx(1.0 - std::pow(1.0 - r, 5)).epsilon(1e-12));
  double binom = 0.0;
  for (int k = 3; k <= 5; ++k) {
    const double choose = k == 3 ? 10.0 : k == 4 ? 5.0 : 1.0;
    binom += choose * std::pow(r, k) * std::pow(1.0 - r, 5 - k);
  }
  CHECK(requirement_reliability(FunctionalRequirement::partial({3}), layout, rels) ==
        doctest::Approx(binom).epsilon(1e-12));

  scenario.requirement = FunctionalRequirement::partial({3});
  CHECK(team_reliability(scenario, zero, 30.0) == doctest::Approx(binom));
}

TEST_CASE("own-storage forms: series default, parallel variant on request") {
  TeamScenario scenario;
  scenario.catalog = Catalog({{1, Role::Platform, 0.01, 1, 0.9, 0.6, 0},
                              {2, Role::Battery, 0.02, 1, 0.9, 0.6, 0}});
  scenario.blueprints = {blueprint({1, 2}, 2, 4)};
  scenario.counts = {2};
  scenario.horizon_months = 50.0;

  RedundancyMap storage(2);
  storage.set_spares(0, 1, 1);
  storage.set_spares(1, 2, 2);

  const double r11 = module_reliability(0.01, 50.0, 1, 0.6);
  const double r12 = module_reliability(0.02, 50.0, 0, 0.6);
  const double r21 = module_reliability(0.01, 50.0, 0, 0.6);
  const double r22 = module_reliability(0.02, 50.0, 2, 0.6);

  const double series_minimal =
      1.0 - (1.0 - r11 * r12) * (1.0 - r21 * r22);
  CHECK(team_reliability_own_storage(scenario, storage, 50.0) ==
        doctest::Approx(series_minimal).epsilon(1e-12));

  const double parallel_series =
      (1.0 - (1.0 - r11) * (1.0 - r12)) * (1.0 - (1.0 - r21) * (1.0 - r22));
  CHECK(team_reliability_own_storage(scenario, storage, 50.0,
                                     OwnStorageForm::RobotParallel) ==
        doctest::Approx(parallel_series).epsilon(1e-12));

  // assisted switching differs from self-directed when the probabilities do
  const RedundancyMap same = storage;
  const double self_directed = team_reliability(scenario, same, 50.0);
  CHECK(self_directed > team_reliability_own_storage(scenario, same, 50.0));
}

TEST_CASE("mismatched redundancy maps are rejected") {
  const TeamScenario scenario = six_robot_team();
  const TeamLayout layout = team_layout(scenario);
  CHECK_THROWS_AS(per_robot_reliabilities(scenario, layout, RedundancyMap(2), 60.0,
                                          SwitchSource::SelfDirected),
                  ConfigError);
  CHECK_THROWS_AS(requirement_reliability(FunctionalRequirement::minimal(), layout,
                                          {0.5, 0.5}),
                  ConfigError);
  CHECK_THROWS_AS(requirement_reliability(FunctionalRequirement::partial({1, 1}),
                                          layout, std::vector<double>(6, 0.5)),
                  ConfigError);
}
