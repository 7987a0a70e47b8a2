#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "coldspare/allocation.hpp"
#include "coldspare/enumerate.hpp"
#include "coldspare/nsga2.hpp"
#include "coldspare/pareto.hpp"
#include "fixture.hpp"

using namespace coldspare;
using coldspare::testing::blueprint;

namespace {

/// Two interchangeable module types on one robot: a 3^2 gene space whose
/// exact front is tiny and easy to reason about.
TeamScenario twin_type_team() {
  TeamScenario scenario;
  scenario.catalog = Catalog({{1, Role::Platform, 0.02, 50, 0.9, 0.9, 0},
                              {2, Role::Platform, 0.02, 50, 0.9, 0.9, 0}});
  scenario.blueprints = {blueprint({1}, 2, 3)};
  scenario.counts = {1};
  scenario.horizon_months = 40.0;
  return scenario;
}

/// Three robots, three module types, four free slots: small enough to
/// enumerate, rich enough that the front has several points.
TeamScenario small_team() {
  TeamScenario scenario;
  scenario.catalog = Catalog({{1, Role::Platform, 0.02, 100, 0.95, 0.95, 0},
                              {2, Role::Battery, 0.04, 40, 0.95, 0.95, 0},
                              {3, Role::Processor, 0.01, 160, 0.95, 0.95, 0}});
  scenario.blueprints = {blueprint({1, 2}, 2, 4), blueprint({2, 3}, 1, 3),
                         blueprint({1, 3}, 1, 3)};
  scenario.counts = {1, 1, 1};
  scenario.horizon_months = 30.0;
  return scenario;
}

}  // namespace

TEST_CASE("the slot alphabet is zero plus every catalog id") {
  CHECK(slot_alphabet(coldspare::testing::six_robot_catalog()) ==
        std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16,
                         17, 18});
  CHECK(slot_alphabet(twin_type_team().catalog) == std::vector<int>{0, 1, 2});
}

TEST_CASE("tournament favors rank, then crowding, then the coin") {
  Rng rng(31);
  // two members: the rank-0 member loses only when drawn against itself
  long zero_wins = 0;
  const long draws = 40000;
  for (long i = 0; i < draws; ++i)
    if (tournament_select({0, 1}, {1.0, 1.0}, rng) == 0) ++zero_wins;
  const double frequency = static_cast<double>(zero_wins) / draws;
  CHECK(frequency == doctest::Approx(0.75).epsilon(0.03));

  // equal ranks: crowding decides the same way
  long crowded_wins = 0;
  for (long i = 0; i < draws; ++i)
    if (tournament_select({0, 0}, {9.0, 2.0}, rng) == 0) ++crowded_wins;
  CHECK(static_cast<double>(crowded_wins) / draws == doctest::Approx(0.75).epsilon(0.03));

  // full ties: the coin keeps both sides alive
  long heads = 0;
  for (long i = 0; i < draws; ++i)
    if (tournament_select({0, 0}, {1.0, 1.0}, rng) == 0) ++heads;
  CHECK(static_cast<double>(heads) / draws == doctest::Approx(0.5).epsilon(0.05));

  CHECK_THROWS_AS(tournament_select({}, {}, rng), DomainError);
  CHECK_THROWS_AS(tournament_select({0}, {1.0, 2.0}, rng), DomainError);
}

TEST_CASE("crossover at rate zero copies, at rate one mixes complementarily") {
  Rng rng(47);
  Allocation a, b;
  for (int g = 0; g < 50; ++g) {
    a.genes.push_back(1);
    b.genes.push_back(2);
  }
  const auto copies = crossover(a, b, 0.0, rng);
  CHECK(copies.first == a);
  CHECK(copies.second == b);

  const auto mixed = crossover(a, b, 1.0, rng);
  int swapped = 0;
  for (std::size_t g = 0; g < a.genes.size(); ++g) {
    const bool kept = mixed.first.genes[g] == 1 && mixed.second.genes[g] == 2;
    const bool crossed = mixed.first.genes[g] == 2 && mixed.second.genes[g] == 1;
    CHECK((kept || crossed));
    if (crossed) ++swapped;
  }
  CHECK(swapped > 5);
  CHECK(swapped < 45);

  Allocation shorter;
  shorter.genes = {1, 2};
  CHECK_THROWS_AS(crossover(a, shorter, 0.5, rng), ConfigError);
}

TEST_CASE("mutation redraws genes from the alphabet at the given rate") {
  Rng rng(53);
  Allocation a;
  a.genes.assign(100, 7);
  Allocation untouched = a;
  mutate(a, {0, 1, 2}, 0.0, rng);
  CHECK(a == untouched);

  mutate(a, {5}, 1.0, rng);
  CHECK(std::all_of(a.genes.begin(), a.genes.end(), [](int g) { return g == 5; }));

  a.genes.assign(2000, 9);
  mutate(a, {0, 9}, 0.25, rng);
  const long changed = std::count(a.genes.begin(), a.genes.end(), 0);
  // a quarter mutate, half of those redraw the old value: ~12.5% become 0
  CHECK(static_cast<double>(changed) / 2000.0 == doctest::Approx(0.125).epsilon(0.25));

  CHECK_THROWS_AS(mutate(a, {}, 0.5, rng), DomainError);
}

TEST_CASE("finalized fronts are canonical, sorted and objective-unique") {
  const TeamScenario scenario = twin_type_team();
  // types 1 and 2 are interchangeable, so these collapse to equal objectives
  std::vector<ParetoPoint> points;
  points.push_back({0.9, 100.0, Allocation{{2, 1}}});
  points.push_back({0.9, 100.0, Allocation{{2, 2}}});
  points.push_back({0.9, 100.0, Allocation{{1, 2}}});
  points.push_back({0.95, 150.0, Allocation{{1, 1}}});

  const std::vector<ParetoPoint> front = finalize_front(points, scenario);
  REQUIRE(front.size() == 2);
  CHECK(front[0].reliability == 0.95);
  CHECK(front[0].allocation.genes == std::vector<int>{1, 1});
  CHECK(front[1].reliability == 0.9);
  // {2,1} and {1,2} canonicalize to {1,2}, which beats {2,2} lexicographically
  CHECK(front[1].allocation.genes == std::vector<int>{1, 2});
}

TEST_CASE("the optimizer is deterministic per seed") {
  const TeamScenario scenario = small_team();
  GAConfig config;
  config.population_size = 24;
  config.generations = 20;
  config.rng_seed = 123;
  const OptimizeResult first = nsga2_optimize(scenario, 30.0, config);
  const OptimizeResult second = nsga2_optimize(scenario, 30.0, config);
  REQUIRE(first.front.size() == second.front.size());
  CHECK(first.evaluations == second.evaluations);
  for (std::size_t i = 0; i < first.front.size(); ++i) {
    CHECK(first.front[i].reliability == second.front[i].reliability);
    CHECK(first.front[i].cost == second.front[i].cost);
    CHECK(first.front[i].allocation == second.front[i].allocation);
  }
}

TEST_CASE("every returned point carries its exact objective values") {
  const TeamScenario scenario = small_team();
  GAConfig config;
  config.population_size = 20;
  config.generations = 15;
  config.rng_seed = 7;
  const OptimizeResult result = nsga2_optimize(scenario, 30.0, config);
  REQUIRE(!result.front.empty());
  for (const ParetoPoint& p : result.front) {
    CHECK(feasible(p.allocation, scenario));
    const EvalResult r = evaluate(p.allocation, scenario, 30.0);
    CHECK(r.reliability == p.reliability);
    CHECK(r.cost == p.cost);
  }
  // the front itself is mutually non-dominated and sorted
  for (std::size_t i = 1; i < result.front.size(); ++i) {
    CHECK(result.front[i - 1].reliability > result.front[i].reliability);
    CHECK(result.front[i - 1].cost > result.front[i].cost);
  }
}

TEST_CASE("a zero-generation budget still yields the initial front") {
  const TeamScenario scenario = small_team();
  GAConfig config;
  config.population_size = 16;
  config.generations = 0;
  config.rng_seed = 99;
  const OptimizeResult result = nsga2_optimize(scenario, 30.0, config);
  CHECK(!result.front.empty());
  CHECK(result.evaluations <= 16);
  for (const ParetoPoint& p : result.front)
    CHECK(evaluate(p.allocation, scenario, 30.0).reliability == p.reliability);
}

TEST_CASE("the observer sees every generation and an improving front") {
  const TeamScenario scenario = small_team();
  GAConfig config;
  config.population_size = 30;
  config.generations = 25;
  config.rng_seed = 2;

  std::vector<int> generations_seen;
  std::vector<double> volumes;
  const Objectives reference{0.0, 2000.0};
  const auto observer = [&](int gen, const std::vector<ParetoPoint>& front) {
    generations_seen.push_back(gen);
    std::vector<Objectives> objectives;
    objectives.reserve(front.size());
    for (const ParetoPoint& p : front)
      objectives.push_back({p.reliability, p.cost});
    volumes.push_back(hypervolume(objectives, reference));
  };
  nsga2_optimize(scenario, 30.0, config, observer);

  REQUIRE(generations_seen.size() == 26);
  for (int g = 0; g <= 25; ++g) CHECK(generations_seen[g] == g);
  // elitist survival with a population larger than the true front cannot lose
  // dominated area between generations
  for (std::size_t i = 1; i < volumes.size(); ++i) CHECK(volumes[i] >= volumes[i - 1]);
  CHECK(volumes.back() > 0.0);
}

TEST_CASE("on an enumerable space the optimizer recovers the exact front") {
  const TeamScenario scenario = small_team();
  const EnumerationResult exact = exhaustive_enumerate(scenario, 30.0);
  REQUIRE(exact.enumerated);

  GAConfig config;
  config.population_size = 40;
  config.generations = 60;
  config.rng_seed = 4;
  const OptimizeResult result = nsga2_optimize(scenario, 30.0, config);

  REQUIRE(result.front.size() == exact.front.size());
  for (std::size_t i = 0; i < exact.front.size(); ++i) {
    CHECK(result.front[i].reliability == exact.front[i].reliability);
    CHECK(result.front[i].cost == exact.front[i].cost);
    CHECK(result.front[i].allocation == exact.front[i].allocation);
  }
}

TEST_CASE("optimizer rejects invalid configurations up front") {
  const TeamScenario scenario = twin_type_team();
  GAConfig config;
  config.population_size = 3;
  CHECK_THROWS_AS(nsga2_optimize(scenario, 10.0, config), DomainError);
}
