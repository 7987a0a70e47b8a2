#include "coldspare/nsga2.hpp"

#include <algorithm>
#include <unordered_map>

#include "coldspare/reliability.hpp"

namespace coldspare {

std::vector<int> slot_alphabet(const Catalog& catalog) {
  std::vector<int> alphabet;
  alphabet.reserve(catalog.size() + 1);
  alphabet.push_back(0);
  for (const ModuleTypeSpec& m : catalog.entries()) alphabet.push_back(m.id);
  std::sort(alphabet.begin(), alphabet.end());
  return alphabet;
}

std::size_t tournament_select(const std::vector<int>& rank,
                              const std::vector<double>& crowding, Rng& rng) {
  if (rank.empty() || rank.size() != crowding.size())
    throw DomainError("tournament needs aligned, non-empty rank and crowding");
  const std::size_t a = rng.index(rank.size());
  const std::size_t b = rng.index(rank.size());
  if (rank[a] != rank[b]) return rank[a] < rank[b] ? a : b;
  if (crowding[a] != crowding[b]) return crowding[a] > crowding[b] ? a : b;
  return rng.bernoulli(0.5) ? a : b;
}

std::pair<Allocation, Allocation> crossover(const Allocation& a, const Allocation& b,
                                            double rate, Rng& rng) {
  if (a.genes.size() != b.genes.size())
    throw ConfigError("crossover parents differ in length");
  std::pair<Allocation, Allocation> children{a, b};
  if (!rng.bernoulli(rate)) return children;
  for (std::size_t g = 0; g < a.genes.size(); ++g) {
    if (rng.bernoulli(0.5)) continue;
    children.first.genes[g] = b.genes[g];
    children.second.genes[g] = a.genes[g];
  }
  return children;
}

void mutate(Allocation& allocation, const std::vector<int>& alphabet, double rate,
            Rng& rng) {
  if (alphabet.empty()) throw DomainError("mutation alphabet must not be empty");
  for (int& gene : allocation.genes)
    if (rng.bernoulli(rate)) gene = alphabet[rng.index(alphabet.size())];
}

std::vector<ParetoPoint> finalize_front(std::vector<ParetoPoint> points,
                                        const TeamScenario& scenario) {
  for (ParetoPoint& p : points) canonicalize(p.allocation, scenario);
  std::sort(points.begin(), points.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
    if (a.reliability != b.reliability) return a.reliability > b.reliability;
    if (a.cost != b.cost) return a.cost < b.cost;
    return a.allocation.genes < b.allocation.genes;
  });
  std::vector<ParetoPoint> front;
  for (ParetoPoint& p : points) {
    if (!front.empty() && front.back().reliability == p.reliability &&
        front.back().cost == p.cost)
      continue;  // duplicate objective pair; the lexicographically smaller one leads
    front.push_back(std::move(p));
  }
  return front;
}

namespace {

struct GeneVectorHash {
  std::size_t operator()(const std::vector<int>& genes) const {
    std::size_t h = 1469598103934665603ULL;
    for (int g : genes) {
      h ^= static_cast<std::size_t>(g) + 0x9e3779b97f4a7c15ULL;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

struct Individual {
  Allocation allocation;
  Objectives objectives;
};

class CachedEvaluator {
 public:
  CachedEvaluator(const TeamScenario& scenario, double months)
      : scenario_(scenario), months_(months) {}

  Objectives operator()(const Allocation& allocation) {
    Allocation key = allocation;
    canonicalize(key, scenario_);
    auto it = cache_.find(key.genes);
    if (it != cache_.end()) return it->second;
    const EvalResult r = evaluate(key, scenario_, months_);
    if (!r.feasible)
      throw ConstraintError("optimizer produced an infeasible allocation");
    const Objectives obj{r.reliability, r.cost};
    cache_.emplace(std::move(key.genes), obj);
    ++misses_;
    return obj;
  }

  long misses() const { return misses_; }

 private:
  const TeamScenario& scenario_;
  double months_;
  std::unordered_map<std::vector<int>, Objectives, GeneVectorHash> cache_;
  long misses_ = 0;
};

std::vector<ParetoPoint> front_points(const std::vector<Individual>& population,
                                      const std::vector<std::vector<std::size_t>>& fronts) {
  std::vector<ParetoPoint> points;
  if (fronts.empty()) return points;
  points.reserve(fronts[0].size());
  for (std::size_t i : fronts[0])
    points.push_back({population[i].objectives.reliability,
                      population[i].objectives.cost, population[i].allocation});
  return points;
}

}  // namespace

OptimizeResult nsga2_optimize(const TeamScenario& scenario, double months,
                              const GAConfig& config,
                              const GenerationObserver& observer) {
  validate_scenario(scenario);
  validate_ga_config(config);
  const TeamLayout layout = team_layout(scenario);
  const std::vector<int> alphabet = slot_alphabet(scenario.catalog);
  const double mutation_rate =
      config.mutation_rate < 0.0
          ? 1.0 / static_cast<double>(std::max<std::size_t>(layout.gene_count, 1))
          : config.mutation_rate;
  const std::size_t n = static_cast<std::size_t>(config.population_size);

  Rng rng(config.rng_seed);
  CachedEvaluator evaluate_cached(scenario, months);

  std::vector<Individual> population;
  population.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Individual ind;
    ind.allocation.genes.resize(layout.gene_count);
    for (int& gene : ind.allocation.genes) gene = alphabet[rng.index(alphabet.size())];
    repair(ind.allocation, scenario);
    ind.objectives = evaluate_cached(ind.allocation);
    population.push_back(std::move(ind));
  }

  const auto objectives_of = [](const std::vector<Individual>& pop) {
    std::vector<Objectives> objs;
    objs.reserve(pop.size());
    for (const Individual& ind : pop) objs.push_back(ind.objectives);
    return objs;
  };

  // rank + crowding over the current population, for tournament selection
  std::vector<int> rank(n, 0);
  std::vector<double> crowding(n, 0.0);
  const auto grade_population = [&]() {
    const auto fronts = fast_non_dominated_sort(objectives_of(population));
    for (std::size_t f = 0; f < fronts.size(); ++f) {
      std::vector<Objectives> members;
      members.reserve(fronts[f].size());
      for (std::size_t i : fronts[f]) members.push_back(population[i].objectives);
      const std::vector<double> dist = crowding_distance(members);
      for (std::size_t k = 0; k < fronts[f].size(); ++k) {
        rank[fronts[f][k]] = static_cast<int>(f);
        crowding[fronts[f][k]] = dist[k];
      }
    }
    return fronts;
  };

  auto fronts = grade_population();
  if (observer) observer(0, finalize_front(front_points(population, fronts), scenario));

  for (int gen = 1; gen <= config.generations; ++gen) {
    std::vector<Individual> offspring;
    offspring.reserve(n);
    while (offspring.size() < n) {
      const std::size_t p1 = tournament_select(rank, crowding, rng);
      const std::size_t p2 = tournament_select(rank, crowding, rng);
      auto [c1, c2] = crossover(population[p1].allocation, population[p2].allocation,
                                config.crossover_rate, rng);
      for (Allocation* child : {&c1, &c2}) {
        mutate(*child, alphabet, mutation_rate, rng);
        repair(*child, scenario);
        Individual ind;
        ind.allocation = std::move(*child);
        ind.objectives = evaluate_cached(ind.allocation);
        offspring.push_back(std::move(ind));
        if (offspring.size() == n) break;
      }
    }

    // elitist mu+lambda survival with crowding truncation on the split front
    std::vector<Individual> combined = std::move(population);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    const auto combined_fronts = fast_non_dominated_sort(objectives_of(combined));
    std::vector<Individual> next;
    next.reserve(n);
    for (const auto& front : combined_fronts) {
      if (next.size() == n) break;
      if (next.size() + front.size() <= n) {
        for (std::size_t i : front) next.push_back(std::move(combined[i]));
        continue;
      }
      std::vector<Objectives> members;
      members.reserve(front.size());
      for (std::size_t i : front) members.push_back(combined[i].objectives);
      const std::vector<double> dist = crowding_distance(members);
      std::vector<std::size_t> order(front.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return dist[a] > dist[b];
      });
      for (std::size_t k = 0; next.size() < n; ++k)
        next.push_back(std::move(combined[front[order[k]]]));
    }
    population = std::move(next);
    fronts = grade_population();
    if (observer)
      observer(gen, finalize_front(front_points(population, fronts), scenario));
  }

  OptimizeResult result;
  result.front = finalize_front(front_points(population, fronts), scenario);
  result.evaluations = evaluate_cached.misses();
  return result;
}

}  // namespace coldspare
