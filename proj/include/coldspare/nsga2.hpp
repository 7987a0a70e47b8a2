#pragma once

#include <functional>
#include <vector>

#include "coldspare/allocation.hpp"
#include "coldspare/pareto.hpp"
#include "coldspare/rng.hpp"
#include "coldspare/types.hpp"

namespace coldspare {

/// Gene alphabet shared by every slot: 0 (empty) plus all catalog ids ascending.
std::vector<int> slot_alphabet(const Catalog& catalog);

/// Binary tournament: two members drawn uniformly (with replacement); lower
/// rank wins, ties go to larger crowding distance, remaining ties to a coin
/// flip. Returns the winner's index.
std::size_t tournament_select(const std::vector<int>& rank,
                              const std::vector<double>& crowding, Rng& rng);

/// Uniform crossover: with probability rate the children mix the parents'
/// genes 50/50 per locus (complementary picks); otherwise they are copies.
std::pair<Allocation, Allocation> crossover(const Allocation& a, const Allocation& b,
                                            double rate, Rng& rng);

/// Per-gene mutation: each gene is redrawn uniformly from the alphabet with
/// the given probability (the redraw may repeat the old value).
void mutate(Allocation& allocation, const std::vector<int>& alphabet, double rate,
            Rng& rng);

/// Canonicalize, deduplicate by exact objective pair (keeping the
/// lexicographically smallest gene vector) and sort by descending
/// reliability. Both optimizer and enumerator return fronts through this, so
/// equal fronts serialize identically.
std::vector<ParetoPoint> finalize_front(std::vector<ParetoPoint> points,
                                        const TeamScenario& scenario);

struct OptimizeResult {
  std::vector<ParetoPoint> front;  // non-dominated, deduplicated, reliability descending
  long evaluations = 0;            // objective evaluations (cache misses)
};

using GenerationObserver =
    std::function<void(int generation, const std::vector<ParetoPoint>& front)>;

/// Elitist NSGA-II over spare allocations. Deterministic for a fixed
/// GAConfig::rng_seed. Offspring are constraint-repaired, so every evaluated
/// individual is feasible; objective values are cached by canonical gene
/// vector. The observer, when set, sees the running non-dominated front after
/// the initial evaluation (generation 0) and after each survival step.
OptimizeResult nsga2_optimize(const TeamScenario& scenario, double months,
                              const GAConfig& config,
                              const GenerationObserver& observer = nullptr);

}  // namespace coldspare
