#pragma once

#include <cstdint>
#include <vector>

#include "coldspare/types.hpp"

namespace coldspare {

/// Spare-slot assignment: one gene per free slot, robots in instance order.
/// Gene 0 leaves the slot empty, a catalog id stocks one spare of that type.
struct Allocation {
  std::vector<int> genes;

  bool operator==(const Allocation& other) const { return genes == other.genes; }
};

/// Max spares of one module type a single robot may stock: the tighter of the
/// blueprint's per-type limit and the scenario-wide per-type limit, bounded by
/// the robot's free slots.
int effective_type_limit(const TeamScenario& scenario, const RobotBlueprint& blueprint,
                         int id);

/// Expand genes into per-robot spare counts. Throws ConfigError on a length
/// mismatch or an unknown module id. Slot capacity holds by construction;
/// per-type limits are NOT checked here (see feasible / repair).
RedundancyMap decode(const Allocation& allocation, const TeamScenario& scenario);

/// Canonical gene vector for a spare-count map: each robot's block holds its
/// empty slots first, then spare ids ascending. Throws ConstraintError if a
/// robot's stock exceeds its free slots.
Allocation encode(const TeamScenario& scenario, const RedundancyMap& redundancy);

/// Sort each robot's gene block ascending (zeros first). Allocations with the
/// same per-robot spare multisets canonicalize identically.
void canonicalize(Allocation& allocation, const TeamScenario& scenario);

/// True when every per-type limit is respected.
bool feasible(const Allocation& allocation, const TeamScenario& scenario);

/// Constraint repair: scan each robot's block left to right and reset to 0
/// any gene that would push a per-type count past its limit.
void repair(Allocation& allocation, const TeamScenario& scenario);

struct EvalResult {
  bool feasible = false;
  double reliability = 0.0;
  double cost = 0.0;
};

/// Objectives of one allocation at time `months`: team reliability under the
/// scenario's requirement and total acquisition cost. A limit-violating
/// allocation comes back marked infeasible instead of throwing.
EvalResult evaluate(const Allocation& allocation, const TeamScenario& scenario,
                    double months);

/// One point of a reliability/cost front.
struct ParetoPoint {
  double reliability = 0.0;
  double cost = 0.0;
  Allocation allocation;
};

struct GAConfig {
  int population_size = 100;  // even, >= 4
  int generations = 200;
  double crossover_rate = 0.9;
  double mutation_rate = -1.0;  // negative selects 1/gene_count
  int tournament_size = 2;
  std::uint64_t rng_seed = 1;
};

void validate_ga_config(const GAConfig& config);

}  // namespace coldspare
