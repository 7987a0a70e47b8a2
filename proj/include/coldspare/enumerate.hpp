#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coldspare/allocation.hpp"
#include "coldspare/types.hpp"

namespace coldspare {

/// Search-space counts overflow 64 bits on realistic teams (a 19-slot,
/// 18-type scenario has 19^19 assignments), so they are carried as saturating
/// unsigned 128-bit values.
using CountValue = unsigned __int128;

inline constexpr CountValue kCountMax = ~static_cast<CountValue>(0);
inline constexpr std::uint64_t kDefaultEnumerationCeiling = 10'000'000ULL;

std::string count_to_string(CountValue value);

/// Saturating product of non-negative factors.
CountValue saturating_product(const std::vector<long>& factors);

/// Raw assignment count of a scenario's chromosome:
/// (catalog size + 1) ^ total free slots.
CountValue gene_space_size(const TeamScenario& scenario);

/// Product of per-type maxima, the count used when redundancy is described
/// by one total per module type.
CountValue module_count_space(const std::vector<long>& per_type_maxima);

/// Product of per-robot per-type maxima, the count used when every robot
/// stocks its own storage.
CountValue per_robot_count_space(const std::vector<std::vector<long>>& per_robot_maxima);

struct EnumerationResult {
  CountValue search_space = 0;       // raw gene-space count
  bool enumerated = false;           // false when refused by the ceiling
  std::vector<ParetoPoint> front;    // exact front when enumerated
};

/// Exact Pareto front by full enumeration. Gene order inside a robot cannot
/// change the objectives, so the walk visits per-robot spare multisets
/// (pruning per-type limit violations) rather than raw gene vectors; the
/// ceiling still gates on the raw gene-space count, which is what the
/// refusal reports.
EnumerationResult exhaustive_enumerate(const TeamScenario& scenario, double months,
                                       CountValue ceiling = kDefaultEnumerationCeiling);

}  // namespace coldspare
