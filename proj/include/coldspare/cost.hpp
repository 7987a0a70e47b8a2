#pragma once

#include <map>
#include <vector>

#include "coldspare/types.hpp"

namespace coldspare {

/// Mean time to failure in months for an exponential failure law.
double mttf_months(double failure_rate);

/// Expected corrective-maintenance spend per month for one running module:
/// failures arrive at failure_rate and each costs maintenance_cost.
double cm_cost_rate(double failure_rate, double maintenance_cost);

/// One-off purchase price of a team: every active module plus every stocked
/// spare at catalog cost.
double acquisition_cost(const TeamScenario& scenario, const RedundancyMap& redundancy);

/// Convention for the continuous running-cost rate.
enum class RunningCostModel {
  /// cost / failure_rate per type, times team size. Carries odd units
  /// (currency*month per month of operation) but is kept as the primary
  /// convention for comparability.
  MttfWeighted,
  /// cost * failure_rate per type, times team size: the expected spend on
  /// replacement parts per month.
  RateWeighted,
};

/// Continuous running-cost rate of a team of `team_size` robots over the
/// module types listed in active_types (summed as given; pass distinct ids).
double continuous_running_cost(const Catalog& catalog, int team_size,
                               const std::vector<int>& active_types,
                               RunningCostModel model = RunningCostModel::MttfWeighted);

struct CostBreakdown {
  struct PerModule {
    int count = 0;        // active + spare units of this type in the team
    double subtotal = 0;  // count * unit cost
  };

  double acquisition = 0;              // sum of all subtotals
  double cm_rate_per_month = 0;        // sum of cm_cost_rate over active modules
  double continuous_rate_per_month = 0;  // MttfWeighted convention
  std::map<int, PerModule> per_module;
};

CostBreakdown cost_breakdown(const TeamScenario& scenario,
                             const RedundancyMap& redundancy);

}  // namespace coldspare
