#pragma once

#include <cstddef>
#include <vector>

namespace coldspare {

/// Objective pair: reliability is maximized, cost minimized.
struct Objectives {
  double reliability = 0.0;
  double cost = 0.0;

  bool operator==(const Objectives& other) const {
    return reliability == other.reliability && cost == other.cost;
  }
};

/// a dominates b when a is at least as reliable and at most as costly, and
/// strictly better on one of the two.
bool dominates(const Objectives& a, const Objectives& b);

/// Non-dominated sorting (Deb's bookkeeping): fronts[0] is the non-dominated
/// set, fronts[k] the set dominated only by members of earlier fronts.
/// Indices within each front keep input order.
std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    const std::vector<Objectives>& points);

/// Crowding distance of each point within one front, aligned with the input
/// order. Boundary points of either objective get +infinity; interior points
/// sum the normalized gaps of their neighbors. An objective with zero range
/// contributes nothing.
std::vector<double> crowding_distance(const std::vector<Objectives>& front);

/// Indices of the non-dominated points, by cost-sorted sweep (O(n log n)).
/// Equals fast_non_dominated_sort(points)[0] as a set.
std::vector<std::size_t> pareto_front_indices(const std::vector<Objectives>& points);

/// Dominated-region area of a front against a reference point (reliability
/// floor, cost ceiling). Points outside the reference box contribute nothing.
double hypervolume(const std::vector<Objectives>& front, const Objectives& reference);

}  // namespace coldspare
