#include "coldspare/pareto.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace coldspare {

bool dominates(const Objectives& a, const Objectives& b) {
  if (a.reliability < b.reliability || a.cost > b.cost) return false;
  return a.reliability > b.reliability || a.cost < b.cost;
}

std::vector<std::vector<std::size_t>> fast_non_dominated_sort(
    const std::vector<Objectives>& points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(points[p], points[q]))
        dominated[p].push_back(q);
      else if (dominates(points[q], points[p]))
        ++domination_count[p];
    }
    if (domination_count[p] == 0) current.push_back(p);
  }

  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (std::size_t p : fronts.back())
      for (std::size_t q : dominated[p])
        if (--domination_count[q] == 0) next.push_back(q);
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(const std::vector<Objectives>& front) {
  const std::size_t n = front.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }

  const auto accumulate_objective = [&](auto value_of) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return value_of(front[a]) < value_of(front[b]);
    });
    const double range = value_of(front[order.back()]) - value_of(front[order.front()]);
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    if (range <= 0.0) return;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (distance[order[i]] == inf) continue;
      distance[order[i]] +=
          (value_of(front[order[i + 1]]) - value_of(front[order[i - 1]])) / range;
    }
  };

  accumulate_objective([](const Objectives& o) { return o.reliability; });
  accumulate_objective([](const Objectives& o) { return o.cost; });
  return distance;
}

std::vector<std::size_t> pareto_front_indices(const std::vector<Objectives>& points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  // cheap first; ties by reliability descending so the best of a cost tier leads
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (points[a].cost != points[b].cost) return points[a].cost < points[b].cost;
    return points[a].reliability > points[b].reliability;
  });
  std::vector<std::size_t> front;
  double best_reliability = -std::numeric_limits<double>::infinity();
  double best_cost = std::numeric_limits<double>::infinity();
  for (std::size_t idx : order) {
    const Objectives& p = points[idx];
    if (p.reliability > best_reliability) {
      front.push_back(idx);
      best_reliability = p.reliability;
      best_cost = p.cost;
    } else if (p.reliability == best_reliability && p.cost == best_cost) {
      front.push_back(idx);  // exact duplicate of the tier leader
    }
  }
  std::sort(front.begin(), front.end());
  return front;
}

double hypervolume(const std::vector<Objectives>& front, const Objectives& reference) {
  std::vector<Objectives> kept;
  for (const Objectives& p : front)
    if (p.reliability > reference.reliability && p.cost < reference.cost)
      kept.push_back(p);
  std::sort(kept.begin(), kept.end(), [](const Objectives& a, const Objectives& b) {
    if (a.reliability != b.reliability) return a.reliability > b.reliability;
    return a.cost < b.cost;
  });
  // staircase sweep from the most reliable point down: each point that
  // improves on the cheapest cost so far adds one column of the union
  double area = 0.0;
  double cost_edge = reference.cost;
  for (const Objectives& p : kept) {
    if (p.cost >= cost_edge) continue;  // dominated, adds nothing
    area += (p.reliability - reference.reliability) * (cost_edge - p.cost);
    cost_edge = p.cost;
  }
  return area;
}

}  // namespace coldspare
