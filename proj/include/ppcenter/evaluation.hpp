#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ppcenter/instance.hpp"

namespace ppc {

/// A center set with its assignment and the positions of every assignment in
/// the ascending OrderKey order.
struct Solution {
  std::vector<int> centers;      // ascending site indices, size p
  std::vector<int> assign;       // site -> center
  std::vector<int> sortedOrder;  // sortedOrder[t-1] = site at position t
  double objective = std::numeric_limits<double>::quiet_NaN();
};

struct PiRow {
  int center;
  double value;
};

// Each site goes to its preferred open center (distance, then lower index).
// Throws std::invalid_argument unless `centers` holds p distinct sites.
Solution closest_assignment(const Instance& inst, std::span<const int> centers);

// Skeleton for an arbitrary assignment. Every site must map into `centers`
// and every center must serve itself.
Solution make_solution(const Instance& inst, std::span<const int> centers,
                       std::span<const int> assign);

// pi value of every site: the probability that no site at a higher position
// has demand, attached to the site's own center.
std::vector<PiRow> pi_matrix(const Instance& inst, const Solution& sol);

// Sorts sites by OrderKey of (site, assign[site]) into `order`.
void sort_positions(const Instance& inst, std::span<const int> assign,
                    std::vector<int>& order);

// Truncated expected maximum service cost of an ordered assignment:
// sum over the top-K positions of q d prod(1 - q) over higher positions,
// accumulated from position n downwards.
double ordered_objective(const Instance& inst, std::span<const int> order,
                         std::span<const int> assign);

double evaluate(const Instance& inst, std::span<const int> centers);
double evaluate_assignment(const Instance& inst, std::span<const int> centers,
                           std::span<const int> assign);

// Closed form for a common probability q: sum_k q (1-q)^(n-k) d_(k).
double evaluate_homogeneous(const Instance& inst, std::span<const int> centers);

struct SimulationResult {
  double mean;
  double stderror;
};

// Monte-Carlo estimate with independent Bernoulli demands. A sample records
// the largest demanding assignment distance when that assignment sits in a
// top-K position, and 0 otherwise. Samples are split into fixed chunks with
// derived seeds, so the result does not depend on `workers`.
SimulationResult simulate(const Instance& inst, std::span<const int> centers,
                          std::int64_t samples, std::uint64_t seed, int workers = 0);

// Exact expectation over all 2^n demand scenarios (n <= 22).
double scenario_expectation(const Instance& inst, std::span<const int> centers);

}  // namespace ppc
