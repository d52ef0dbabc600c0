#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppcenter/instance.hpp"

namespace ppc {

struct EnumerationOptions {
  // Maximum number of objective evaluations an enumeration may perform.
  std::uint64_t budget = 100'000'000;
  // 0 picks default_workers().
  int workers = 0;
};

struct ExactResult {
  std::vector<int> bestCenters;
  double bestValue = 0.0;
  std::vector<int> bestAssignment;  // site -> center
  std::uint64_t subsetsExplored = 0;
};

struct CenterSolution {
  double value = 0.0;
  std::vector<int> centers;
};

// Minimum of evaluate() over all p-subsets (closest assignment). Ties go to
// the lexicographically smallest center set.
ExactResult solve_exact_cac(const Instance& inst, const EnumerationOptions& opts = {});

// Minimum over all (center set, arbitrary assignment) pairs. The default
// budget for this solver is 1e9 evaluations.
ExactResult solve_exact_nocac(const Instance& inst,
                              const EnumerationOptions& opts = {1'000'000'000, 0});

// Classical objectives over closest assignment distances.
CenterSolution solve_pcp(const Instance& inst, int centersWanted,
                         const EnumerationOptions& opts = {});
CenterSolution solve_pmedian(const Instance& inst, int centersWanted,
                             const EnumerationOptions& opts = {});
CenterSolution solve_kcentrum(const Instance& inst, int centersWanted, int k,
                              const EnumerationOptions& opts = {});

// Sorted distinct entries of the distance matrix; element 0 is 0.
std::vector<double> distinct_distances(const Instance& inst);

// For every h (1-based into distinct_distances): the largest number of
// closest-assignment distances >= d_(h) (upper) and <= d_(h) (lower) over all
// p-subsets. Index 0 is unused.
struct PositionalCounts {
  std::vector<double> levels;  // levels[h-1] = d_(h)
  std::vector<int> upper;      // upper[h]
  std::vector<int> lower;      // lower[h]
};
PositionalCounts positional_counts(const Instance& inst, const EnumerationOptions& opts = {});

int n_upper(const Instance& inst, int h, const EnumerationOptions& opts = {});
int n_lower(const Instance& inst, int h, const EnumerationOptions& opts = {});

// Closest-assignment distance of every site to `centers`.
void closest_distances(const Instance& inst, std::span<const int> centers,
                       std::vector<double>& out);

}  // namespace ppc
