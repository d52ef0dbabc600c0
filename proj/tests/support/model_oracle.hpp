#pragma once

#include <cstdint>
#include <vector>

#include "ppcenter/model.hpp"

namespace oracle {

struct LpResult {
  enum Status { Optimal, Infeasible, Unbounded } status = Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

// min c.x subject to rows, lower <= x <= upper (upper may be +inf, lower
// finite). Dense two-phase simplex with Bland's rule.
LpResult solve_lp(const std::vector<double>& c, const std::vector<std::vector<double>>& a,
                  const std::vector<ppc::Sense>& sense, const std::vector<double>& b,
                  const std::vector<double>& lower, const std::vector<double>& upper);

struct EnumerationResult {
  bool feasible = false;
  double value = 0.0;
  std::int64_t leaves = 0;
};

// Minimum of the model over every binary assignment: depth-first branching
// with activity-based bound propagation, each leaf solved as an LP over the
// continuous variables. Binaries of the row named "centers" are branched
// first.
EnumerationResult minimize(const ppc::LinearModel& model);

}  // namespace oracle
