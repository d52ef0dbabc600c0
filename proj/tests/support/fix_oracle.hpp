#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <span>

#include "oracles.hpp"
#include "ppcenter/evaluation.hpp"
#include "ppcenter/fixing.hpp"

namespace oracle {

// True when the closest-assignment solution of `centers` sets no fixed
// variable to a nonzero value.
inline bool respects(const ppc::Instance& inst, const ppc::FixReport& r, std::span<const int> centers) {
  const int n = inst.n(), K = inst.K();
  const ppc::Solution sol = ppc::closest_assignment(inst, centers);
  if (r.formulation != ppc::Formulation::PFK) {
    for (int pos = 1; pos <= n; ++pos) {
      const int i = sol.sortedOrder[pos - 1];
      const int j = sol.assign[i];
      const int slot = pos <= n - K ? 0 : pos - (n - K);
      if (r.fixedX.n() > 0 && r.fixedX(i, j, slot)) return false;
      if (slot > 0 && r.fixedLambda.n() > 0 && r.fixedLambda(i, j, slot)) return false;
    }
    return true;
  }
  const auto pairs = ppc::sorted_pairs(inst);
  std::map<std::pair<int, int>, int> index;
  for (int k = 0; k < static_cast<int>(pairs.size()); ++k) index[{pairs[k].i, pairs[k].j}] = k;
  for (int pos = 1; pos <= n; ++pos) {
    const int i = sol.sortedOrder[pos - 1];
    const int j = sol.assign[i];
    const int k = index.at({std::min(i, j), std::max(i, j)});
    if (r.fixedPairX[static_cast<std::size_t>(i) * n + j]) return false;
    const bool lower = pos <= n - K;
    if (lower && r.fixedS[k]) return false;
    if (!lower && r.equalities[k]) return false;
  }
  return true;
}

inline double best_respecting(const ppc::Instance& inst, const ppc::FixReport& r) {
  double best = std::numeric_limits<double>::infinity();
  for_each_subset(inst.n(), inst.p(), [&](std::uint32_t mask) {
    const auto c = centers_of(mask);
    if (respects(inst, r, c)) best = std::min(best, ppc::evaluate(inst, c));
  });
  return best;
}

}  // namespace oracle
