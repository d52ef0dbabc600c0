#include "ppcenter/bounds.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "ppcenter/combinations.hpp"
#include "ppcenter/errors.hpp"
#include "ppcenter/evaluation.hpp"

namespace ppc {

namespace {

std::vector<double> ascending_q(const Instance& inst) {
  std::vector<double> q(inst.probabilities().begin(), inst.probabilities().end());
  std::sort(q.begin(), q.end());
  return q;
}

double weighted_window(const Instance& inst, const Solution& sol, std::span<const double> weight,
                       bool timesQ) {
  double value = 0.0;
  for (int t = inst.first_position(); t <= inst.n(); ++t) {
    const int i = sol.sortedOrder[t - 1];
    const double d = inst.d(i, sol.assign[i]);
    value += weight[t] * (timesQ ? inst.q(i) : 1.0) * d;
  }
  return value;
}

struct SurrogatePair {
  double upper = std::numeric_limits<double>::infinity();
  double lower = std::numeric_limits<double>::infinity();
};

SurrogatePair minimize_surrogates(const Instance& inst, const EnumerationOptions& opts) {
  if (binomial(inst.n(), inst.p()) > opts.budget) {
    throw BudgetExceeded("surrogate bounds need " + std::to_string(binomial(inst.n(), inst.p())) +
                         " evaluations, budget is " + std::to_string(opts.budget));
  }
  const std::vector<double> kap = kappa(inst);
  const std::vector<double> low = lower_weights(inst);
  return reduce_subsets(
      inst.n(), inst.p(), opts.workers, SurrogatePair{},
      [&](SurrogatePair& acc, std::span<const int> subset) {
        const Solution sol = closest_assignment(inst, subset);
        acc.upper = std::min(acc.upper, weighted_window(inst, sol, kap, true));
        acc.lower = std::min(acc.lower, weighted_window(inst, sol, low, false));
      },
      [](SurrogatePair& into, SurrogatePair&& later) {
        into.upper = std::min(into.upper, later.upper);
        into.lower = std::min(into.lower, later.lower);
      });
}

}  // namespace

std::vector<double> kappa(const Instance& inst) {
  const int n = inst.n();
  const std::vector<double> q = ascending_q(inst);
  std::vector<double> k(n + 1, 1.0);
  // kappa[t] = prod_{k=1}^{n-t} (1 - q_(k))
  double prod = 1.0;
  for (int count = 1; count <= n; ++count) {
    prod *= 1.0 - q[count - 1];
    k[n - count] = prod;
  }
  return k;
}

std::vector<double> lower_weights(const Instance& inst) {
  const int n = inst.n();
  const std::vector<double> q = ascending_q(inst);
  const std::vector<double> k = kappa(inst);
  std::vector<double> w(n + 1, 0.0);
  for (int t = 1; t <= n; ++t) w[t] = q[n - t] * k[t];
  return w;
}

double upper_surrogate(const Instance& inst, std::span<const int> centers) {
  return weighted_window(inst, closest_assignment(inst, centers), kappa(inst), true);
}

double lower_surrogate(const Instance& inst, std::span<const int> centers) {
  return weighted_window(inst, closest_assignment(inst, centers), lower_weights(inst), false);
}

PositionalBounds positional_bounds(const Instance& inst, const PositionalCounts& counts) {
  const int n = inst.n();
  const int G = static_cast<int>(counts.levels.size());
  PositionalBounds out;
  for (int t = n - inst.K(); t <= n; ++t) {
    for (int h = 1; h <= G; ++h) {
      if (counts.upper[h] < n - t) {
        out.Ud[t] = counts.levels[h - 1];
        break;
      }
    }
    for (int h = G; h >= 1; --h) {
      if (counts.lower[h] < t - 1) {
        out.Ld[t] = counts.levels[h - 1];
        break;
      }
    }
  }
  return out;
}

PositionalBounds positional_bounds(const Instance& inst, const EnumerationOptions& opts) {
  return positional_bounds(inst, positional_counts(inst, opts));
}

double z_plus(const Instance& inst, int t, const EnumerationOptions& opts) {
  if (t < 1 || inst.p() + t > inst.n()) {
    throw std::invalid_argument("z_plus needs 1 <= t and p + t <= n");
  }
  return solve_pcp(inst, inst.p() + t, opts).value;
}

double d_tilde_star(const Instance& inst, const EnumerationOptions& opts) {
  const auto q = inst.probabilities();
  return *std::min_element(q.begin(), q.end()) * solve_pcp(inst, inst.p(), opts).value;
}

BoundsReport compute_bounds(const Instance& inst, const EnumerationOptions& opts) {
  BoundsReport r;
  const CenterSolution pcp = solve_pcp(inst, inst.p(), opts);
  r.ubPcp = pcp.value;
  r.pcpCenters = pcp.centers;
  const SurrogatePair s = minimize_surrogates(inst, opts);
  r.ub1 = s.upper;
  r.lb1 = s.lower;
  const PositionalBounds pb = positional_bounds(inst, opts);
  r.Ud = pb.Ud;
  r.Ld = pb.Ld;
  for (int t = 1; t <= inst.K(); ++t) r.zPlus[t] = z_plus(inst, t, opts);
  const auto q = inst.probabilities();
  r.dTildeStar = *std::min_element(q.begin(), q.end()) * pcp.value;
  return r;
}

double ub1(const Instance& inst, const EnumerationOptions& opts) {
  return minimize_surrogates(inst, opts).upper;
}

double lb1(const Instance& inst, const EnumerationOptions& opts) {
  return minimize_surrogates(inst, opts).lower;
}

}  // namespace ppc
