#include "ppcenter/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ppcenter/combinations.hpp"
#include "ppcenter/errors.hpp"
#include "ppcenter/evaluation.hpp"

namespace ppc {

namespace {

void check_budget(std::uint64_t needed, std::uint64_t budget, const char* what) {
  if (needed > budget) {
    throw BudgetExceeded(std::string(what) + " needs " + std::to_string(needed) +
                         " evaluations, budget is " + std::to_string(budget) +
                         "; use the VNS heuristic instead");
  }
}

void check_centers_wanted(const Instance& inst, int centersWanted) {
  if (centersWanted < 1 || centersWanted > inst.n()) {
    throw std::invalid_argument("centers wanted must be in [1, n]");
  }
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<int> centers;
  std::vector<int> assign;
  std::uint64_t explored = 0;
};

// Partial results arrive in lexicographic unit order; only strict
// improvements replace the incumbent.
void merge_best(Best& into, Best&& later) {
  into.explored += later.explored;
  if (later.value < into.value) {
    into.value = later.value;
    into.centers = std::move(later.centers);
    into.assign = std::move(later.assign);
  }
}

// Minimizes objective(sorted closest distances) over all k-subsets.
template <class Objective>
CenterSolution minimize_closest(const Instance& inst, int k, const EnumerationOptions& opts,
                                Objective objective) {
  const Best best = reduce_subsets(
      inst.n(), k, opts.workers, Best{},
      [&](Best& acc, std::span<const int> subset) {
        thread_local std::vector<double> dist;
        closest_distances(inst, subset, dist);
        std::sort(dist.begin(), dist.end());
        const double v = objective(dist);
        ++acc.explored;
        if (v < acc.value) {
          acc.value = v;
          acc.centers.assign(subset.begin(), subset.end());
        }
      },
      merge_best);
  return {best.value, best.centers};
}

}  // namespace

void closest_distances(const Instance& inst, std::span<const int> centers,
                       std::vector<double>& out) {
  const int n = inst.n();
  out.assign(n, std::numeric_limits<double>::infinity());
  for (int c : centers) {
    for (int i = 0; i < n; ++i) out[i] = std::min(out[i], inst.d(i, c));
  }
}

ExactResult solve_exact_cac(const Instance& inst, const EnumerationOptions& opts) {
  check_budget(binomial(inst.n(), inst.p()), opts.budget, "exact enumeration");
  Best best = reduce_subsets(
      inst.n(), inst.p(), opts.workers, Best{},
      [&](Best& acc, std::span<const int> subset) {
        const Solution sol = closest_assignment(inst, subset);
        const double v = ordered_objective(inst, sol.sortedOrder, sol.assign);
        ++acc.explored;
        if (v < acc.value) {
          acc.value = v;
          acc.centers = sol.centers;
          acc.assign = sol.assign;
        }
      },
      merge_best);
  return {best.centers, best.value, best.assign, best.explored};
}

ExactResult solve_exact_nocac(const Instance& inst, const EnumerationOptions& opts) {
  const int n = inst.n();
  const int p = inst.p();
  std::uint64_t perSubset = 1;
  for (int i = 0; i < n - p; ++i) perSubset = mul_sat(perSubset, static_cast<std::uint64_t>(p));
  check_budget(mul_sat(binomial(n, p), perSubset), opts.budget, "no-CAC enumeration");

  Best best = reduce_subsets(
      n, p, opts.workers, Best{},
      [&](Best& acc, std::span<const int> subset) {
        std::vector<char> open(n, 0);
        for (int c : subset) open[c] = 1;
        std::vector<int> free;
        for (int i = 0; i < n; ++i) {
          if (!open[i]) free.push_back(i);
        }
        std::vector<int> assign(n);
        for (int c : subset) assign[c] = c;
        std::vector<int> choice(free.size(), 0);  // odometer over centers
        std::vector<int> order;
        while (true) {
          for (std::size_t f = 0; f < free.size(); ++f) assign[free[f]] = subset[choice[f]];
          sort_positions(inst, assign, order);
          const double v = ordered_objective(inst, order, assign);
          ++acc.explored;
          if (v < acc.value) {
            acc.value = v;
            acc.centers.assign(subset.begin(), subset.end());
            acc.assign = assign;
          }
          // Rightmost digit fastest: lexicographic over assignment vectors.
          int f = static_cast<int>(free.size()) - 1;
          while (f >= 0 && choice[f] == p - 1) choice[f--] = 0;
          if (f < 0) break;
          ++choice[f];
        }
      },
      merge_best);
  return {best.centers, best.value, best.assign, best.explored};
}

CenterSolution solve_pcp(const Instance& inst, int centersWanted, const EnumerationOptions& opts) {
  check_centers_wanted(inst, centersWanted);
  check_budget(binomial(inst.n(), centersWanted), opts.budget, "p-center enumeration");
  return minimize_closest(inst, centersWanted, opts,
                          [](const std::vector<double>& d) { return d.back(); });
}

CenterSolution solve_pmedian(const Instance& inst, int centersWanted,
                             const EnumerationOptions& opts) {
  check_centers_wanted(inst, centersWanted);
  check_budget(binomial(inst.n(), centersWanted), opts.budget, "p-median enumeration");
  return minimize_closest(inst, centersWanted, opts, [](const std::vector<double>& d) {
    return std::accumulate(d.begin(), d.end(), 0.0);
  });
}

CenterSolution solve_kcentrum(const Instance& inst, int centersWanted, int k,
                              const EnumerationOptions& opts) {
  check_centers_wanted(inst, centersWanted);
  if (k < 1 || k > inst.n()) throw std::invalid_argument("k must be in [1, n]");
  check_budget(binomial(inst.n(), centersWanted), opts.budget, "k-centrum enumeration");
  return minimize_closest(inst, centersWanted, opts, [k](const std::vector<double>& d) {
    return std::accumulate(d.end() - k, d.end(), 0.0);
  });
}

std::vector<double> distinct_distances(const Instance& inst) {
  std::vector<double> levels(inst.distances().begin(), inst.distances().end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

PositionalCounts positional_counts(const Instance& inst, const EnumerationOptions& opts) {
  check_budget(binomial(inst.n(), inst.p()), opts.budget, "positional-bound enumeration");
  PositionalCounts out;
  out.levels = distinct_distances(inst);
  const int G = static_cast<int>(out.levels.size());
  struct Acc {
    std::vector<int> upper;
    std::vector<int> lower;
  };
  const Acc init{std::vector<int>(G + 1, 0), std::vector<int>(G + 1, 0)};
  Acc acc = reduce_subsets(
      inst.n(), inst.p(), opts.workers, init,
      [&](Acc& a, std::span<const int> subset) {
        thread_local std::vector<double> dist;
        closest_distances(inst, subset, dist);
        std::sort(dist.begin(), dist.end());
        const int n = inst.n();
        for (int h = 1; h <= G; ++h) {
          const double level = out.levels[h - 1];
          const int below = static_cast<int>(std::lower_bound(dist.begin(), dist.end(), level) - dist.begin());
          const int atMost = static_cast<int>(std::upper_bound(dist.begin(), dist.end(), level) - dist.begin());
          a.upper[h] = std::max(a.upper[h], n - below);
          a.lower[h] = std::max(a.lower[h], atMost);
        }
      },
      [](Acc& into, Acc&& later) {
        for (std::size_t h = 0; h < into.upper.size(); ++h) {
          into.upper[h] = std::max(into.upper[h], later.upper[h]);
          into.lower[h] = std::max(into.lower[h], later.lower[h]);
        }
      });
  out.upper = std::move(acc.upper);
  out.lower = std::move(acc.lower);
  return out;
}

namespace {
void check_level(const PositionalCounts& c, int h) {
  if (h < 1 || h > static_cast<int>(c.levels.size())) {
    throw std::invalid_argument("h = " + std::to_string(h) + " out of [1, " +
                                std::to_string(c.levels.size()) + "]");
  }
}
}  // namespace

int n_upper(const Instance& inst, int h, const EnumerationOptions& opts) {
  const auto counts = positional_counts(inst, opts);
  check_level(counts, h);
  return counts.upper[h];
}

int n_lower(const Instance& inst, int h, const EnumerationOptions& opts) {
  const auto counts = positional_counts(inst, opts);
  check_level(counts, h);
  return counts.lower[h];
}

}  // namespace ppc
