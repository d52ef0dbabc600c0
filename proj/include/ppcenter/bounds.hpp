#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ppcenter/exact.hpp"
#include "ppcenter/instance.hpp"

namespace ppc {

// kappa[t] for t = 0..n: product of (1 - q) over the n-t smallest q.
// kappa[n] = 1 and kappa is nondecreasing in t.
std::vector<double> kappa(const Instance& inst);

// Weights of the two surrogate objectives, indexed by position t = 0..n
// (entries outside the window are unused). upper: kappa^t; lower:
// q_(n-t+1) kappa^t with q sorted ascending.
std::vector<double> lower_weights(const Instance& inst);

// Surrogate objectives of one center set under closest assignment.
// upper: sum over t in T of kappa^t q_(t) d_(t) (q of the site at position t)
// lower: sum over t in T of lower_weights[t] d_(t)
double upper_surrogate(const Instance& inst, std::span<const int> centers);
double lower_surrogate(const Instance& inst, std::span<const int> centers);

struct PositionalBounds {
  std::map<int, double> Ud;  // strict upper bound on the distance at position t
  std::map<int, double> Ld;  // lower bound on the distance at position t
};

// Entries for t in T and t = n-K; a missing key means no level qualified.
PositionalBounds positional_bounds(const Instance& inst, const EnumerationOptions& opts = {});
PositionalBounds positional_bounds(const Instance& inst, const PositionalCounts& counts);

// Optimal (p+t)-center value; a lower bound on the distance at position n-t+1.
double z_plus(const Instance& inst, int t, const EnumerationOptions& opts = {});

// q_min times the optimal p-center value.
double d_tilde_star(const Instance& inst, const EnumerationOptions& opts = {});

struct BoundsReport {
  double ubPcp = 0.0;
  std::vector<int> pcpCenters;
  double ub1 = 0.0;
  double lb1 = 0.0;
  std::optional<double> vnsUb;
  std::map<int, double> Ud;
  std::map<int, double> Ld;
  std::map<int, double> zPlus;  // t = 1..K
  double dTildeStar = 0.0;
};

// Everything except vnsUb, which the caller fills from the VNS.
BoundsReport compute_bounds(const Instance& inst, const EnumerationOptions& opts = {});

double ub1(const Instance& inst, const EnumerationOptions& opts = {});
double lb1(const Instance& inst, const EnumerationOptions& opts = {});

}  // namespace ppc
