#pragma once

// Brute-force reference computations. They share no code with the library
// beyond the Instance accessors.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <tuple>
#include <vector>

#include "ppcenter/instance.hpp"

namespace oracle {

using Key = std::tuple<double, double, int, int>;

inline Key key(const ppc::Instance& inst, int i, int j) { return {inst.d(i, j), -inst.q(i), i, j}; }

// Truncated expected maximum by direct counting: every site multiplies the
// no-demand probabilities of all sites ranked above it.
inline double value(const ppc::Instance& inst, const std::vector<int>& assign) {
  const int n = inst.n();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const Key ki = key(inst, i, assign[i]);
    int below = 0;
    double survive = 1.0;
    for (int k = 0; k < n; ++k) {
      const Key kk = key(inst, k, assign[k]);
      if (kk < ki) ++below;
      if (ki < kk) survive *= 1.0 - inst.q(k);
    }
    if (below >= n - inst.K()) total += inst.q(i) * inst.d(i, assign[i]) * survive;
  }
  return total;
}

inline std::vector<int> closest(const ppc::Instance& inst, std::uint32_t mask) {
  std::vector<int> assign(inst.n(), -1);
  for (int i = 0; i < inst.n(); ++i) {
    for (int j = 0; j < inst.n(); ++j) {
      if (!(mask >> j & 1u)) continue;
      if (assign[i] < 0 || inst.d(i, j) < inst.d(i, assign[i])) assign[i] = j;
    }
  }
  return assign;
}

inline std::vector<int> centers_of(std::uint32_t mask) {
  std::vector<int> c;
  for (int j = 0; j < 32; ++j) {
    if (mask >> j & 1u) c.push_back(j);
  }
  return c;
}

template <class F>
void for_each_subset(int n, int k, F f) {
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) == k) f(mask);
  }
}

struct Best {
  double value = std::numeric_limits<double>::infinity();
  std::vector<int> centers;
};

inline Best best_cac(const ppc::Instance& inst) {
  Best b;
  for_each_subset(inst.n(), inst.p(), [&](std::uint32_t mask) {
    const double v = value(inst, closest(inst, mask));
    if (v < b.value) b = {v, centers_of(mask)};
  });
  return b;
}

inline std::vector<double> closest_distances(const ppc::Instance& inst, std::uint32_t mask) {
  std::vector<double> d;
  const auto a = closest(inst, mask);
  for (int i = 0; i < inst.n(); ++i) d.push_back(inst.d(i, a[i]));
  std::sort(d.begin(), d.end());
  return d;
}

// k largest closest distances summed; k = 1 gives p-center, k = n p-median.
inline Best best_centrum(const ppc::Instance& inst, int centers, int k) {
  Best b;
  for_each_subset(inst.n(), centers, [&](std::uint32_t mask) {
    const auto d = closest_distances(inst, mask);
    double v = 0.0;
    for (int t = inst.n() - k; t < inst.n(); ++t) v += d[t];
    if (v < b.value) b = {v, centers_of(mask)};
  });
  return b;
}

inline std::vector<double> floyd_warshall(const ppc::OrlibGraph& g) {
  const int n = g.n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(static_cast<std::size_t>(n) * n, inf);
  for (int i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : g.edges) {
    const int u = e.u - 1, v = e.v - 1;
    d[u * n + v] = std::min(d[u * n + v], double(e.w));
    d[v * n + u] = std::min(d[v * n + u], double(e.w));
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
    }
  }
  return d;
}

}  // namespace oracle
