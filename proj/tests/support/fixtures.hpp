#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ppcenter/instance.hpp"

namespace fixtures {

inline std::vector<ppc::Point> trichotomy_points() {
  return {{21, 39}, {37, 16}, {19, 26}, {71, 26}, {25, 59},
          {85, 39}, {88, 59}, {82, 59}, {15, 86}, {41, 26}};
}

inline std::vector<double> trichotomy_q(int which) {
  switch (which) {
    case 1: return {0.06, 0.05, 0.07, 0.02, 0.1, 0.11, 0.18, 0.09, 0.01, 0.16};
    case 2: return {0.45, 0.56, 0.51, 0.46, 0.41, 0.54, 0.59, 0.43, 0.44, 0.52};
    default: return {0.89, 0.84, 0.82, 0.81, 0.83, 0.88, 0.83, 0.96, 0.94, 0.92};
  }
}

// p = 3, K = n - p.
inline ppc::Instance trichotomy(int which) {
  return ppc::from_coordinates(trichotomy_points(), trichotomy_q(which), 3, 7);
}

inline std::vector<ppc::Point> cac_points() {
  return {{81, 65}, {71, 63}, {32, 62}, {22, 72}, {70, 21},
          {44, 34}, {17, 10}, {25, 36}, {90, 37}, {23, 48}};
}

inline std::vector<double> cac_q() {
  return {0.97, 0.12, 0.63, 0.27, 0.9, 0.15, 0.24, 0.26, 0.33, 0.17};
}

// Ten sites, p = 3, K = 3. CAC optimum {1,5,10}; free-assignment optimum
// {3,7,9}. Indices below are 0-based.
inline ppc::Instance cac_example(int K = 3) {
  return ppc::from_coordinates(cac_points(), cac_q(), 3, K);
}

// Five sites on a line at 0, 1, 2, 3, 10; q = 0.5, p = 2, K = 3.
inline ppc::Instance toy5(std::vector<double> q = {0.5, 0.5, 0.5, 0.5, 0.5}) {
  const std::vector<double> x{0, 1, 2, 3, 10};
  std::vector<double> d(25);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) d[i * 5 + j] = std::fabs(x[i] - x[j]);
  }
  return ppc::Instance(2, 3, d, q);
}

struct RandomSpec {
  int nMin = 5;
  int nMax = 10;
  bool homogeneous = false;
  bool grid = true;  // integer coordinates in [0, gridSize]
  int gridSize = 20;
  bool asymmetric = false;
  bool fullWindow = false;  // K = n - p
};

// Random Euclidean (or perturbed asymmetric) instance with distinct sites.
inline ppc::Instance random_instance(std::uint64_t seed, const RandomSpec& spec = {}) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const int n = uni(spec.nMin, spec.nMax);
  const int p = uni(2, std::max(2, n / 2));
  const int K = spec.fullWindow ? n - p : uni(1, n - p);
  std::vector<ppc::Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    ppc::Point pt = spec.grid ? ppc::Point{double(uni(0, spec.gridSize)), double(uni(0, spec.gridSize))}
                              : ppc::Point{uni(0, 1000000) / 1000.0, uni(0, 1000000) / 1000.0};
    bool dup = false;
    for (const auto& o : pts) dup = dup || (o.x == pt.x && o.y == pt.y);
    if (!dup) pts.push_back(pt);
  }
  std::vector<double> q(n);
  const double common = uni(1, 100) / 100.0;
  for (auto& v : q) v = spec.homogeneous ? common : uni(1, 100) / 100.0;
  if (!spec.asymmetric) return ppc::from_coordinates(pts, q, p, K);
  std::vector<double> d(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) d[i * n + j] = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) + uni(0, 5);
    }
  }
  return ppc::Instance(p, K, d, q);
}

}  // namespace fixtures
