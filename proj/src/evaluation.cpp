#include "ppcenter/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "ppcenter/combinations.hpp"
#include "ppcenter/rng.hpp"

namespace ppc {

namespace {

std::vector<int> checked_centers(const Instance& inst, std::span<const int> centers) {
  if (static_cast<int>(centers.size()) != inst.p()) {
    throw std::invalid_argument("expected " + std::to_string(inst.p()) + " centers, got " +
                                std::to_string(centers.size()));
  }
  std::vector<int> sorted(centers.begin(), centers.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted[k] < 0 || sorted[k] >= inst.n()) {
      throw std::invalid_argument("center " + std::to_string(sorted[k] + 1) + " out of range");
    }
    if (k > 0 && sorted[k] == sorted[k - 1]) {
      throw std::invalid_argument("duplicate center " + std::to_string(sorted[k] + 1));
    }
  }
  return sorted;
}

}  // namespace

void sort_positions(const Instance& inst, std::span<const int> assign, std::vector<int>& order) {
  order.resize(inst.n());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return order_key(inst, a, assign[a]) < order_key(inst, b, assign[b]);
  });
}

double ordered_objective(const Instance& inst, std::span<const int> order,
                         std::span<const int> assign) {
  const int n = inst.n();
  double value = 0.0;
  double survive = 1.0;
  for (int pos = n - 1; pos >= n - inst.K(); --pos) {
    const int i = order[pos];
    value += inst.q(i) * inst.d(i, assign[i]) * survive;
    survive *= 1.0 - inst.q(i);
  }
  return value;
}

Solution closest_assignment(const Instance& inst, std::span<const int> centers) {
  Solution sol;
  sol.centers = checked_centers(inst, centers);
  sol.assign.resize(inst.n());
  for (int i = 0; i < inst.n(); ++i) {
    int best = sol.centers.front();
    for (int c : sol.centers) {
      if (prefers(inst, i, c, best)) best = c;
    }
    sol.assign[i] = best;
  }
  sort_positions(inst, sol.assign, sol.sortedOrder);
  return sol;
}

Solution make_solution(const Instance& inst, std::span<const int> centers,
                       std::span<const int> assign) {
  Solution sol;
  sol.centers = checked_centers(inst, centers);
  if (static_cast<int>(assign.size()) != inst.n()) {
    throw std::invalid_argument("assignment must cover every site");
  }
  std::vector<char> open(inst.n(), 0);
  for (int c : sol.centers) open[c] = 1;
  for (int i = 0; i < inst.n(); ++i) {
    const int c = assign[i];
    if (c < 0 || c >= inst.n() || !open[c]) {
      throw std::invalid_argument("site " + std::to_string(i + 1) +
                                  " assigned to non-center " + std::to_string(c + 1));
    }
    if (open[i] && c != i) {
      throw std::invalid_argument("center " + std::to_string(i + 1) + " must serve itself");
    }
  }
  sol.assign.assign(assign.begin(), assign.end());
  sort_positions(inst, sol.assign, sol.sortedOrder);
  return sol;
}

std::vector<PiRow> pi_matrix(const Instance& inst, const Solution& sol) {
  std::vector<PiRow> rows(inst.n());
  double survive = 1.0;
  for (int pos = inst.n() - 1; pos >= 0; --pos) {
    const int i = sol.sortedOrder[pos];
    rows[i] = {sol.assign[i], survive};
    survive *= 1.0 - inst.q(i);
  }
  return rows;
}

double evaluate(const Instance& inst, std::span<const int> centers) {
  const Solution sol = closest_assignment(inst, centers);
  return ordered_objective(inst, sol.sortedOrder, sol.assign);
}

double evaluate_assignment(const Instance& inst, std::span<const int> centers,
                           std::span<const int> assign) {
  const Solution sol = make_solution(inst, centers, assign);
  return ordered_objective(inst, sol.sortedOrder, sol.assign);
}

double evaluate_homogeneous(const Instance& inst, std::span<const int> centers) {
  if (!inst.homogeneous()) throw std::invalid_argument("probabilities are not homogeneous");
  const Solution sol = closest_assignment(inst, centers);
  const int n = inst.n();
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = inst.d(i, sol.assign[i]);
  std::sort(sorted.begin(), sorted.end());
  const double q = inst.q(0);
  double value = 0.0;
  for (int k = n - inst.K() + 1; k <= n; ++k) {
    value += q * std::pow(1.0 - q, n - k) * sorted[k - 1];
  }
  return value;
}

SimulationResult simulate(const Instance& inst, std::span<const int> centers,
                          std::int64_t samples, std::uint64_t seed, int workers) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  const Solution sol = closest_assignment(inst, centers);
  const int n = inst.n();
  const int firstTop = n - inst.K();  // 0-based position of the first slot in T
  std::vector<double> q(n), dist(n);
  for (int pos = 0; pos < n; ++pos) {
    const int i = sol.sortedOrder[pos];
    q[pos] = inst.q(i);
    dist[pos] = inst.d(i, sol.assign[i]);
  }

  constexpr std::int64_t kChunk = 1 << 16;
  const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
  struct Partial {
    double sum = 0.0;
    double sumSq = 0.0;
  };
  std::vector<Partial> partial(chunks);

  auto run_chunk = [&](std::int64_t c) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(c)));
    const std::int64_t count = std::min(kChunk, samples - c * kChunk);
    Partial acc;
    for (std::int64_t s = 0; s < count; ++s) {
      // Scan positions from the top; the first demanding site is the maximum.
      double cost = 0.0;
      for (int pos = n - 1; pos >= 0; --pos) {
        if (uniform_unit(rng) < q[pos]) {
          if (pos >= firstTop) cost = dist[pos];
          break;
        }
      }
      acc.sum += cost;
      acc.sumSq += cost * cost;
    }
    partial[c] = acc;
  };

  if (workers <= 0) workers = default_workers();
  workers = static_cast<int>(std::min<std::int64_t>(workers, chunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (auto c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  double sum = 0.0, sumSq = 0.0;
  for (const auto& pt : partial) {
    sum += pt.sum;
    sumSq += pt.sumSq;
  }
  const double N = static_cast<double>(samples);
  const double mean = sum / N;
  const double var = samples > 1 ? std::max(0.0, (sumSq - N * mean * mean) / (N - 1.0)) : 0.0;
  return {mean, std::sqrt(var / N)};
}

double scenario_expectation(const Instance& inst, std::span<const int> centers) {
  const int n = inst.n();
  if (n > 22) throw std::invalid_argument("scenario enumeration limited to n <= 22");
  const Solution sol = closest_assignment(inst, centers);
  std::vector<OrderKey> key(n);
  for (int i = 0; i < n; ++i) key[i] = order_key(inst, i, sol.assign[i]);
  // Rank of each site's assignment by direct counting (independent of sorting).
  std::vector<int> rank(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (key[j] < key[i]) ++rank[i];
    }
  }
  const int firstTop = n - inst.K();
  double expectation = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    double prob = 1.0;
    int top = -1;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        prob *= inst.q(i);
        if (top < 0 || key[top] < key[i]) top = i;
      } else {
        prob *= 1.0 - inst.q(i);
      }
    }
    if (top >= 0 && rank[top] >= firstTop) expectation += prob * key[top].distance;
  }
  return expectation;
}

}  // namespace ppc
