#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace ppc {

// C(n, k), saturating at UINT64_MAX.
inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t num = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

// Saturating multiply.
inline std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

// Advances `c` (strictly increasing indices in [0, n)) to the next
// combination in lexicographic order. Returns false after the last one.
inline bool next_combination(std::span<int> c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

// Worker count: PPC_WORKERS if set and positive, else hardware concurrency.
inline int default_workers() {
  if (const char* env = std::getenv("PPC_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Visits every k-subset of {0..n-1}. Work is partitioned by the smallest
// element; each unit accumulates into its own Acc and the partial results
// are merged in unit order, so the outcome does not depend on `workers`.
//
//   visit(Acc&, std::span<const int> subset)
//   merge(Acc& into, Acc&& later)
template <class Acc, class Visit, class Merge>
Acc reduce_subsets(int n, int k, int workers, const Acc& init, Visit visit,
                   Merge merge) {
  if (k == 0) {
    Acc acc = init;
    visit(acc, std::span<const int>{});
    return acc;
  }
  const int units = n - k + 1;
  if (units <= 0) return init;
  std::vector<Acc> partial(units, init);

  auto run_unit = [&](int first) {
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), first);
    auto tail = std::span<int>(c).subspan(1);
    while (true) {
      visit(partial[first], std::span<const int>(c));
      if (!next_combination(tail, n)) break;
    }
  };

  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, units);
  if (workers <= 1) {
    for (int u = 0; u < units; ++u) run_unit(u);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int u = next.fetch_add(1); u < units; u = next.fetch_add(1)) {
          run_unit(u);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  Acc result = std::move(partial[0]);
  for (int u = 1; u < units; ++u) merge(result, std::move(partial[u]));
  return result;
}

}  // namespace ppc
