#include "ppcenter/vns.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

#include "ppcenter/combinations.hpp"
#include "ppcenter/evaluation.hpp"

namespace ppc {

namespace {

bool contains(const std::vector<int>& sorted, int v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

double objective_of(const Instance& inst, const std::vector<int>& assign) {
  thread_local std::vector<int> order;
  sort_positions(inst, assign, order);
  return ordered_objective(inst, order, assign);
}

void refresh_site(const Instance& inst, VnsState& s, int i) {
  int best = -1, second = -1;
  for (int c : s.xCur) {
    if (best < 0 || prefers(inst, i, c, best)) {
      second = best;
      best = c;
    } else if (second < 0 || prefers(inst, i, c, second)) {
      second = c;
    }
  }
  s.d1[i] = best;
  s.d2[i] = second;
  s.dCur[i] = inst.d(i, best);
}

}  // namespace

VnsState vns_state(const Instance& inst, std::vector<int> centers) {
  std::sort(centers.begin(), centers.end());
  if (static_cast<int>(centers.size()) != inst.p() ||
      std::adjacent_find(centers.begin(), centers.end()) != centers.end() ||
      centers.front() < 0 || centers.back() >= inst.n()) {
    throw std::invalid_argument("VNS state needs p distinct sites");
  }
  VnsState s;
  s.xCur = std::move(centers);
  s.d1.resize(inst.n());
  s.d2.resize(inst.n());
  s.dCur.resize(inst.n());
  for (int i = 0; i < inst.n(); ++i) refresh_site(inst, s, i);
  s.fCur = objective_of(inst, s.d1);
  return s;
}

VnsState vns_init(const Instance& inst, Rng& rng) {
  // Partial Fisher-Yates over 0..n-1.
  std::vector<int> sites(inst.n());
  for (int i = 0; i < inst.n(); ++i) sites[i] = i;
  for (int k = 0; k < inst.p(); ++k) {
    const int r = k + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(inst.n() - k)));
    std::swap(sites[k], sites[r]);
  }
  sites.resize(inst.p());
  return vns_state(inst, std::move(sites));
}

VnsState vns_init(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  return vns_init(inst, rng);
}

Move modified_move(const Instance& inst, const VnsState& state, int jIn) {
  if (jIn < 0 || jIn >= inst.n()) throw std::invalid_argument("site out of range");
  if (contains(state.xCur, jIn)) {
    throw std::invalid_argument("site " + std::to_string(jIn + 1) + " is already a center");
  }
  const int n = inst.n();
  std::vector<int> assign(n);
  Move best{-1, 0.0};
  for (int jOut : state.xCur) {
    for (int i = 0; i < n; ++i) {
      const int keep = state.d1[i] == jOut ? state.d2[i] : state.d1[i];
      assign[i] = prefers(inst, i, jIn, keep) ? jIn : keep;
    }
    const double v = objective_of(inst, assign);
    if (best.jOut < 0 || v < best.value) best = {jOut, v};
  }
  return best;
}

void modified_update(const Instance& inst, VnsState& state, int jIn, int jOut) {
  if (!contains(state.xCur, jOut) || contains(state.xCur, jIn)) {
    throw std::invalid_argument("invalid swap");
  }
  *std::find(state.xCur.begin(), state.xCur.end(), jOut) = jIn;
  std::sort(state.xCur.begin(), state.xCur.end());
  for (int i = 0; i < inst.n(); ++i) {
    if (state.d1[i] == jOut || state.d2[i] == jOut) {
      refresh_site(inst, state, i);
    } else if (prefers(inst, i, jIn, state.d1[i])) {
      state.d2[i] = state.d1[i];
      state.d1[i] = jIn;
      state.dCur[i] = inst.d(i, jIn);
    } else if (prefers(inst, i, jIn, state.d2[i])) {
      state.d2[i] = jIn;
    }
  }
  state.fCur = objective_of(inst, state.d1);
}

bool modified_fast_interchange(const Instance& inst, VnsState& state) {
  bool improved = false;
  while (true) {
    int bestIn = -1;
    Move bestMove{-1, state.fCur};
    for (int jIn = 0; jIn < inst.n(); ++jIn) {
      if (contains(state.xCur, jIn)) continue;
      const Move m = modified_move(inst, state, jIn);
      if (m.value < bestMove.value) {
        bestMove = m;
        bestIn = jIn;
      }
    }
    if (bestIn < 0) return improved;
    modified_update(inst, state, bestIn, bestMove.jOut);
    improved = true;
  }
}

void shake(const Instance& inst, VnsState& state, int k, Rng& rng) {
  const int outside = inst.n() - inst.p();
  for (int step = 0; step < k; ++step) {
    int pick = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(outside)));
    int jIn = 0;
    for (int i = 0; i < inst.n(); ++i) {
      if (contains(state.xCur, i)) continue;
      if (pick-- == 0) {
        jIn = i;
        break;
      }
    }
    const Move m = modified_move(inst, state, jIn);
    modified_update(inst, state, jIn, m.jOut);
  }
}

namespace {

VnsResult single_run(const Instance& inst, std::uint64_t seed) {
  Rng rng(seed);
  VnsState incumbent = vns_init(inst, rng);
  incumbent.k = 1;
  while (incumbent.k < inst.p()) {
    VnsState trial = incumbent;
    shake(inst, trial, incumbent.k, rng);
    modified_fast_interchange(inst, trial);
    if (trial.fCur < incumbent.fCur) {
      incumbent = std::move(trial);
      incumbent.k = 1;
    } else {
      ++incumbent.k;
    }
  }
  return {incumbent.fCur, incumbent.xCur};
}

}  // namespace

VnsResult vns_run(const Instance& inst, std::uint64_t seed, int restarts, int workers) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  std::vector<VnsResult> runs(restarts);
  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, restarts);
  if (workers <= 1) {
    for (int r = 0; r < restarts; ++r) runs[r] = single_run(inst, derive_seed(seed, r));
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < restarts; r = next.fetch_add(1)) {
          runs[r] = single_run(inst, derive_seed(seed, static_cast<std::uint64_t>(r)));
        }
      });
    }
    for (auto& t : pool) t.join();
  }
  VnsResult best = runs[0];
  for (int r = 1; r < restarts; ++r) {
    if (runs[r].bestValue < best.bestValue) best = runs[r];
  }
  return best;
}

}  // namespace ppc
