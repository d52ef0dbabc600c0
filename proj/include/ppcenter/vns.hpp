#pragma once

#include <cstdint>
#include <vector>

#include "ppcenter/instance.hpp"
#include "ppcenter/rng.hpp"

namespace ppc {

struct VnsState {
  std::vector<int> xCur;     // ascending center indices
  std::vector<int> d1;       // site -> closest open center
  std::vector<int> d2;       // site -> second-closest open center (-1 when p = 1)
  std::vector<double> dCur;  // site -> distance to d1
  double fCur = 0.0;
  int k = 1;
};

// State for a given center set.
VnsState vns_state(const Instance& inst, std::vector<int> centers);

// Uniformly random p-subset drawn from `rng`.
VnsState vns_init(const Instance& inst, Rng& rng);
VnsState vns_init(const Instance& inst, std::uint64_t seed);

struct Move {
  int jOut;
  double value;
};

// Best center to drop when jIn enters. Ties go to the smallest jOut.
Move modified_move(const Instance& inst, const VnsState& state, int jIn);

// Applies the swap, refreshing d1, d2, dCur and fCur.
void modified_update(const Instance& inst, VnsState& state, int jIn, int jOut);

// Best-improvement swaps until no swap strictly improves fCur.
bool modified_fast_interchange(const Instance& inst, VnsState& state);

// k random insertions, each followed by the best removal.
void shake(const Instance& inst, VnsState& state, int k, Rng& rng);

struct VnsResult {
  double bestValue = 0.0;
  std::vector<int> bestCenters;
};

// Restarts use seeds derived from `seed` and run in parallel; the result is
// independent of `workers`.
VnsResult vns_run(const Instance& inst, std::uint64_t seed, int restarts = 5, int workers = 0);

}  // namespace ppc
