#pragma once

#include <cstdint>
#include <vector>

#include "mixer/rng.hpp"
#include "mixer/sites.hpp"

namespace mixer {

// Lazy random walk on Z: stays put with probability 1/2, steps +-1 with
// probability 1/4 each. Returns W_0..W_{t_max}.
std::vector<Site> lazy_walk(std::int64_t t_max, std::uint64_t seed);

struct LocalTimeCheckpoint {
  std::int64_t t = 0;
  Site value = 0;                         // S'_t
  std::vector<std::int64_t> local_times;  // L_t(z), aligned with probe_sites
};

struct SimpleWalkRecord {
  std::vector<Site> probe_sites;
  std::vector<LocalTimeCheckpoint> checkpoints;

  std::int64_t local_time(std::size_t checkpoint, Site z) const;
};

// Simple random walk on Z (+-1 with probability 1/2 each) with exact local
// time counters L_t(z) = #{0 <= j <= t : S'_j = z} for the probe sites,
// sampled at the requested checkpoint times.
SimpleWalkRecord simple_walk_local_times(std::int64_t t_max,
                                         const std::vector<Site>& probe_sites,
                                         std::vector<std::int64_t> checkpoint_times,
                                         std::uint64_t seed);

struct ReturnSample {
  std::int64_t time = 0;    // T_1(z), or the step cap if censored
  int displacement = 0;     // sigma_T(z) - z; meaningless when censored
  bool censored = false;
};

// Runs fresh chains until the walker first stands on tile z again
// (T_1(z) = inf{t >= 1 : S_t = sigma_t(z)}) and records the tile's
// displacement at that moment. Only the pair (S_t, sigma_t(z)) influences
// the outcome, so the simulation tracks exactly that pair; the transition
// law is the chain's own (one uniform generator draw per step). Samples
// exceeding step_cap are returned censored, never dropped.
std::vector<ReturnSample> return_time_samples(Site z, std::int64_t n_samples,
                                              std::uint64_t seed,
                                              std::int64_t step_cap = 10'000'000);

}  // namespace mixer
