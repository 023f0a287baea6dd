#pragma once

#include <cstdint>
#include <vector>

#include "mixer/chain.hpp"

namespace mixer {

// One sampled instant of a trajectory: walker position, total tile
// displacement X_t, the covering number from the walker's position, and
// the distance sandwich ceil(X_t/2) <= D_t <= 2 Cov + 5 X_t around it.
struct TrajectoryCheckpoint {
  std::int64_t t = 0;
  Site position = 0;
  std::uint64_t x_sum = 0;
  std::uint64_t cover = 0;
  std::uint64_t d_lower = 0;
  std::uint64_t d_upper = 0;
  Site min_position = 0;
  Site max_position = 0;
};

struct TrajectoryRecord {
  std::vector<TrajectoryCheckpoint> checkpoints;
  std::vector<Site> probe_sites;
  std::vector<std::int64_t> visit_counts;                // V_{t_max}(z)
  std::vector<std::vector<std::int64_t>> return_times;   // T_j(z), j >= 1

  std::int64_t visit_count(Site z) const;
  const std::vector<std::int64_t>& returns(Site z) const;
};

// Runs one chain for t_max steps, deterministic in the seed. Checkpoint
// times must be a subset of [0, t_max]; they are sorted and deduplicated.
// X_t is maintained incrementally and re-audited against a fresh
// displacement recount at every checkpoint.
TrajectoryRecord run_trajectory(std::int64_t t_max,
                                const std::vector<Site>& probe_sites,
                                std::vector<std::int64_t> checkpoint_times,
                                std::uint64_t seed);

}  // namespace mixer
