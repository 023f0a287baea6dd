#include "mixer/trajectory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mixer/words.hpp"

namespace mixer {

std::int64_t TrajectoryRecord::visit_count(Site z) const {
  for (std::size_t i = 0; i < probe_sites.size(); ++i) {
    if (probe_sites[i] == z) return visit_counts[i];
  }
  throw std::invalid_argument("site " + std::to_string(z) +
                              " was not probed in this trajectory");
}

const std::vector<std::int64_t>& TrajectoryRecord::returns(Site z) const {
  for (std::size_t i = 0; i < probe_sites.size(); ++i) {
    if (probe_sites[i] == z) return return_times[i];
  }
  throw std::invalid_argument("site " + std::to_string(z) +
                              " was not probed in this trajectory");
}

namespace {

TrajectoryCheckpoint snapshot(const ChainState& chain) {
  const SitePermutation sigma = chain.permutation();
  TrajectoryCheckpoint cp;
  cp.t = chain.time();
  cp.position = chain.position();
  cp.x_sum = chain.displacement_total();
  if (displacement_sum(sigma) != cp.x_sum) {
    throw std::logic_error("incremental X_t diverged from recount at t=" +
                           std::to_string(cp.t));
  }
  cp.cover = covering_number(chain.position(), sigma);
  cp.d_lower = lower_bound(sigma);
  cp.d_upper = 2 * cp.cover + 5 * cp.x_sum;
  cp.min_position = chain.min_position();
  cp.max_position = chain.max_position();
  return cp;
}

}  // namespace

TrajectoryRecord run_trajectory(std::int64_t t_max,
                                const std::vector<Site>& probe_sites,
                                std::vector<std::int64_t> checkpoint_times,
                                std::uint64_t seed) {
  if (t_max < 0) throw std::invalid_argument("run_trajectory: t_max < 0");
  std::sort(checkpoint_times.begin(), checkpoint_times.end());
  checkpoint_times.erase(
      std::unique(checkpoint_times.begin(), checkpoint_times.end()),
      checkpoint_times.end());
  if (!checkpoint_times.empty() &&
      (checkpoint_times.front() < 0 || checkpoint_times.back() > t_max)) {
    throw std::invalid_argument("checkpoint times outside [0, t_max]");
  }

  ChainState chain(seed, probe_sites, /*record_visit_times=*/true);
  TrajectoryRecord record;
  record.probe_sites = probe_sites;

  auto next_checkpoint = checkpoint_times.begin();
  if (next_checkpoint != checkpoint_times.end() && *next_checkpoint == 0) {
    record.checkpoints.push_back(snapshot(chain));
    ++next_checkpoint;
  }
  for (std::int64_t t = 1; t <= t_max; ++t) {
    chain.step();
    if (next_checkpoint != checkpoint_times.end() && *next_checkpoint == t) {
      record.checkpoints.push_back(snapshot(chain));
      ++next_checkpoint;
    }
  }

  record.visit_counts.reserve(probe_sites.size());
  record.return_times.reserve(probe_sites.size());
  for (Site z : probe_sites) {
    record.visit_counts.push_back(chain.visit_count(z));
    record.return_times.push_back(chain.visit_times(z));
  }
  return record;
}

}  // namespace mixer
