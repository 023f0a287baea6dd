#include "mixer/walks.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mixer {

std::vector<Site> lazy_walk(std::int64_t t_max, std::uint64_t seed) {
  if (t_max < 0) throw std::invalid_argument("lazy_walk: t_max < 0");
  SplitMix64 rng(seed);
  std::vector<Site> w;
  w.reserve(static_cast<std::size_t>(t_max) + 1);
  Site value = 0;
  w.push_back(value);
  for (std::int64_t t = 1; t <= t_max; ++t) {
    // Top two bits: 0 -> +1, 1 -> -1, 2 or 3 -> hold. Exact quarters.
    switch (rng.next() >> 62) {
      case 0: ++value; break;
      case 1: --value; break;
      default: break;
    }
    w.push_back(value);
  }
  return w;
}

std::int64_t SimpleWalkRecord::local_time(std::size_t checkpoint, Site z) const {
  for (std::size_t i = 0; i < probe_sites.size(); ++i) {
    if (probe_sites[i] == z) return checkpoints.at(checkpoint).local_times[i];
  }
  throw std::invalid_argument("site " + std::to_string(z) +
                              " was not probed in this walk");
}

SimpleWalkRecord simple_walk_local_times(std::int64_t t_max,
                                         const std::vector<Site>& probe_sites,
                                         std::vector<std::int64_t> checkpoint_times,
                                         std::uint64_t seed) {
  if (t_max < 0) throw std::invalid_argument("simple_walk: t_max < 0");
  std::sort(checkpoint_times.begin(), checkpoint_times.end());
  checkpoint_times.erase(
      std::unique(checkpoint_times.begin(), checkpoint_times.end()),
      checkpoint_times.end());
  if (!checkpoint_times.empty() &&
      (checkpoint_times.front() < 0 || checkpoint_times.back() > t_max)) {
    throw std::invalid_argument("checkpoint times outside [0, t_max]");
  }

  SplitMix64 rng(seed);
  SimpleWalkRecord record;
  record.probe_sites = probe_sites;
  std::vector<std::int64_t> counters(probe_sites.size(), 0);
  Site value = 0;
  auto count_visit = [&](Site x) {
    for (std::size_t i = 0; i < probe_sites.size(); ++i) {
      if (probe_sites[i] == x) {
        ++counters[i];
        break;
      }
    }
  };
  count_visit(0);  // j = 0 counts

  auto next_checkpoint = checkpoint_times.begin();
  auto take = [&](std::int64_t t) {
    if (next_checkpoint != checkpoint_times.end() && *next_checkpoint == t) {
      record.checkpoints.push_back({t, value, counters});
      ++next_checkpoint;
    }
  };
  take(0);
  for (std::int64_t t = 1; t <= t_max; ++t) {
    value += (rng.next() >> 63) ? -1 : +1;
    count_visit(value);
    take(t);
  }
  return record;
}

std::vector<ReturnSample> return_time_samples(Site z, std::int64_t n_samples,
                                              std::uint64_t seed,
                                              std::int64_t step_cap) {
  if (n_samples < 1) throw std::invalid_argument("return_time_samples: need n >= 1");
  if (step_cap < 1) throw std::invalid_argument("return_time_samples: step cap < 1");
  std::vector<ReturnSample> samples;
  samples.reserve(static_cast<std::size_t>(n_samples));
  for (std::int64_t i = 0; i < n_samples; ++i) {
    SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
    Site walker = 0;
    Site tile = z;  // sigma_t(z)
    ReturnSample sample;
    sample.censored = true;
    sample.time = step_cap;
    for (std::int64_t t = 1; t <= step_cap; ++t) {
      // Same generator encoding as ChainState::step: 0 M+, 1 M-, 2 S+, 3 S-.
      switch (rng.next() >> 62) {
        case 0: ++walker; break;
        case 1: --walker; break;
        case 2:
          if (tile == walker) tile = walker + 1;
          else if (tile == walker + 1) tile = walker;
          break;
        default:
          if (tile == walker) tile = walker - 1;
          else if (tile == walker - 1) tile = walker;
          break;
      }
      if (walker == tile) {
        sample.time = t;
        sample.displacement = static_cast<int>(tile - z);
        sample.censored = false;
        break;
      }
    }
    samples.push_back(sample);
  }
  return samples;
}

}  // namespace mixer
