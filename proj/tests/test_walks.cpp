#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mixer/chain.hpp"
#include "mixer/stats.hpp"
#include "mixer/walks.hpp"

using namespace mixer;

TEST_CASE("lazy walk moments") {
  const std::int64_t t = 10'000;
  RunningStats endpoints;
  for (int i = 0; i < 4000; ++i) {
    const auto w = lazy_walk(t, stream_seed(51, i));
    REQUIRE(w.size() == static_cast<std::size_t>(t) + 1);
    endpoints.add(static_cast<double>(w.back()));
  }
  // E[W_t] = 0 within 3 standard errors; Var(W_t) = t/2 within 5%.
  CHECK(std::fabs(endpoints.mean()) <= 3.0 * endpoints.se());
  CHECK(endpoints.variance() ==
        doctest::Approx(static_cast<double>(t) / 2.0).epsilon(0.05));
}

TEST_CASE("doubled lazy walk matches the simple walk at even times") {
  const int n = 20'000;
  Histogram doubled_lazy, simple_even;
  for (int i = 0; i < n; ++i) {
    doubled_lazy[2 * lazy_walk(512, stream_seed(52, i)).back()]++;
    simple_even[simple_walk_local_times(1024, {}, {1024}, stream_seed(53, i))
                    .checkpoints[0]
                    .value]++;
  }
  const ChiSquareResult r = two_sample_binned_test(doubled_lazy, simple_even);
  CHECK(r.p_value >= 1e-3);
}

TEST_CASE("simple walk local times") {
  const auto rec = simple_walk_local_times(4096, {0, 5000}, {0, 7, 4096}, 99);
  REQUIRE(rec.checkpoints.size() == 3);
  CHECK(rec.checkpoints[0].t == 0);
  CHECK(rec.local_time(0, 0) == 1);   // j = 0 counts
  CHECK(rec.local_time(2, 0) >= 1);
  CHECK(rec.local_time(2, 5000) == 0);  // |z| > t is unreachable
  CHECK_THROWS_AS(rec.local_time(0, 17), std::invalid_argument);
  CHECK_THROWS_AS(simple_walk_local_times(4, {}, {9}, 1), std::invalid_argument);
}

TEST_CASE("sqrt local time at the origin scales like t^(1/4)") {
  const std::vector<std::int64_t> ts = {1 << 10, 1 << 12, 1 << 14};
  std::vector<double> ratios;
  for (std::int64_t t : ts) {
    RunningStats stats;
    for (int i = 0; i < 3000; ++i) {
      const auto rec =
          simple_walk_local_times(t, {0}, {t}, stream_seed(54 + t, i));
      stats.add(std::sqrt(static_cast<double>(rec.local_time(0, 0))));
    }
    ratios.push_back(stats.mean() / std::pow(static_cast<double>(t), 0.25));
  }
  const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
  CHECK(*hi / *lo <= 1.10);
}

TEST_CASE("return time samples at the origin") {
  const auto samples = return_time_samples(0, 30'000, 61);
  std::int64_t counts[3] = {0, 0, 0};
  std::int64_t censored = 0;
  for (const ReturnSample& s : samples) {
    if (s.censored) {
      ++censored;
      continue;
    }
    REQUIRE(s.displacement >= -1);
    REQUIRE(s.displacement <= 1);
    REQUIRE(s.time >= 1);
    ++counts[s.displacement + 1];
  }
  const auto n = static_cast<double>(30'000 - censored);
  CHECK(static_cast<double>(counts[1]) / n == doctest::Approx(0.5).epsilon(0.04));
  CHECK(static_cast<double>(counts[0]) / n == doctest::Approx(0.25).epsilon(0.08));
  CHECK(static_cast<double>(counts[2]) / n == doctest::Approx(0.25).epsilon(0.08));
  CHECK(censored <= 60);

  // Deterministic in the seed.
  const auto replay = return_time_samples(0, 100, 61);
  for (int i = 0; i < 100; ++i) {
    CHECK(replay[i].time == samples[i].time);
    CHECK(replay[i].displacement == samples[i].displacement);
  }
}

TEST_CASE("tiny step cap censors instead of dropping") {
  const auto samples = return_time_samples(0, 500, 62, /*step_cap=*/4);
  std::int64_t censored = 0;
  for (const ReturnSample& s : samples) {
    if (s.censored) {
      ++censored;
      CHECK(s.time == 4);
    }
  }
  CHECK(censored > 0);
  CHECK(samples.size() == 500);
}

TEST_CASE("reduced return-time sampler matches the full chain exactly") {
  // Same seed, same draw mapping: the (walker, tile) pair evolves
  // identically, so T and the displacement agree sample by sample.
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t seed = stream_seed(63, i);
    const auto reduced = return_time_samples(0, 1, seed, 4096);
    // return_time_samples derives the per-sample stream from (seed, 0).
    ChainState chain(stream_seed(seed, 0), {0}, /*record_visit_times=*/true);
    std::int64_t full_time = -1;
    int full_disp = 0;
    for (std::int64_t t = 1; t <= 4096; ++t) {
      chain.step();
      if (!chain.visit_times(0).empty()) {
        full_time = chain.visit_times(0).front();
        full_disp = static_cast<int>(chain.tile_position(0));
        break;
      }
    }
    if (reduced[0].censored) {
      CHECK(full_time == -1);
    } else {
      CHECK(full_time == reduced[0].time);
      CHECK(full_disp == reduced[0].displacement);
    }
  }
}
