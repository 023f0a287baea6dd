#include "mixer/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "mixer/chain.hpp"
#include "mixer/stats.hpp"
#include "mixer/trajectory.hpp"
#include "mixer/walks.hpp"
#include "mixer/words.hpp"

namespace mixer {

namespace {

// Fans fn(0..n-1) out over the configured workers. Each index writes only
// its own preallocated slots, so results are identical for any worker
// count; reductions happen afterwards in index order.
template <typename Fn>
void parallel_for(std::int64_t n, int workers, Fn&& fn) {
  workers = static_cast<int>(std::min<std::int64_t>(std::max(workers, 1), n));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (std::int64_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::int64_t> sorted_unique(std::vector<std::int64_t> xs) {
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

std::vector<std::int64_t> effective_grid(const ExperimentConfig& cfg) {
  std::vector<std::int64_t> grid =
      cfg.t_grid.empty() ? default_t_grid() : sorted_unique(cfg.t_grid);
  if (grid.empty() || grid.front() < 1) {
    throw std::invalid_argument("time grid must be non-empty with times >= 1");
  }
  return grid;
}

void require_trials(const ExperimentConfig& cfg, std::int64_t minimum = 1) {
  if (cfg.trials < minimum) {
    throw std::invalid_argument("need at least " + std::to_string(minimum) +
                                " trials");
  }
}

nlohmann::ordered_json config_echo(const ExperimentConfig& cfg) {
  nlohmann::ordered_json j;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["t_grid"] = cfg.t_grid.empty() ? default_t_grid() : cfg.t_grid;
  j["probe_sites"] = cfg.probe_sites;
  j["stat_times"] = cfg.stat_times;
  j["mirror_times"] = cfg.mirror_times;
  j["output_format"] = cfg.output_format;
  j["output_path"] = cfg.output_path;
  j["workers"] = cfg.workers;
  j["radius"] = cfg.radius;
  j["fit_min_t"] = cfg.fit_min_t;
  j["bfs_radius_limit"] = cfg.bfs.radius_limit;
  j["bfs_node_budget"] = cfg.bfs.node_budget;
  j["return_step_cap"] = cfg.return_step_cap;
  j["sigma_buffer"] = cfg.sigma_buffer;
  j["stat_level"] = cfg.stat_level;
  j["claim_tol"] = cfg.claim_tol;
  j["cond_var_slack"] = cfg.cond_var_slack;
  j["cond_min_bin"] = cfg.cond_min_bin;
  return j;
}

struct IntMoments {
  unsigned long long sum = 0;
  unsigned __int128 sum_sq = 0;
  std::int64_t n = 0;

  void add(std::uint64_t x) {
    sum += x;
    sum_sq += static_cast<unsigned __int128>(x) * x;
    ++n;
  }
  double mean() const { return static_cast<double>(sum) / static_cast<double>(n); }
  double se() const {
    if (n < 2) return 0.0;
    const double m = mean();
    const double ex2 = static_cast<double>(sum_sq) / static_cast<double>(n);
    const double var = std::max(0.0, ex2 - m * m) * static_cast<double>(n) /
                       static_cast<double>(n - 1);
    return std::sqrt(var / static_cast<double>(n));
  }
};

nlohmann::ordered_json fit_to_json(const LinearFit& fit) {
  return {{"slope", fit.slope},
          {"intercept", fit.intercept},
          {"slope_se", fit.slope_se},
          {"residual_rms", fit.residual_rms},
          {"points", fit.n}};
}

bool in_band(double x, double lo, double hi) { return x >= lo && x <= hi; }

std::string band_detail(const std::string& what, double value, double lo,
                        double hi) {
  return what + " = " + format_double(value) + ", band [" + format_double(lo) +
         ", " + format_double(hi) + "]";
}

double tail_probability(const std::vector<std::int64_t>& sorted, std::int64_t k) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
  return static_cast<double>(sorted.end() - it) /
         static_cast<double>(sorted.size());
}

double proportion_se(double p, std::int64_t n) {
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace

std::vector<std::int64_t> default_t_grid() {
  std::vector<std::int64_t> grid;
  for (int e = 8; e <= 16; ++e) grid.push_back(std::int64_t{1} << e);
  return grid;
}

Report estimate_exponent(const ExperimentConfig& cfg) {
  require_trials(cfg);
  const std::vector<std::int64_t> grid = effective_grid(cfg);
  const std::int64_t t_max = grid.back();

  Report report;
  report.experiment = "exponent";
  report.config = config_echo(cfg);
  report.columns = {"t",          "trials",    "disp_mean", "disp_se",
                    "lower_mean", "lower_se",  "upper_mean", "upper_se",
                    "cover_mean", "cover_se"};

  // One slot per trajectory and grid point; workers never share slots.
  const std::size_t points = grid.size();
  struct Sample {
    std::uint64_t disp, lower, upper, cover;
  };
  std::vector<std::vector<Sample>> slots(
      static_cast<std::size_t>(cfg.trials), std::vector<Sample>(points));
  parallel_for(cfg.trials, cfg.workers, [&](std::int64_t i) {
    const TrajectoryRecord rec = run_trajectory(
        t_max, {}, grid, stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    for (std::size_t p = 0; p < points; ++p) {
      const TrajectoryCheckpoint& cp = rec.checkpoints[p];
      slots[static_cast<std::size_t>(i)][p] = {cp.x_sum, cp.d_lower, cp.d_upper,
                                               cp.cover};
    }
  });

  std::vector<double> log_t, log_disp, log_lower, log_upper, log_cover;
  bool rows_ordered = true;
  for (std::size_t p = 0; p < points; ++p) {
    IntMoments disp, lower, upper, cover;
    for (std::int64_t i = 0; i < cfg.trials; ++i) {
      const Sample& s = slots[static_cast<std::size_t>(i)][p];
      disp.add(s.disp);
      lower.add(s.lower);
      upper.add(s.upper);
      cover.add(s.cover);
    }
    report.add_row({grid[p], cfg.trials, disp.mean(), disp.se(), lower.mean(),
                    lower.se(), upper.mean(), upper.se(), cover.mean(),
                    cover.se()});
    if (lower.mean() > upper.mean() || disp.mean() / 2.0 > upper.mean()) {
      rows_ordered = false;
    }
    if (grid[p] >= cfg.fit_min_t && disp.mean() > 0 && lower.mean() > 0 &&
        upper.mean() > 0 && cover.mean() > 0) {
      log_t.push_back(std::log(static_cast<double>(grid[p])));
      log_disp.push_back(std::log(disp.mean()));
      log_lower.push_back(std::log(lower.mean()));
      log_upper.push_back(std::log(upper.mean()));
      log_cover.push_back(std::log(cover.mean()));
    }
  }

  report.check("sandwich_row_order", rows_ordered,
               "mean lower <= mean upper and mean disp/2 <= mean upper in "
               "every row");

  if (cfg.trials < 10) {
    report.warn("fit instability: fewer than 10 trials");
  }
  if (log_t.size() < 2) {
    report.warn("not enough grid points at or above fit_min_t for a fit");
    report.fitted["fit_available"] = false;
    return report;
  }

  const LinearFit fit_disp = ols_fit(log_t, log_disp);
  const LinearFit fit_lower = ols_fit(log_t, log_lower);
  const LinearFit fit_upper = ols_fit(log_t, log_upper);
  const LinearFit fit_cover = ols_fit(log_t, log_cover);
  report.fitted["fit_available"] = true;
  report.fitted["fit_min_t"] = cfg.fit_min_t;
  report.fitted["disp"] = fit_to_json(fit_disp);
  report.fitted["lower"] = fit_to_json(fit_lower);
  report.fitted["upper"] = fit_to_json(fit_upper);
  report.fitted["cover"] = fit_to_json(fit_cover);

  // Slope bands gate the run only when the config actually supports the
  // asymptotic read-out.
  const bool eligible = cfg.trials >= 500 && log_t.size() >= 4 &&
                        cfg.fit_min_t <= 1024 && grid.back() >= 65536;
  report.fitted["slope_checks_hard"] = eligible;
  report.check("disp_slope_band",
               in_band(fit_disp.slope, 0.70, 0.80),
               band_detail("displacement slope", fit_disp.slope, 0.70, 0.80),
               eligible);
  report.check("lower_slope_band",
               in_band(fit_lower.slope, 0.70, 0.80),
               band_detail("lower composite slope", fit_lower.slope, 0.70, 0.80),
               eligible);
  report.check("upper_slope_band",
               in_band(fit_upper.slope, 0.70, 0.80),
               band_detail("upper composite slope", fit_upper.slope, 0.70, 0.80),
               eligible);
  report.check("cover_slope_band",
               in_band(fit_cover.slope, 0.45, 0.55),
               band_detail("covering-number slope", fit_cover.slope, 0.45, 0.55),
               eligible);
  return report;
}

Report verify_sandwich(int radius, const ExperimentConfig& cfg) {
  Report report;
  report.experiment = "sandwich";
  report.config = config_echo(cfg);
  report.config["radius"] = radius;
  report.columns = {"distance", "count", "max_lower_slack", "max_upper_slack"};

  const Ball ball = bfs_ball(radius, cfg.bfs);

  struct Shell {
    std::int64_t count = 0;
    std::int64_t max_lower_slack = 0;
    std::int64_t max_upper_slack = 0;
  };
  std::vector<Shell> shells(static_cast<std::size_t>(radius) + 1);
  std::int64_t lower_violations = 0, upper_violations = 0;
  std::string first_violation;

  for (const BallEntry& entry : ball.entries()) {
    const auto d = static_cast<std::int64_t>(entry.distance);
    const auto lower = static_cast<std::int64_t>(lower_bound(entry.element.perm));
    const GeneratorWord witness = upper_bound_word(0, entry.element.perm);
    const auto rel_upper =
        static_cast<std::int64_t>(witness.size()) +
        static_cast<std::int64_t>(site_distance(entry.element.position, 0));
    Shell& shell = shells[static_cast<std::size_t>(entry.distance)];
    ++shell.count;
    shell.max_lower_slack = std::max(shell.max_lower_slack, d - lower);
    shell.max_upper_slack = std::max(shell.max_upper_slack, rel_upper - d);
    if (lower > d) {
      ++lower_violations;
      if (first_violation.empty()) {
        first_violation = "lower bound " + std::to_string(lower) + " > exact " +
                          std::to_string(d) + " at key " +
                          key_to_hex(entry.key);
      }
    }
    if (rel_upper < d) {
      ++upper_violations;
      if (first_violation.empty()) {
        first_violation = "upper bound " + std::to_string(rel_upper) +
                          " < exact " + std::to_string(d) + " at key " +
                          key_to_hex(entry.key);
      }
    }
  }
  for (std::size_t d = 0; d < shells.size(); ++d) {
    report.add_row({static_cast<std::int64_t>(d), shells[d].count,
                    shells[d].max_lower_slack, shells[d].max_upper_slack});
  }

  report.fitted["ball_size"] = ball.size();
  report.check("lower_bound_holds", lower_violations == 0,
               lower_violations == 0
                   ? "no element beats its displacement lower bound"
                   : first_violation);
  report.check("upper_bound_holds", upper_violations == 0,
               upper_violations == 0
                   ? "every exact distance within the constructive upper bound"
                   : first_violation);

  if (radius >= 5) {
    const MixerElement spot{0, SitePermutation::transposition(0, 2)};
    const std::optional<int> d = bfs_distance(spot, radius, cfg.bfs);
    report.fitted["distance_of_zero_swap_two"] = d ? *d : -1;
    report.check("spot_distance_swap_two", d.has_value() && *d == 5,
                 "exact distance of (0,<0,2>) is " +
                     (d ? std::to_string(*d) : std::string("beyond cap")) +
                     ", expected 5");
  }
  return report;
}

Report verify_words(std::int64_t n_random, Site max_support,
                    const ExperimentConfig& cfg) {
  if (n_random < 0 || max_support < 1) {
    throw std::invalid_argument("verify_words: need n_random >= 0 and "
                                "max_support >= 1");
  }
  Report report;
  report.experiment = "words";
  report.config = config_echo(cfg);
  report.config["n_random"] = n_random;
  report.config["max_support"] = max_support;
  report.columns = {"case", "param", "count", "failures", "max_length",
                    "max_bound"};

  // Transposition words: exact evaluation and exact length 4|h| - 3.
  std::int64_t transposition_failures = 0;
  std::string detail;
  std::int64_t max_len = 0, max_bound = 0;
  for (Site h = -max_support; h <= max_support; ++h) {
    if (h == 0) continue;
    const GeneratorWord w = transposition_word(h);
    const auto want_len = static_cast<std::int64_t>(4 * site_distance(h, 0) - 3);
    const MixerElement target{0, SitePermutation::transposition(0, h)};
    const bool ok = w.evaluate_from(identity_element()) == target &&
                    static_cast<std::int64_t>(w.size()) == want_len;
    if (!ok) {
      ++transposition_failures;
      if (detail.empty()) detail = "transposition_word(" + std::to_string(h) + ")";
    }
    max_len = std::max(max_len, static_cast<std::int64_t>(w.size()));
    max_bound = std::max(max_bound, want_len);
  }
  report.add_row({std::string("transposition"), static_cast<std::int64_t>(max_support),
                  2 * max_support, transposition_failures, max_len, max_bound});
  report.check("transposition_words_exact", transposition_failures == 0,
               transposition_failures == 0
                   ? "all lengths exactly 4|h| - 3 and targets reached"
                   : detail + " failed; seed " + std::to_string(cfg.seed));

  // Random permutations through the covering construction and per-cycle
  // words, with their length bounds.
  std::int64_t upper_failures = 0, cycle_failures = 0, cover_failures = 0;
  std::int64_t upper_count = 0, cycle_count = 0;
  std::int64_t upper_max_len = 0, upper_max_bound = 0;
  std::int64_t cycle_max_len = 0, cycle_max_bound = 0;
  std::string random_detail;
  const std::uint64_t interval = 2 * static_cast<std::uint64_t>(max_support) + 1;
  for (std::int64_t i = 0; i < n_random; ++i) {
    SplitMix64 rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const Site g = -max_support + static_cast<Site>(rng.below(interval));
    const std::size_t moved = rng.below(interval + 1);
    const SitePermutation sigma =
        random_site_permutation(rng, -max_support, max_support, moved);
    auto note_failure = [&](const std::string& what) {
      if (random_detail.empty()) {
        random_detail = what + " at sample " + std::to_string(i) + ", seed " +
                        std::to_string(cfg.seed);
      }
    };

    const GeneratorWord w = upper_bound_word(g, sigma);
    const auto bound = static_cast<std::int64_t>(
        2 * covering_number(g, sigma) + 5 * displacement_sum(sigma));
    ++upper_count;
    upper_max_len = std::max(upper_max_len, static_cast<std::int64_t>(w.size()));
    upper_max_bound = std::max(upper_max_bound, bound);
    if (w.evaluate_from({g, {}}) != MixerElement{g, sigma} ||
        static_cast<std::int64_t>(w.size()) > bound ||
        (sigma.is_identity() && !w.empty())) {
      ++upper_failures;
      note_failure("upper_bound_word");
    }

    const CoverPath path = covering_path(g, sigma);
    bool path_ok = !path.sites.empty() && path.sites.front() == g &&
                   path.length() == covering_number(g, sigma);
    for (std::size_t s = 0; path_ok && s + 1 < path.sites.size(); ++s) {
      path_ok = site_distance(path.sites[s], path.sites[s + 1]) == 1;
    }
    for (const auto& [x, y] : sigma.entries()) {
      path_ok = path_ok && std::find(path.sites.begin(), path.sites.end(), x) !=
                               path.sites.end();
    }
    if (!path_ok) {
      ++cover_failures;
      note_failure("covering_path");
    }

    for (const Cycle& c : cycle_decomposition(sigma)) {
      const Site anchor = c.orbit[rng.below(c.orbit.size())];
      const GeneratorWord cw = cycle_word(anchor, c);
      const auto cbound =
          static_cast<std::int64_t>(cycle_word_length_bound(anchor, c));
      ++cycle_count;
      cycle_max_len = std::max(cycle_max_len, static_cast<std::int64_t>(cw.size()));
      cycle_max_bound = std::max(cycle_max_bound, cbound);
      if (cw.evaluate_from({anchor, {}}) !=
              MixerElement{anchor, c.as_permutation()} ||
          static_cast<std::int64_t>(cw.size()) > cbound ||
          static_cast<std::int64_t>(cw.size()) >
              static_cast<std::int64_t>(5 * c.displacement_sum())) {
        ++cycle_failures;
        note_failure("cycle_word");
      }
    }
  }
  report.add_row({std::string("random_upper"), n_random, upper_count,
                  upper_failures, upper_max_len, upper_max_bound});
  report.add_row({std::string("random_cycle"), n_random, cycle_count,
                  cycle_failures, cycle_max_len, cycle_max_bound});
  report.add_row({std::string("random_cover"), n_random, upper_count,
                  cover_failures, std::int64_t{0}, std::int64_t{0}});
  report.check("random_words_valid",
               upper_failures + cycle_failures + cover_failures == 0,
               random_detail.empty()
                   ? "all words reach their targets within the length bounds"
                   : random_detail);
  return report;
}

Report verify_claim(std::int64_t n_samples, const ExperimentConfig& cfg) {
  if (n_samples < 1) throw std::invalid_argument("verify_claim: need n >= 1");
  Report report;
  report.experiment = "claim";
  report.config = config_echo(cfg);
  report.config["n_samples"] = n_samples;
  report.columns = {"displacement", "count", "frequency",
                    "ci_low",       "ci_high", "target"};

  const std::vector<ReturnSample> samples =
      return_time_samples(0, n_samples, cfg.seed, cfg.return_step_cap);

  std::int64_t censored = 0;
  std::int64_t counts[3] = {0, 0, 0};  // -1, 0, +1
  bool support_ok = true;
  std::int64_t total_time = 0, max_time = 0;
  for (const ReturnSample& s : samples) {
    if (s.censored) {
      ++censored;
      continue;
    }
    total_time += s.time;
    max_time = std::max(max_time, s.time);
    if (s.displacement < -1 || s.displacement > 1) {
      support_ok = false;
      continue;
    }
    ++counts[s.displacement + 1];
  }
  const std::int64_t n_eff = n_samples - censored;
  report.check("displacement_support", support_ok,
               "every observed displacement lies in {-1, 0, +1}");

  const double targets[3] = {0.25, 0.5, 0.25};
  double chi = 0.0;
  bool within_tol = true;
  for (int i = 0; i < 3; ++i) {
    const double freq =
        n_eff > 0 ? static_cast<double>(counts[i]) / static_cast<double>(n_eff)
                  : 0.0;
    const Interval ci = n_eff > 0
                            ? clopper_pearson(counts[i], n_eff, cfg.stat_level)
                            : Interval{0.0, 1.0};
    report.add_row({static_cast<std::int64_t>(i - 1), counts[i], freq, ci.lo,
                    ci.hi, targets[i]});
    const double expected = targets[i] * static_cast<double>(n_eff);
    if (expected > 0) {
      chi += (static_cast<double>(counts[i]) - expected) *
             (static_cast<double>(counts[i]) - expected) / expected;
    }
    if (std::fabs(freq - targets[i]) > cfg.claim_tol) within_tol = false;
  }
  const double freq_plus =
      n_eff > 0 ? static_cast<double>(counts[2]) / static_cast<double>(n_eff) : 0;
  const double freq_minus =
      n_eff > 0 ? static_cast<double>(counts[0]) / static_cast<double>(n_eff) : 0;
  if (std::fabs(freq_plus - freq_minus) > cfg.claim_tol) within_tol = false;

  const double p = n_eff > 0 ? chi_square_sf(chi, 2) : 1.0;
  report.fitted["chi_square"] = chi;
  report.fitted["p_value"] = p;
  report.fitted["n_effective"] = n_eff;
  report.fitted["censored"] = censored;
  report.fitted["censored_fraction"] =
      static_cast<double>(censored) / static_cast<double>(n_samples);
  report.fitted["mean_return_time"] =
      n_eff > 0 ? static_cast<double>(total_time) / static_cast<double>(n_eff)
                : 0.0;
  report.fitted["max_return_time"] = max_time;

  report.check("goodness_of_fit", p >= cfg.stat_level,
               "three-cell chi-square p = " + format_double(p) + " at level " +
                   format_double(cfg.stat_level));
  // Small samples cannot resolve the tolerance; keep the check informational
  // below 10^4 samples.
  report.check("frequency_tolerance", within_tol,
               "frequencies within " + format_double(cfg.claim_tol) +
                   " of (0.25, 0.5, 0.25) and of each other",
               n_samples >= 10'000);
  const double censored_fraction =
      static_cast<double>(censored) / static_cast<double>(n_samples);
  if (censored_fraction > 1e-3) {
    report.warn("censored fraction " + format_double(censored_fraction) +
                " exceeds 1e-3; consider raising the step cap");
  }
  return report;
}

Report verify_domination(const ExperimentConfig& cfg) {
  require_trials(cfg, 2);
  const std::vector<std::int64_t> times = sorted_unique(cfg.stat_times);
  if (times.empty() || times.front() < 1) {
    throw std::invalid_argument("verify_domination: stat times must be >= 1");
  }
  Report report;
  report.experiment = "domination";
  report.config = config_echo(cfg);
  report.columns = {"z",        "t",        "k",         "tail_srw",
                    "srw_se",   "tail_mixer", "mixer_se", "margin",
                    "passed"};

  const std::vector<Site>& zs = cfg.probe_sites;
  const std::int64_t t_max = times.back();
  const std::size_t cells = zs.size() * times.size();
  const auto n = static_cast<std::size_t>(cfg.trials);

  // visit_samples[cell][trial]: V_t(z); local_samples: L_{2t}(2z).
  std::vector<std::vector<std::int64_t>> visit_samples(cells,
                                                       std::vector<std::int64_t>(n));
  std::vector<std::vector<std::int64_t>> local_samples(cells,
                                                       std::vector<std::int64_t>(n));
  auto cell_of = [&](std::size_t zi, std::size_t ti) {
    return zi * times.size() + ti;
  };

  parallel_for(cfg.trials, cfg.workers, [&](std::int64_t i) {
    // Mixer chain: even stream indices; simple walk: odd ones.
    ChainState chain(stream_seed(cfg.seed, 2 * static_cast<std::uint64_t>(i)), zs);
    std::size_t ti = 0;
    for (std::int64_t t = 1; t <= t_max && ti < times.size(); ++t) {
      chain.step();
      if (t == times[ti]) {
        for (std::size_t zi = 0; zi < zs.size(); ++zi) {
          visit_samples[cell_of(zi, ti)][static_cast<std::size_t>(i)] =
              chain.visit_count(zs[zi]);
        }
        ++ti;
      }
    }
    std::vector<Site> doubled;
    doubled.reserve(zs.size());
    for (Site z : zs) doubled.push_back(checked_add(z, z));
    std::vector<std::int64_t> doubled_times;
    doubled_times.reserve(times.size());
    for (std::int64_t t : times) doubled_times.push_back(2 * t);
    const SimpleWalkRecord walk = simple_walk_local_times(
        2 * t_max, doubled, doubled_times,
        stream_seed(cfg.seed, 2 * static_cast<std::uint64_t>(i) + 1));
    for (std::size_t ti2 = 0; ti2 < times.size(); ++ti2) {
      for (std::size_t zi = 0; zi < zs.size(); ++zi) {
        local_samples[cell_of(zi, ti2)][static_cast<std::size_t>(i)] =
            walk.checkpoints[ti2].local_times[zi];
      }
    }
  });

  std::int64_t tail_violations = 0;
  std::int64_t sqrt_violations = 0;
  std::string detail;
  auto corollary = nlohmann::ordered_json::array();
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      std::vector<std::int64_t> v = visit_samples[cell_of(zi, ti)];
      std::vector<std::int64_t> l = local_samples[cell_of(zi, ti)];
      std::sort(v.begin(), v.end());
      std::sort(l.begin(), l.end());
      // k grid up to the 99th percentile of the dominated side.
      const std::size_t q99 =
          std::min(l.size() - 1, (l.size() * 99 + 99) / 100 - 1);
      const std::int64_t k_max = std::max<std::int64_t>(1, l[q99]);
      for (std::int64_t k = 1; k <= k_max; ++k) {
        const double pv = tail_probability(v, k);
        const double pl = tail_probability(l, k);
        const double sev = proportion_se(pv, cfg.trials);
        const double sel = proportion_se(pl, cfg.trials);
        const double margin =
            pv + cfg.sigma_buffer * std::sqrt(sev * sev + sel * sel) - pl;
        const bool ok = margin >= 0.0;
        if (!ok) {
          ++tail_violations;
          if (detail.empty()) {
            detail = "tail violation at z=" + std::to_string(zs[zi]) +
                     " t=" + std::to_string(times[ti]) + " k=" + std::to_string(k) +
                     ", seed " + std::to_string(cfg.seed);
          }
        }
        report.add_row({zs[zi], times[ti], k, pl, sel, pv, sev, margin,
                        std::int64_t{ok ? 1 : 0}});
      }
      RunningStats sqrt_v, sqrt_l;
      for (std::int64_t x : v) sqrt_v.add(std::sqrt(static_cast<double>(x)));
      for (std::int64_t x : l) sqrt_l.add(std::sqrt(static_cast<double>(x)));
      const double comb =
          std::sqrt(sqrt_v.se() * sqrt_v.se() + sqrt_l.se() * sqrt_l.se());
      const bool ok =
          sqrt_l.mean() <= sqrt_v.mean() + cfg.sigma_buffer * comb;
      if (!ok) {
        ++sqrt_violations;
        if (detail.empty()) {
          detail = "sqrt-mean violation at z=" + std::to_string(zs[zi]) +
                   " t=" + std::to_string(times[ti]) + ", seed " +
                   std::to_string(cfg.seed);
        }
      }
      corollary.push_back({{"z", zs[zi]},
                           {"t", times[ti]},
                           {"e_sqrt_visits", sqrt_v.mean()},
                           {"e_sqrt_local_time", sqrt_l.mean()},
                           {"combined_se", comb}});
    }
  }
  report.fitted["sqrt_means"] = std::move(corollary);
  report.check("tail_domination", tail_violations == 0,
               tail_violations == 0
                   ? "P[L_2t(2z) >= k] <= P[V_t(z) >= k] + buffer everywhere"
                   : detail);
  report.check("sqrt_mean_domination", sqrt_violations == 0,
               sqrt_violations == 0
                   ? "E[sqrt L_2t(2z)] <= E[sqrt V_t(z)] + buffer everywhere"
                   : detail);
  return report;
}

Report verify_conditional(const ExperimentConfig& cfg) {
  require_trials(cfg, 2);
  const std::vector<std::int64_t> times = sorted_unique(cfg.stat_times);
  if (times.empty() || times.front() < 1) {
    throw std::invalid_argument("verify_conditional: stat times must be >= 1");
  }
  Report report;
  report.experiment = "conditional";
  report.config = config_echo(cfg);
  report.columns = {"k",        "samples",  "mean",  "variance",
                    "band_low", "band_high", "passed"};

  const std::vector<Site>& zs = cfg.probe_sites;
  const std::int64_t t_max = times.back();
  const std::size_t cells = zs.size() * times.size();
  const auto n = static_cast<std::size_t>(cfg.trials);
  auto cell_of = [&](std::size_t zi, std::size_t ti) {
    return zi * times.size() + ti;
  };

  // Per cell and trial: visit count k and displacement sigma_t(z) - z.
  std::vector<std::vector<std::int64_t>> ks(cells, std::vector<std::int64_t>(n));
  std::vector<std::vector<std::int64_t>> values(cells, std::vector<std::int64_t>(n));
  parallel_for(cfg.trials, cfg.workers, [&](std::int64_t i) {
    ChainState chain(stream_seed(cfg.seed, static_cast<std::uint64_t>(i)), zs);
    std::size_t ti = 0;
    for (std::int64_t t = 1; t <= t_max && ti < times.size(); ++t) {
      chain.step();
      if (t == times[ti]) {
        for (std::size_t zi = 0; zi < zs.size(); ++zi) {
          const std::size_t cell = cell_of(zi, ti);
          ks[cell][static_cast<std::size_t>(i)] = chain.visit_count(zs[zi]);
          values[cell][static_cast<std::size_t>(i)] =
              chain.tile_position(zs[zi]) - zs[zi];
        }
        ++ti;
      }
    }
  });

  // The conditional law given k visits does not depend on z or t, so the
  // k-bins pool all cells.
  std::map<std::int64_t, RunningStats> bins;
  bool k1_support_ok = true;
  for (std::size_t cell = 0; cell < cells; ++cell) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t k = ks[cell][i];
      if (k < 1) continue;
      const auto value = static_cast<double>(values[cell][i]);
      bins[k].add(value);
      if (k == 1 && std::fabs(value) > 2.0) k1_support_ok = false;
    }
  }

  std::int64_t judged = 0, mean_violations = 0, var_violations = 0;
  std::string detail;
  for (const auto& [k, stats] : bins) {
    if (stats.n() < cfg.cond_min_bin) continue;
    ++judged;
    const double center = static_cast<double>(k - 1) / 2.0;
    const double slack =
        cfg.cond_var_slack * std::sqrt(static_cast<double>(k)) + 9.0;
    const double band_low = center - slack;
    const double band_high = center + slack;
    const bool mean_ok = std::fabs(stats.mean()) <= 2.0;
    const bool var_ok = in_band(stats.variance(), band_low, band_high);
    if (!mean_ok) {
      ++mean_violations;
      if (detail.empty()) {
        detail = "k=" + std::to_string(k) + " mean " +
                 format_double(stats.mean()) + ", seed " +
                 std::to_string(cfg.seed);
      }
    }
    if (!var_ok) {
      ++var_violations;
      if (detail.empty()) {
        detail = "k=" + std::to_string(k) + " variance " +
                 format_double(stats.variance()) + " outside [" +
                 format_double(band_low) + ", " + format_double(band_high) +
                 "], seed " + std::to_string(cfg.seed);
      }
    }
    report.add_row({k, stats.n(), stats.mean(), stats.variance(), band_low,
                    band_high, std::int64_t{mean_ok && var_ok ? 1 : 0}});
  }
  if (judged == 0) {
    report.warn("no k-bin reached " + std::to_string(cfg.cond_min_bin) +
                " samples; raise trials");
  }
  report.fitted["judged_bins"] = judged;
  report.check("k1_support", k1_support_ok,
               "|displacement| <= 2 whenever the tile was visited once");
  report.check("bin_means_bounded", mean_violations == 0,
               mean_violations == 0 ? "|conditional mean| <= 2 in every judged bin"
                                    : detail);
  report.check("bin_variance_band", var_violations == 0,
               var_violations == 0
                   ? "conditional variance inside the (k-1)/2 band in every "
                     "judged bin"
                   : detail);

  // Implied constants of the sqrt-visit-count comparison, per cell.
  auto corollary = nlohmann::ordered_json::array();
  double c_upper = std::numeric_limits<double>::infinity();
  double c_lower = 0.0;
  for (std::size_t zi = 0; zi < zs.size(); ++zi) {
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      const std::size_t cell = cell_of(zi, ti);
      RunningStats abs_disp, sqrt_visits;
      std::int64_t visited = 0;
      for (std::size_t i = 0; i < n; ++i) {
        abs_disp.add(std::fabs(static_cast<double>(values[cell][i])));
        sqrt_visits.add(std::sqrt(static_cast<double>(std::max<std::int64_t>(
            ks[cell][i], 0))));
        if (ks[cell][i] >= 1) ++visited;
      }
      const double p_visit =
          static_cast<double>(visited) / static_cast<double>(n);
      if (sqrt_visits.mean() > 0) {
        const double hi = (abs_disp.mean() + 2.0 * p_visit) / sqrt_visits.mean();
        const double lo =
            std::max(0.0, (abs_disp.mean() - 2.0 * p_visit) / sqrt_visits.mean());
        c_upper = std::min(c_upper, hi);
        c_lower = std::max(c_lower, lo);
        corollary.push_back({{"z", zs[zi]},
                             {"t", times[ti]},
                             {"e_abs_displacement", abs_disp.mean()},
                             {"e_sqrt_visits", sqrt_visits.mean()},
                             {"p_visit", p_visit},
                             {"c_max_implied", hi},
                             {"c_min_implied", lo}});
      }
    }
  }
  report.fitted["corollary_cells"] = std::move(corollary);
  if (std::isfinite(c_upper)) {
    report.fitted["fitted_c"] = c_upper;   // largest admissible lower constant
    report.fitted["fitted_C"] = c_lower;   // smallest admissible upper constant
    report.check("corollary_constants_positive", c_upper > 0,
                 "a positive lower constant fits all cells", /*hard=*/false);
  }
  return report;
}

Report verify_mirror(const ExperimentConfig& cfg) {
  require_trials(cfg, 4);
  const std::vector<std::int64_t> times = sorted_unique(cfg.mirror_times);
  if (times.empty() || times.front() < 1) {
    throw std::invalid_argument("verify_mirror: times must be >= 1");
  }
  Report report;
  report.experiment = "mirror";
  report.config = config_echo(cfg);
  report.columns = {"t", "observable", "chi_square", "df", "p_value", "passed"};

  const std::int64_t t_max = times.back();
  const auto n = static_cast<std::size_t>(cfg.trials);
  const std::size_t half = n / 2;

  // Per trial and time: walker position and the tiles labeled +1 and -1.
  std::vector<std::vector<Site>> pos(times.size(), std::vector<Site>(n));
  std::vector<std::vector<Site>> tile_p1(times.size(), std::vector<Site>(n));
  std::vector<std::vector<Site>> tile_m1(times.size(), std::vector<Site>(n));
  parallel_for(cfg.trials, cfg.workers, [&](std::int64_t i) {
    ChainState chain(stream_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    std::size_t ti = 0;
    for (std::int64_t t = 1; t <= t_max && ti < times.size(); ++t) {
      chain.step();
      if (t == times[ti]) {
        pos[ti][static_cast<std::size_t>(i)] = chain.position();
        tile_p1[ti][static_cast<std::size_t>(i)] = chain.tile_position(1);
        tile_m1[ti][static_cast<std::size_t>(i)] = chain.tile_position(-1);
        ++ti;
      }
    }
  });

  bool all_ok = true;
  std::string detail;
  for (std::size_t ti = 0; ti < times.size(); ++ti) {
    // First half observes the law, second half its reflection.
    Histogram a_pos, b_pos, a_tile, b_tile;
    for (std::size_t i = 0; i < half; ++i) {
      a_pos[pos[ti][i]]++;
      a_tile[tile_p1[ti][i] - 1]++;
    }
    for (std::size_t i = half; i < n; ++i) {
      b_pos[-pos[ti][i]]++;
      b_tile[-(tile_m1[ti][i] + 1)]++;
    }
    const ChiSquareResult results[2] = {two_sample_binned_test(a_pos, b_pos),
                                        two_sample_binned_test(a_tile, b_tile)};
    const char* names[2] = {"position_vs_reflected", "tile_disp_vs_reflected"};
    for (int which = 0; which < 2; ++which) {
      const ChiSquareResult& r = results[which];
      const bool ok = r.p_value >= cfg.stat_level;
      if (!ok) {
        all_ok = false;
        if (detail.empty()) {
          detail = std::string(names[which]) + " at t=" +
                   std::to_string(times[ti]) + ": p = " +
                   format_double(r.p_value) + ", seed " + std::to_string(cfg.seed);
        }
      }
      report.add_row({times[ti], std::string(names[which]), r.statistic,
                      static_cast<std::int64_t>(r.df), r.p_value,
                      std::int64_t{ok ? 1 : 0}});
    }
  }
  report.check("mirror_symmetry", all_ok,
               all_ok ? "both observables pass at level " +
                            format_double(cfg.stat_level)
                      : detail);
  return report;
}

void emit_report(const Report& report, const ExperimentConfig& cfg) {
  if (cfg.output_path.empty()) return;
  write_report_file(report, cfg.output_format, cfg.output_path);
}

}  // namespace mixer
