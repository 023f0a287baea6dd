#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixer/bfs.hpp"
#include "mixer/report.hpp"
#include "mixer/sites.hpp"

namespace mixer {

// Shared knobs of the experiment drivers. Every experiment is a pure
// function of this struct: identical config and seed reproduce identical
// data rows, regardless of the worker count.
struct ExperimentConfig {
  std::uint64_t seed = 20260810ULL;
  std::int64_t trials = 2000;
  std::vector<std::int64_t> t_grid;  // empty -> default_t_grid()
  std::vector<Site> probe_sites = {0, 1, 4, 16};
  std::vector<std::int64_t> stat_times = {1024, 4096};  // domination/conditional
  std::vector<std::int64_t> mirror_times = {64, 256};
  std::string output_format = "csv";  // csv | json
  std::string output_path;            // empty: no file written
  int workers = 1;
  int radius = 8;

  // Tolerances and guard rails; defaults pin the verification thresholds.
  std::int64_t fit_min_t = 1024;  // smaller grid times recorded, not fitted
  BfsLimits bfs;
  std::int64_t return_step_cap = 10'000'000;
  double sigma_buffer = 3.0;   // inequality checks get this many combined SEs
  double stat_level = 1e-3;    // significance level of the statistical tests
  double claim_tol = 0.01;     // tolerance on the return-displacement law
  double cond_var_slack = 1.0;       // C in the (k-1)/2 +- (C sqrt(k) + 9) band
  std::int64_t cond_min_bin = 500;   // samples needed before a bin is judged
};

// Geometric grid 2^8 .. 2^16.
std::vector<std::int64_t> default_t_grid();

// Runs independent trajectories over the time grid and fits log-log slopes
// of the mean tile displacement, the distance sandwich bounds and the
// covering number. Slope-band checks gate the exit code whenever the run is
// fit-eligible (trials >= 500 and the fit window covers [2^10, 2^16]);
// smaller runs report them as informational.
Report estimate_exponent(const ExperimentConfig& cfg);

// Enumerates the full ball of the given radius and checks, element by
// element, the displacement lower bound and the constructive upper bound
// against the exact breadth-first distance.
Report verify_sandwich(int radius, const ExperimentConfig& cfg);

// Synthesized words: transposition words for every |h| <= max_support
// (validity and exact length), and random permutations through the cycle
// and covering constructions with their length bounds.
Report verify_words(std::int64_t n_random, Site max_support,
                    const ExperimentConfig& cfg);

// Return-time displacement law at z = 0: frequencies of {-1, 0, +1}
// against (1/4, 1/2, 1/4) with exact binomial intervals and a three-cell
// goodness-of-fit test.
Report verify_claim(std::int64_t n_samples, const ExperimentConfig& cfg);

// Tail domination of simple-walk local times by mixer visit counts:
// P[L_{2t}(2z) >= k] <= P[V_t(z) >= k] within the configured buffer, for
// every probed z, every stat time and every k up to the 99th percentile,
// plus the sqrt-mean comparison.
Report verify_domination(const ExperimentConfig& cfg);

// Conditional law of the tile displacement given k visits: per-k bins must
// match the lazy-walk mean/variance bands; reports the implied constants
// of the sqrt-visit-count comparison.
Report verify_conditional(const ExperimentConfig& cfg);

// Distributional reflection symmetry: binned two-sample tests of the
// walker position against its mirror and of the tile displacement at +1
// against the reflected displacement at -1.
Report verify_mirror(const ExperimentConfig& cfg);

// Writes the report to cfg.output_path in cfg.output_format (no-op when
// the path is empty).
void emit_report(const Report& report, const ExperimentConfig& cfg);

}  // namespace mixer
