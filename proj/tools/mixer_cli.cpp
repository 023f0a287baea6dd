// Command-line driver for the mixer chain experiments. Exit codes:
// 0 all checks passed, 1 a hard statistical/exactness check failed,
// 2 usage or resource error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixer/experiments.hpp"

namespace {

struct CliOptions {
  mixer::ExperimentConfig cfg;
  std::int64_t t_max = 0;
  std::int64_t max_support = 10;
  bool grid_given = false;
};

void add_shared_flags(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--seed", opt.cfg.seed, "64-bit RNG seed");
  cmd->add_option("--trials", opt.cfg.trials,
                  "trajectories / samples per process");
  cmd->add_option("--t-max", opt.t_max,
                  "largest time; implies a power-of-two grid up to it");
  cmd->add_option("--grid", [&opt](const std::vector<std::string>& vals) {
        opt.cfg.t_grid.clear();
        for (const auto& v : vals) {
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) {
            opt.cfg.t_grid.push_back(std::stoll(item));
          }
        }
        opt.grid_given = true;
        return true;
      },
      "comma-separated checkpoint times");
  cmd->add_option("--probe", [&opt](const std::vector<std::string>& vals) {
        opt.cfg.probe_sites.clear();
        for (const auto& v : vals) {
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) {
            opt.cfg.probe_sites.push_back(std::stoll(item));
          }
        }
        return true;
      },
      "comma-separated probe sites");
  cmd->add_option("--radius", opt.cfg.radius, "ball radius for exact searches");
  cmd->add_option("--format", opt.cfg.output_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", opt.cfg.output_path, "report output path");
  cmd->add_option("--workers", opt.cfg.workers, "worker thread count");
}

void apply_env_overrides(mixer::ExperimentConfig& cfg) {
  if (const char* budget = std::getenv("MIXERCHAIN_BFS_NODE_BUDGET")) {
    cfg.bfs.node_budget = std::strtoull(budget, nullptr, 10);
  }
}

std::vector<std::int64_t> grid_up_to(std::int64_t t_max) {
  std::vector<std::int64_t> grid;
  for (std::int64_t t = 256; t <= t_max; t *= 2) grid.push_back(t);
  if (grid.empty() || grid.back() != t_max) grid.push_back(t_max);
  return grid;
}

int finish(const mixer::Report& report, const mixer::ExperimentConfig& cfg) {
  mixer::emit_report(report, cfg);
  std::cout << mixer::summarize(report);
  if (!cfg.output_path.empty()) {
    std::cout << "  wrote " << cfg.output_format << " report to "
              << cfg.output_path << "\n";
  }
  return report.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixer chain on Z: simulation, word synthesis and "
               "distance-bound verification"};
  app.require_subcommand(1);

  CliOptions opt;

  CLI::App* exponent = app.add_subcommand(
      "exponent", "escape-exponent estimate over a time grid");
  CLI::App* sandwich = app.add_subcommand(
      "sandwich", "exhaustive bound check against exact ball distances");
  CLI::App* words = app.add_subcommand(
      "words", "generator-word synthesis validity and length bounds");
  words->add_option("--max-support", opt.max_support,
                    "support half-width for random permutations");
  CLI::App* claim = app.add_subcommand(
      "claim", "return-time displacement frequencies at the origin");
  CLI::App* domination = app.add_subcommand(
      "domination", "local-time tail domination by visit counts");
  CLI::App* conditional = app.add_subcommand(
      "conditional", "displacement law conditioned on the visit count");
  for (CLI::App* cmd :
       {exponent, sandwich, words, claim, domination, conditional}) {
    add_shared_flags(cmd, opt);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help or the error message
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  try {
    mixer::ExperimentConfig& cfg = opt.cfg;
    apply_env_overrides(cfg);
    if (opt.t_max > 0 && !opt.grid_given) cfg.t_grid = grid_up_to(opt.t_max);
    if (opt.grid_given) cfg.stat_times = cfg.t_grid;
    if (opt.grid_given) cfg.mirror_times = cfg.t_grid;

    if (exponent->parsed()) {
      return finish(mixer::estimate_exponent(cfg), cfg);
    }
    if (sandwich->parsed()) {
      return finish(mixer::verify_sandwich(cfg.radius, cfg), cfg);
    }
    if (words->parsed()) {
      return finish(mixer::verify_words(cfg.trials, opt.max_support, cfg), cfg);
    }
    if (claim->parsed()) {
      return finish(mixer::verify_claim(cfg.trials, cfg), cfg);
    }
    if (domination->parsed()) {
      return finish(mixer::verify_domination(cfg), cfg);
    }
    if (conditional->parsed()) {
      return finish(mixer::verify_conditional(cfg), cfg);
    }
    std::cerr << "no subcommand selected\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
