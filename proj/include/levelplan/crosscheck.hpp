#pragma once

// Randomized agreement checks between the oracles and the reductions.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "levelplan/generators.hpp"
#include "levelplan/io.hpp"

namespace levelplan::crosscheck {

enum class Suite { Thm1, Thm2, Lemma1, Lemma34, Pipeline };

Suite parse_suite(const std::string& s);
std::string to_string(Suite s);

struct Options {
  Suite suite = Suite::Thm1;
  int trials = 100;
  std::uint64_t seed = 1;
  Budgets budgets = Budgets::defaults();
  gen::GeneratorConfig sizes;  // seed and kind are overridden per trial
  int jobs = 1;
  std::optional<std::string> bundle_dir;
  bool bundle_all = false;
};

struct Trial {
  int index = 0;
  std::string digest;
  std::map<std::string, std::string> verdicts;
  std::string status;  // agree | disagree | budget | error
  std::string detail;
  double elapsed_ms = 0;
  io::Document instance;
};

struct Report {
  Suite suite = Suite::Thm1;
  std::uint64_t seed = 0;
  std::vector<Trial> trials;
  std::map<std::string, int> counts;
  bool ok() const;
};

/// Default instance sizes for a suite.
gen::GeneratorConfig default_sizes(Suite s);

/// Instance of the given trial, determined by (options.seed, index).
io::Document trial_instance(const Options& options, int index);

/// Runs every check of the suite on one instance.
Trial evaluate(Suite suite, const io::Document& instance, const Budgets& budgets);

Report run(const Options& options);

/// Deterministic unless timing is set.
std::string to_json(const Report& report, bool timing = false);

/// Writes dir/<suite>-<index>/{instance.json,bundle.json}; returns the path.
std::string write_bundle(const std::string& dir, Suite suite, const Trial& trial);

struct Replay {
  std::string path;
  Suite suite = Suite::Thm1;
  std::string recorded_status;
  Trial trial;
  bool reproduced() const { return recorded_status == trial.status; }
};

/// Accepts a single bundle directory or a directory of bundles.
std::vector<Replay> replay(const std::string& path, const Budgets& budgets);
std::string to_json(const std::vector<Replay>& replays);

}  // namespace levelplan::crosscheck
