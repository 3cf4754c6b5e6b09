#pragma once

#include "halfspace/config.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace halfspace::app {

enum class Experiment {
  dispersion,
  fermi_volume,
  fermion_scaling,
  boson_arealaw,
  negativity_bound,
  lifshitz,
  halfspace_divergence,
};

std::string_view to_string(Experiment experiment);
Experiment parse_experiment(std::string_view text);
const std::vector<Experiment>& all_experiments();

/// Experiment keys accepted next to the model keys, with dashes in place of
/// underscores as command-line flags (`m_ladder` <-> `--m-ladder`).
const std::vector<std::string>& experiment_keys();

struct RunOptions {
  unsigned workers = 1;
  std::filesystem::path out_dir = ".";
};

struct RunResult {
  std::vector<std::filesystem::path> files;  // relative to out_dir
  std::string config_hash;
};

/// Fills in the experiment defaults, validates every key, runs the
/// experiment and writes its files plus manifest.json into out_dir.
/// Throws ConfigError for bad input and ContractViolation for numerical
/// failures.
RunResult run_experiment(Experiment experiment, KeyValueConfig config,
                         const RunOptions& options);

/// SHA-256 of the canonical `key = value` listing of the effective config.
std::string config_hash(Experiment experiment, const KeyValueConfig& config);

}  // namespace halfspace::app
