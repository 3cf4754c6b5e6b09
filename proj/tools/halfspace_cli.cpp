// Command-line front end: one subcommand per experiment.
//
//   halfspace_cli fermi-volume --a 0.5 --dim 2 --out-dir out
//   halfspace_cli negativity-bound --dim 2 --resolution 4096
//   halfspace_cli boson-arealaw --config arealaw.cfg --workers 4
//
// Exit status: 0 success, 1 usage, 2 invalid config (file:line: message),
// 3 numerical contract violation ([module] invariant: detail), 4 I/O.

#include "experiments.hpp"

#include "halfspace/error.hpp"
#include "halfspace/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <sstream>

namespace {

using namespace halfspace;

std::string flag_name(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return "--" + key;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Half-space entanglement scaling of quasi-free lattice models"};
  cli.require_subcommand(1);

  std::string config_path;
  unsigned workers = 1;
  std::string out_dir = ".";
  std::map<std::string, std::string> overrides;
  // CLI11 needs stable storage for every option target.
  std::map<std::string, std::string> storage;

  std::vector<std::string> keys;
  for (std::string_view key : model_keys()) keys.emplace_back(key);
  for (const auto& key : app::experiment_keys()) {
    if (key != "workers") keys.push_back(key);
  }

  std::optional<app::Experiment> chosen;
  for (app::Experiment experiment : app::all_experiments()) {
    const std::string name(app::to_string(experiment));
    CLI::App* sub = cli.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--workers", workers, "worker threads")
        ->check(CLI::Range(1u, 4096u));
    sub->add_option("--out-dir", out_dir, "output directory");
    for (const auto& key : keys) {
      sub->add_option(flag_name(key), storage[name + "/" + key],
                      "overrides '" + key + "'");
    }
    sub->callback([&, experiment, name, sub] {
      chosen = experiment;
      for (const auto& key : keys) {
        if (sub->count(flag_name(key)) > 0) overrides[key] = storage[name + "/" + key];
      }
    });
  }

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e);
  }

  try {
    KeyValueConfig config;
    if (!config_path.empty()) config = KeyValueConfig::load(config_path);
    for (const auto& [key, value] : overrides) {
      // `dim` and `dimension` are one key.
      if (key == "dim" && config.find("dimension")) {
        config.set("dimension", value);
      } else if (key == "dimension" && config.find("dim")) {
        config.set("dim", value);
      } else {
        config.set(key, value);
      }
    }
    app::RunOptions options;
    options.workers = workers;
    options.out_dir = out_dir;
    const app::RunResult result = app::run_experiment(*chosen, config, options);
    std::cout << app::to_string(*chosen) << ": wrote " << result.files.size() + 1
              << " files to " << out_dir << " (config " << result.config_hash.substr(0, 12)
              << ")\n";
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
