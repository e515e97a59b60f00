// Command-line front end: simulate datasets, run the fusion benchmark on a
// simulated scenario, or evaluate fusion methods on an existing dataset.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "evifuse/bench/dataset.hpp"
#include "evifuse/bench/experiment.hpp"
#include "evifuse/bench/sim_config.hpp"
#include "evifuse/error.hpp"

namespace {

constexpr int kExitValidation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw evifuse::ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace evifuse::bench;

  CLI::App app{"evifuse: decision-level classifier fusion by voting, possibility and belief functions"};
  app.require_subcommand(1);

  std::string config_path, out_path, methods_arg, dataset_path, truth_col = "true_class";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  bool quiet = false;

  auto* simulate_cmd = app.add_subcommand("simulate", "Write a synthetic multi-source dataset as CSV");
  simulate_cmd->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--out", out_path, "Output CSV")->required();
  simulate_cmd->add_option("--seed", seed, "Override the config seed");

  auto* run_cmd = app.add_subcommand("run", "Simulate a scenario and run the fusion protocol on it");
  run_cmd->add_option("--config", config_path, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--methods", methods_arg, "Comma-separated methods, or 'all'")->required();
  run_cmd->add_option("--out", out_path, "Output report JSON")->required();
  run_cmd->add_option("--seed", seed, "Override the config seed");
  run_cmd->add_flag("--quiet", quiet, "Do not print the summary table");

  auto* eval_cmd = app.add_subcommand("eval", "Run the fusion protocol on an existing dataset CSV");
  eval_cmd->add_option("--dataset", dataset_path, "Dataset CSV")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth-col", truth_col, "Name of the ground-truth column")->capture_default_str();
  eval_cmd->add_option("--methods", methods_arg, "Comma-separated methods, or 'all'")->required();
  eval_cmd->add_option("--out", out_path, "Output report JSON")->required();
  eval_cmd->add_option("--config", config_path, "JSON with vote/possibility/denoeux/appriou blocks")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--seed", seed, "Split seed (default 0)");
  eval_cmd->add_option("--trials", trials, "Number of random splits (default 10)");
  eval_cmd->add_flag("--quiet", quiet, "Do not print the summary table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*simulate_cmd) {
      SimConfig config = load_config(config_path);
      if (seed) config.seed = *seed;
      save_dataset(out_path, simulate(config));
    } else if (*run_cmd) {
      SimConfig config = load_config(config_path);
      if (seed) config.seed = *seed;
      const auto report = run_experiment(config, parse_methods(methods_arg, config.methods.possibility));
      save_report(out_path, report);
      if (!quiet) print_report(std::cout, report);
    } else if (*eval_cmd) {
      ExperimentOptions opts;
      if (!config_path.empty()) opts.params = parse_method_params(read_file(config_path));
      if (seed) opts.seed = *seed;
      if (trials) opts.n_trials = *trials;
      const Dataset ds = load_dataset(dataset_path, truth_col);
      const auto report = run_experiment(ds, parse_methods(methods_arg, opts.params.possibility), opts);
      save_report(out_path, report);
      if (!quiet) print_report(std::cout, report);
    }
  } catch (const evifuse::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
