#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "evifuse/bench/dataset.hpp"
#include "evifuse/bench/sim_config.hpp"
#include "evifuse/possibility.hpp"

namespace evifuse::bench {

enum class MethodKind { VoteMajority, VoteAbsolute, VoteWeighted, Possibility, BeliefAppriou, BeliefDenoeux };

struct Method {
  MethodKind kind = MethodKind::VoteMajority;
  /// Only meaningful for MethodKind::Possibility.
  PossibilityOperator op = PossibilityOperator::Max;

  /// Stable report key, e.g. "vote-majority" or "possibility-max".
  std::string name() const;
  bool operator==(const Method&) const = default;
};

/// Parses one method name. Plain "possibility" takes `default_op`.
Method parse_method(std::string_view name, PossibilityOperator default_op = PossibilityOperator::Max);
/// Comma-separated list; "all" expands to every method.
std::vector<Method> parse_methods(std::string_view list, PossibilityOperator default_op = PossibilityOperator::Max);
std::vector<Method> all_methods(PossibilityOperator op = PossibilityOperator::Max);

struct MethodReport {
  double accuracy = 0.0;
  /// Keyed by class name: mean over trials of the recall on that class,
  /// counting only trials whose test split contains it.
  std::map<std::string, double> per_class;
  /// Fraction of test samples decided as the conflict class.
  double conflict_rate = 0.0;
  /// Mean m(empty) of the fused mass (belief methods only, else 0).
  double mean_conflict_mass = 0.0;

  bool operator==(const MethodReport&) const = default;
};

struct SourceReport {
  /// Accuracy on the first (source-calibration) third.
  double calibration_accuracy = 0.0;
  /// Accuracy on the test third.
  double test_accuracy = 0.0;

  bool operator==(const SourceReport&) const = default;
};

struct ExperimentReport {
  std::map<std::string, MethodReport> methods;
  std::map<std::string, SourceReport> sources;
  std::uint64_t seed = 0;
  std::size_t n_trials = 0;

  bool operator==(const ExperimentReport&) const = default;
};

struct ExperimentOptions {
  std::size_t n_trials = 10;
  std::uint64_t seed = 0;
  MethodParams params;
  /// Worker threads for trials; 0 picks the hardware concurrency. Results do
  /// not depend on it.
  std::size_t threads = 0;
};

/// Repeated random three-way split of `ds`: the first third estimates
/// per-source accuracy, the second calibrates the fusion methods (confusion
/// matrices, vote weights, likelihoods, Denoeux prototypes) and the third is
/// the test set. Metrics are averaged over trials.
ExperimentReport run_experiment(const Dataset& ds, const std::vector<Method>& methods, const ExperimentOptions& opts);

/// Simulates a dataset from `config` and runs the protocol on it.
ExperimentReport run_experiment(const SimConfig& config, const std::vector<Method>& methods);

std::string report_to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const std::string& text);
void save_report(const std::string& path, const ExperimentReport& report);
ExperimentReport load_report(const std::string& path);

/// Human-readable summary table.
void print_report(std::ostream& out, const ExperimentReport& report);

}  // namespace evifuse::bench
