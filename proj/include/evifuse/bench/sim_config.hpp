#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "evifuse/frame.hpp"
#include "evifuse/possibility.hpp"

namespace evifuse::bench {

struct SourceProfile {
  std::string id;
  /// Probability of answering correctly, per true class.
  std::vector<double> reliability;
  /// Weight of uniform noise blended into the one-hot score vector, in [0,1].
  double temperature = 0.3;

  bool operator==(const SourceProfile&) const = default;
};

struct VoteParams {
  double c = 0.0;
  double b = 0.0;
  bool operator==(const VoteParams&) const = default;
};

struct DenoeuxParams {
  std::size_t k = 10;
  double alpha = 0.95;
  bool operator==(const DenoeuxParams&) const = default;
};

struct AppriouOptions {
  bool as_printed = false;
  bool operator==(const AppriouOptions&) const = default;
};

/// Knobs of the fusion methods, shared by simulated runs and dataset evaluation.
struct MethodParams {
  VoteParams vote;
  PossibilityOperator possibility = PossibilityOperator::Max;
  DenoeuxParams denoeux;
  AppriouOptions appriou;
  bool operator==(const MethodParams&) const = default;
};

struct SimConfig {
  std::vector<std::string> classes;
  std::vector<double> priors;
  std::vector<SourceProfile> sources;
  std::size_t n_samples = 0;
  std::size_t n_trials = 1;
  std::uint64_t seed = 0;
  MethodParams methods;

  /// Throws ValidationError if any invariant fails.
  void validate() const;
  Frame frame() const { return Frame(classes); }

  bool operator==(const SimConfig&) const = default;
};

/// Six seabed sediment classes with their observed proportions rescaled to
/// sum to 1, and four sources mimicking texture classifiers, one of them
/// degraded to 0.5 reliability.
SimConfig default_config();

/// Sediment proportions (sand, rock, ripple, silt, cobble, shadow) rescaled
/// to sum to 1.
std::vector<double> sediment_priors();

SimConfig parse_config(const std::string& json_text);
SimConfig load_config(const std::string& path);
std::string config_to_json(const SimConfig& config);

/// Reads only the method blocks (vote, possibility, denoeux, appriou) of a
/// config document; missing blocks keep their defaults.
MethodParams parse_method_params(const std::string& json_text);

}  // namespace evifuse::bench
