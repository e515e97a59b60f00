#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "evifuse/bench/sim_config.hpp"
#include "evifuse/frame.hpp"

namespace evifuse::bench {

/// What one source reported for one sample: its decided class and its score
/// vector.
struct SourceRecord {
  ClassIndex label = 0;
  std::vector<double> scores;

  bool operator==(const SourceRecord&) const = default;
};

struct Sample {
  std::string id;
  ClassIndex truth = 0;
  /// One record per source, in Dataset::source_ids order.
  std::vector<SourceRecord> outputs;

  bool operator==(const Sample&) const = default;
};

struct Dataset {
  Frame frame;
  std::vector<std::string> source_ids;
  std::vector<Sample> samples;

  std::size_t sources() const noexcept { return source_ids.size(); }
  SourceOutput symbolic(std::size_t sample, std::size_t source) const;
  SourceOutput numeric(std::size_t sample, std::size_t source) const;

  bool operator==(const Dataset&) const = default;
};

/// Draws n_samples samples from the configured priors. Each source answers
/// the true class with its per-class reliability, otherwise a uniformly chosen
/// wrong class; its scores blend the one-hot answer with uniform noise at the
/// source temperature, clipped to [0,1] and rounded to 9 decimals.
Dataset simulate(const SimConfig& config);

/// CSV layout: sample_id,<truth>,source_id,label,score_<class>... with one
/// row per (sample, source).
void save_dataset(std::ostream& out, const Dataset& ds);
void save_dataset(const std::string& path, const Dataset& ds);

/// Throws ValidationError naming the offending line on malformed input.
Dataset load_dataset(std::istream& in, const std::string& truth_col = "true_class");
Dataset load_dataset(const std::string& path, const std::string& truth_col = "true_class");

}  // namespace evifuse::bench
