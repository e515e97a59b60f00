#include "evifuse/vote.hpp"

#include <algorithm>
#include <cmath>

#include "evifuse/error.hpp"

namespace evifuse {

VoteWeights::VoteWeights(std::vector<std::vector<double>> alpha) : alpha_(std::move(alpha)) {
  double total = 0.0;
  for (const auto& row : alpha_) {
    if (row.size() != alpha_.front().size()) throw ValidationError("vote weight rows differ in length");
    for (double a : row) {
      if (!(a >= 0.0 && a <= 1.0)) throw ValidationError("vote weight outside [0,1]");
      total += a;
    }
  }
  if (!alpha_.empty() && std::abs(total - 1.0) > 1e-9)
    throw ValidationError("vote weights sum to " + std::to_string(total) + ", expected 1");
}

std::vector<double> indicator(ClassIndex label, const Frame& frame) {
  frame.check_class(label);
  std::vector<double> out(frame.size(), 0.0);
  out[label] = 1.0;
  return out;
}

VoteTally tally(const Frame& frame, std::span<const ClassIndex> labels, const VoteWeights* weights) {
  if (weights != nullptr &&
      (weights->sources() != labels.size() || (!labels.empty() && weights->classes() != frame.size())))
    throw ValidationError("vote weights are " + std::to_string(weights->sources()) + "x" +
                          std::to_string(weights->classes()) + ", expected " + std::to_string(labels.size()) +
                          "x" + std::to_string(frame.size()));
  VoteTally t;
  t.counts.assign(frame.size(), 0.0);
  t.m_sources = labels.size();
  t.weighted = weights != nullptr;
  for (std::size_t j = 0; j < labels.size(); ++j) {
    frame.check_class(labels[j]);
    t.counts[labels[j]] += weights != nullptr ? (*weights)(j, labels[j]) : 1.0;
  }
  return t;
}

namespace {

// Index of the unique strict maximum, if any.
std::optional<ClassIndex> unique_max(const std::vector<double>& counts) {
  if (counts.empty()) return std::nullopt;
  auto it = std::max_element(counts.begin(), counts.end());
  if (std::count(counts.begin(), counts.end(), *it) != 1) return std::nullopt;
  return static_cast<ClassIndex>(it - counts.begin());
}

}  // namespace

Decision decide_majority(const VoteTally& t) {
  auto k = unique_max(t.counts);
  if (!k || t.counts[*k] <= 0.0) return Decision::conflict();
  return Decision::of(*k);
}

Decision decide_absolute_majority(const VoteTally& t) {
  if (t.weighted) throw ValidationError("absolute majority is defined on raw vote counts, not weighted tallies");
  const double half = static_cast<double>(t.m_sources) / 2.0;
  for (ClassIndex k = 0; k < t.counts.size(); ++k)
    if (t.counts[k] > half) return Decision::of(k);
  return Decision::conflict();
}

Decision decide_threshold(const VoteTally& t, double c, double b) {
  if (!(c >= 0.0 && c <= 1.0)) throw ValidationError("threshold constant c must lie in [0,1]");
  auto k = unique_max(t.counts);
  if (!k) return Decision::conflict();
  if (t.counts[*k] >= c * static_cast<double>(t.m_sources) + b) return Decision::of(*k);
  return Decision::conflict();
}

}  // namespace evifuse
