#pragma once

#include <optional>
#include <span>
#include <vector>

#include "evifuse/frame.hpp"

namespace evifuse {

/// Per-source, per-class reliability weights for the weighted vote.
/// Row j holds the weights of source j; all entries sum to 1.
class VoteWeights {
 public:
  /// Throws ValidationError on ragged rows, entries outside [0,1], or a total
  /// that differs from 1 by more than 1e-9.
  explicit VoteWeights(std::vector<std::vector<double>> alpha);

  std::size_t sources() const noexcept { return alpha_.size(); }
  std::size_t classes() const noexcept { return alpha_.empty() ? 0 : alpha_.front().size(); }
  double operator()(std::size_t source, ClassIndex k) const { return alpha_.at(source).at(k); }
  const std::vector<std::vector<double>>& rows() const noexcept { return alpha_; }

 private:
  std::vector<std::vector<double>> alpha_;
};

struct VoteTally {
  std::vector<double> counts;
  std::size_t m_sources = 0;
  bool weighted = false;
};

/// One-hot vector with a 1 at `label`.
std::vector<double> indicator(ClassIndex label, const Frame& frame);

/// Sums source votes per class, optionally weighting source j's vote for class
/// k by alpha(j, k).
VoteTally tally(const Frame& frame, std::span<const ClassIndex> labels,
                const VoteWeights* weights = nullptr);

/// Plain majority: the unique strict maximum, otherwise Conflict. An all-zero
/// tally is Conflict.
Decision decide_majority(const VoteTally& t);

/// Absolute majority: a class with more than m/2 votes, otherwise Conflict.
/// Only defined on raw counts; a weighted tally raises ValidationError.
Decision decide_absolute_majority(const VoteTally& t);

/// Generalized rule: the unique maximum k wins if counts[k] >= c*m + b.
/// `b` stands for a tally-dependent offset and is taken as a constant here.
Decision decide_threshold(const VoteTally& t, double c, double b = 0.0);

}  // namespace evifuse
