#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "evifuse/frame.hpp"

namespace evifuse {

/// Normalized possibility distribution over a frame: entries in [0,1] with
/// maximum exactly 1 (to within 1e-9).
class PossibilityDistribution {
 public:
  explicit PossibilityDistribution(std::vector<double> pi);

  std::size_t size() const noexcept { return pi_.size(); }
  double operator[](ClassIndex k) const { return pi_.at(k); }
  std::span<const double> values() const noexcept { return pi_; }

 private:
  std::vector<double> pi_;
};

enum class PossibilityOperator { Min, Max, Mean, Median };

PossibilityOperator parse_possibility_operator(std::string_view name);
std::string_view to_string(PossibilityOperator op);

/// Membership degrees from raw scores, divided by their maximum. All-zero
/// scores map to total ignorance (all ones).
PossibilityDistribution to_possibility(std::span<const double> scores);
PossibilityDistribution to_possibility(const SourceOutput& output);

/// Pi(A): largest membership degree inside A, 0 for the empty set.
double possibility_measure(const PossibilityDistribution& d, const FocalSet& a);
/// N(A) = 1 - Pi(complement of A).
double necessity_measure(const PossibilityDistribution& d, const FocalSet& a);

/// Elementwise combination, renormalized once by the resulting maximum.
/// Median of an even number of values is the mean of the two middle ones.
PossibilityDistribution combine(std::span<const PossibilityDistribution> dists, PossibilityOperator op);

/// Argmax of the distribution; ties go to the lowest class index.
Decision decide_possibilistic(const PossibilityDistribution& d);

}  // namespace evifuse
