#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "evifuse/belief.hpp"
#include "evifuse/frame.hpp"
#include "evifuse/vote.hpp"

namespace evifuse {

/// Per-source confusion counts: rows are true classes, columns predictions.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::size_t n_classes, std::string source_id = {});

  std::size_t classes() const noexcept { return n_; }
  const std::string& source_id() const noexcept { return source_id_; }

  std::uint64_t operator()(ClassIndex truth, ClassIndex predicted) const;
  void add(ClassIndex truth, ClassIndex predicted, std::uint64_t count = 1);
  std::uint64_t row_sum(ClassIndex truth) const;
  std::uint64_t total() const;

  /// counts(truth, predicted) / row_sum(truth), 0 for an empty row.
  double rate(ClassIndex truth, ClassIndex predicted) const;

  bool operator==(const ConfusionMatrix&) const = default;

 private:
  std::size_t n_;
  std::string source_id_;
  std::vector<std::uint64_t> counts_;
};

ConfusionMatrix build_confusion(std::span<const std::pair<ClassIndex, ClassIndex>> preds, const Frame& frame,
                                std::string source_id = {});

/// Per-class success rates of every source, normalized so all weights sum
/// to 1. Throws ValidationError when no source is ever correct.
VoteWeights vote_weights(std::span<const ConfusionMatrix> cms);

/// Correct-answer rates p(S_j | C_i) = counts_j(i,i) / row_sum_j(i) with
/// unit discounts. Throws ValidationError when a source is never correct.
AppriouParams conditional_probs(std::span<const ConfusionMatrix> cms);

/// Likelihood of what each source actually answered: row j holds
/// counts_j(i, labels[j]) / row_sum_j(i) for every class i. Sources whose
/// answer was never seen during calibration get an all-zero row.
std::vector<std::vector<double>> observation_likelihoods(std::span<const ConfusionMatrix> cms,
                                                         std::span<const ClassIndex> labels);

/// CSV with a header of predicted labels and one row per true label.
void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm, const Frame& frame);
ConfusionMatrix read_confusion_csv(std::istream& in, const Frame& frame, std::string source_id = {});

}  // namespace evifuse
