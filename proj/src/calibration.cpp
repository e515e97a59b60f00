#include "evifuse/calibration.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "evifuse/error.hpp"

namespace evifuse {

ConfusionMatrix::ConfusionMatrix(std::size_t n_classes, std::string source_id)
    : n_(n_classes), source_id_(std::move(source_id)), counts_(n_classes * n_classes, 0) {
  if (n_classes == 0 || n_classes > kMaxClasses) throw ValidationError("confusion matrix size out of range");
}

std::uint64_t ConfusionMatrix::operator()(ClassIndex truth, ClassIndex predicted) const {
  if (truth >= n_ || predicted >= n_) throw ValidationError("confusion matrix index out of range");
  return counts_[truth * n_ + predicted];
}

void ConfusionMatrix::add(ClassIndex truth, ClassIndex predicted, std::uint64_t count) {
  if (truth >= n_ || predicted >= n_) throw ValidationError("confusion matrix index out of range");
  counts_[truth * n_ + predicted] += count;
}

std::uint64_t ConfusionMatrix::row_sum(ClassIndex truth) const {
  if (truth >= n_) throw ValidationError("confusion matrix index out of range");
  std::uint64_t sum = 0;
  for (ClassIndex k = 0; k < n_; ++k) sum += counts_[truth * n_ + k];
  return sum;
}

std::uint64_t ConfusionMatrix::total() const {
  std::uint64_t sum = 0;
  for (auto c : counts_) sum += c;
  return sum;
}

double ConfusionMatrix::rate(ClassIndex truth, ClassIndex predicted) const {
  const auto row = row_sum(truth);
  return row == 0 ? 0.0 : static_cast<double>((*this)(truth, predicted)) / static_cast<double>(row);
}

ConfusionMatrix build_confusion(std::span<const std::pair<ClassIndex, ClassIndex>> preds, const Frame& frame,
                                std::string source_id) {
  ConfusionMatrix cm(frame.size(), std::move(source_id));
  for (const auto& [truth, predicted] : preds) {
    frame.check_class(truth);
    frame.check_class(predicted);
    cm.add(truth, predicted);
  }
  return cm;
}

namespace {

std::size_t common_size(std::span<const ConfusionMatrix> cms) {
  if (cms.empty()) throw ValidationError("need at least one confusion matrix");
  const std::size_t n = cms.front().classes();
  for (const auto& cm : cms)
    if (cm.classes() != n) throw ValidationError("confusion matrices belong to different frames");
  return n;
}

std::string source_name(const ConfusionMatrix& cm, std::size_t j) {
  return cm.source_id().empty() ? "source " + std::to_string(j + 1) : "source '" + cm.source_id() + "'";
}

}  // namespace

VoteWeights vote_weights(std::span<const ConfusionMatrix> cms) {
  const std::size_t n = common_size(cms);
  std::vector<std::vector<double>> alpha(cms.size(), std::vector<double>(n, 0.0));
  double total = 0.0;
  for (std::size_t j = 0; j < cms.size(); ++j)
    for (ClassIndex k = 0; k < n; ++k) {
      alpha[j][k] = cms[j].rate(k, k);
      total += alpha[j][k];
    }
  if (total <= 0.0) throw ValidationError("no source is ever correct on the calibration data");
  for (auto& row : alpha)
    for (double& a : row) a /= total;
  return VoteWeights(std::move(alpha));
}

AppriouParams conditional_probs(std::span<const ConfusionMatrix> cms) {
  const std::size_t n = common_size(cms);
  std::vector<std::vector<double>> p(cms.size(), std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < cms.size(); ++j) {
    for (ClassIndex i = 0; i < n; ++i) p[j][i] = cms[j].rate(i, i);
    if (*std::max_element(p[j].begin(), p[j].end()) <= 0.0)
      throw ValidationError(source_name(cms[j], j) + " is never correct, normalization factor undefined");
  }
  return AppriouParams(std::move(p));
}

std::vector<std::vector<double>> observation_likelihoods(std::span<const ConfusionMatrix> cms,
                                                         std::span<const ClassIndex> labels) {
  const std::size_t n = common_size(cms);
  if (labels.size() != cms.size()) throw ValidationError("need one observed label per source");
  std::vector<std::vector<double>> p(cms.size(), std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < cms.size(); ++j) {
    if (labels[j] >= n) throw ValidationError("observed label out of range");
    for (ClassIndex i = 0; i < n; ++i) p[j][i] = cms[j].rate(i, labels[j]);
  }
  return p;
}

void write_confusion_csv(std::ostream& out, const ConfusionMatrix& cm, const Frame& frame) {
  if (cm.classes() != frame.size()) throw ValidationError("confusion matrix does not match frame");
  out << "true\\predicted";
  for (const auto& name : frame.labels()) out << ',' << name;
  out << '\n';
  for (ClassIndex i = 0; i < frame.size(); ++i) {
    out << frame.label(i);
    for (ClassIndex k = 0; k < frame.size(); ++k) out << ',' << cm(i, k);
    out << '\n';
  }
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

ConfusionMatrix read_confusion_csv(std::istream& in, const Frame& frame, std::string source_id) {
  ConfusionMatrix cm(frame.size(), std::move(source_id));
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("confusion CSV is empty");
  auto header = split_csv(line);
  if (header.size() != frame.size() + 1) throw ValidationError("confusion CSV header has the wrong number of columns");
  std::vector<ClassIndex> columns;
  for (std::size_t c = 1; c < header.size(); ++c) columns.push_back(frame.index_of(header[c]));
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ValidationError("confusion CSV line " + std::to_string(line_no) + ": wrong number of columns");
    const ClassIndex truth = frame.index_of(cells[0]);
    for (std::size_t c = 1; c < cells.size(); ++c) {
      std::size_t used = 0;
      unsigned long long v = 0;
      try {
        v = std::stoull(cells[c], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != cells[c].size() || cells[c].front() == '-')
        throw ValidationError("confusion CSV line " + std::to_string(line_no) + ": bad count '" + cells[c] + "'");
      cm.add(truth, columns[c - 1], v);
    }
  }
  return cm;
}

}  // namespace evifuse
