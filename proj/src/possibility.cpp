#include "evifuse/possibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evifuse/error.hpp"

namespace evifuse {

namespace {

constexpr double kNormTolerance = 1e-9;

std::vector<double> normalize_by_max(std::vector<double> v) {
  const double top = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
  if (top <= 0.0) {
    std::fill(v.begin(), v.end(), 1.0);
    return v;
  }
  for (double& x : v) x /= top;
  return v;
}

void require_width(const PossibilityDistribution& d, const FocalSet& a) {
  if (a.width() != d.size()) throw ValidationError("focal set and possibility distribution have different frames");
}

}  // namespace

PossibilityDistribution::PossibilityDistribution(std::vector<double> pi) : pi_(std::move(pi)) {
  if (pi_.empty()) throw ValidationError("empty possibility distribution");
  for (double x : pi_)
    if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("possibility degree outside [0,1]");
  if (std::abs(*std::max_element(pi_.begin(), pi_.end()) - 1.0) > kNormTolerance)
    throw ValidationError("possibility distribution is not normalized (max != 1)");
}

PossibilityOperator parse_possibility_operator(std::string_view name) {
  if (name == "min") return PossibilityOperator::Min;
  if (name == "max") return PossibilityOperator::Max;
  if (name == "mean") return PossibilityOperator::Mean;
  if (name == "median") return PossibilityOperator::Median;
  throw ValidationError("unknown possibility operator '" + std::string(name) + "'");
}

std::string_view to_string(PossibilityOperator op) {
  switch (op) {
    case PossibilityOperator::Min: return "min";
    case PossibilityOperator::Max: return "max";
    case PossibilityOperator::Mean: return "mean";
    case PossibilityOperator::Median: return "median";
  }
  return "?";
}

PossibilityDistribution to_possibility(std::span<const double> scores) {
  for (double s : scores)
    if (!std::isfinite(s)) throw ValidationError("non-finite score");
  return PossibilityDistribution(normalize_by_max({scores.begin(), scores.end()}));
}

PossibilityDistribution to_possibility(const SourceOutput& output) { return to_possibility(output.scores()); }

double possibility_measure(const PossibilityDistribution& d, const FocalSet& a) {
  require_width(d, a);
  double best = 0.0;
  for (ClassIndex k = 0; k < d.size(); ++k)
    if (a.contains(k)) best = std::max(best, d[k]);
  return best;
}

double necessity_measure(const PossibilityDistribution& d, const FocalSet& a) {
  return 1.0 - possibility_measure(d, a.complement());
}

PossibilityDistribution combine(std::span<const PossibilityDistribution> dists, PossibilityOperator op) {
  if (dists.empty()) throw ValidationError("cannot combine an empty list of possibility distributions");
  const std::size_t n = dists.front().size();
  for (const auto& d : dists)
    if (d.size() != n) throw ValidationError("possibility distributions have different frames");

  std::vector<double> raw(n);
  std::vector<double> column(dists.size());
  for (ClassIndex k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < dists.size(); ++j) column[j] = dists[j][k];
    switch (op) {
      case PossibilityOperator::Min:
        raw[k] = *std::min_element(column.begin(), column.end());
        break;
      case PossibilityOperator::Max:
        raw[k] = *std::max_element(column.begin(), column.end());
        break;
      case PossibilityOperator::Mean:
        raw[k] = std::accumulate(column.begin(), column.end(), 0.0) / static_cast<double>(column.size());
        break;
      case PossibilityOperator::Median: {
        std::sort(column.begin(), column.end());
        const std::size_t mid = column.size() / 2;
        raw[k] = column.size() % 2 == 1 ? column[mid] : 0.5 * (column[mid - 1] + column[mid]);
        break;
      }
    }
  }
  return PossibilityDistribution(normalize_by_max(std::move(raw)));
}

Decision decide_possibilistic(const PossibilityDistribution& d) {
  auto v = d.values();
  return Decision::of(static_cast<ClassIndex>(std::max_element(v.begin(), v.end()) - v.begin()));
}

}  // namespace evifuse
