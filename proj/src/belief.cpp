#include "evifuse/belief.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "evifuse/error.hpp"

namespace evifuse {

namespace {

constexpr double kSumTolerance = 1e-9;
constexpr double kDropThreshold = 1e-12;

void require_width(const MassFunction& m, const FocalSet& a) {
  if (a.width() != m.width()) throw ValidationError("focal set and mass function have different frames");
}

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw ValidationError(std::string(what) + " outside [0,1]");
}

}  // namespace

// MassFunction

MassFunction::MassFunction(std::size_t width, std::span<const std::pair<FocalSet, double>> focals) : width_(width) {
  if (width == 0 || width > kMaxClasses) throw ValidationError("mass function frame width out of range");
  double sum = 0.0;
  for (const auto& [set, mass] : focals) {
    if (set.width() != width) throw ValidationError("focal set does not belong to the mass function's frame");
    if (!std::isfinite(mass) || mass < 0.0) throw ValidationError("negative or non-finite mass");
    sum += mass;
    if (mass > 0.0) focal_[set.bits()] += mass;
  }
  if (std::abs(sum - 1.0) > kSumTolerance)
    throw ValidationError("masses sum to " + std::to_string(sum) + ", expected 1");
}

MassFunction::MassFunction(std::size_t width, std::initializer_list<std::pair<FocalSet, double>> focals)
    : MassFunction(width, std::span<const std::pair<FocalSet, double>>(focals.begin(), focals.size())) {}

MassFunction MassFunction::vacuous(std::size_t width) {
  return MassFunction(width, {{FocalSet::full(width), 1.0}});
}

double MassFunction::mass(const FocalSet& a) const {
  require_width(*this, a);
  auto it = focal_.find(a.bits());
  return it == focal_.end() ? 0.0 : it->second;
}

double MassFunction::total() const noexcept {
  double sum = 0.0;
  for (const auto& [bits, mass] : focal_) sum += mass;
  return sum;
}

// Combination

MassFunction conjunctive_combine(const MassFunction& m1, const MassFunction& m2) {
  if (m1.width() != m2.width()) throw ValidationError("cannot combine mass functions over different frames");
  MassFunction::FocalMap out;
  for (const auto& [b, mb] : m1.focal_elements())
    for (const auto& [c, mc] : m2.focal_elements()) out[b & c] += mb * mc;
  std::erase_if(out, [](const auto& entry) { return entry.second < kDropThreshold; });
  return MassFunction(m1.width(), std::move(out));
}

MassFunction conjunctive_combine(std::span<const MassFunction> masses, std::size_t width) {
  MassFunction acc = MassFunction::vacuous(width);
  for (const auto& m : masses) acc = conjunctive_combine(acc, m);
  return acc;
}

double conflict_mass(const MassFunction& m) {
  auto it = m.focal_elements().find(0);
  return it == m.focal_elements().end() ? 0.0 : it->second;
}

double belief(const MassFunction& m, const FocalSet& a) {
  require_width(m, a);
  double sum = 0.0;
  for (const auto& [bits, mass] : m.focal_elements())
    if (bits != 0 && (bits & ~a.bits()) == 0) sum += mass;
  return sum;
}

double plausibility(const MassFunction& m, const FocalSet& a) {
  require_width(m, a);
  double sum = 0.0;
  for (const auto& [bits, mass] : m.focal_elements())
    if ((bits & a.bits()) != 0) sum += mass;
  return sum;
}

std::vector<double> pignistic(const MassFunction& m) {
  const double conflict = conflict_mass(m);
  if (conflict >= 1.0 - kDropThreshold) throw ValidationError("pignistic transform undefined: all mass is on the empty set");
  std::vector<double> bet(m.width(), 0.0);
  for (const auto& [bits, mass] : m.focal_elements()) {
    if (bits == 0) continue;
    const FocalSet set(bits, m.width());
    const double share = mass / static_cast<double>(set.cardinality());
    for (ClassIndex k = 0; k < m.width(); ++k)
      if (set.contains(k)) bet[k] += share;
  }
  for (double& p : bet) p /= 1.0 - conflict;
  return bet;
}

Decision decide_pignistic(const MassFunction& m) {
  if (conflict_mass(m) >= 1.0 - kDropThreshold) return Decision::conflict();
  const auto bet = pignistic(m);
  return Decision::of(static_cast<ClassIndex>(std::max_element(bet.begin(), bet.end()) - bet.begin()));
}

// Appriou

AppriouMasses appriou_masses(double p, double r, double alpha, AppriouVariant variant) {
  const double denom = 1.0 + r * p;
  AppriouMasses out;
  out.singleton = alpha * r * p / denom;
  out.complement = (variant == AppriouVariant::Corrected ? alpha : alpha * r) / denom;
  out.ignorance = 1.0 - alpha;
  return out;
}

AppriouParams::AppriouParams(std::vector<std::vector<double>> cond_prob, std::vector<std::vector<double>> alpha)
    : cond_prob_(std::move(cond_prob)), alpha_(std::move(alpha)) {
  if (cond_prob_.empty()) throw ValidationError("Appriou parameters need at least one source");
  if (alpha_.size() != cond_prob_.size()) throw ValidationError("discount matrix has the wrong number of sources");
  const std::size_t n = cond_prob_.front().size();
  if (n == 0) throw ValidationError("Appriou parameters need at least one class");
  r_.reserve(cond_prob_.size());
  for (std::size_t j = 0; j < cond_prob_.size(); ++j) {
    if (cond_prob_[j].size() != n || alpha_[j].size() != n)
      throw ValidationError("Appriou parameter rows differ in length");
    double top = 0.0;
    for (ClassIndex i = 0; i < n; ++i) {
      require_unit_interval(cond_prob_[j][i], "conditional probability");
      require_unit_interval(alpha_[j][i], "discount");
      top = std::max(top, cond_prob_[j][i]);
    }
    if (top <= 0.0)
      throw ValidationError("source " + std::to_string(j + 1) +
                            " has no positive conditional probability, normalization factor undefined");
    r_.push_back(1.0 / top);
  }
}

AppriouParams::AppriouParams(std::vector<std::vector<double>> cond_prob)
    : AppriouParams(cond_prob, std::vector<std::vector<double>>(
                                   cond_prob.size(), std::vector<double>(cond_prob.empty() ? 0 : cond_prob.front().size(), 1.0))) {}

MassFunction appriou_mass(std::size_t source, ClassIndex cls, const AppriouParams& params, AppriouVariant variant) {
  if (source >= params.sources()) throw ValidationError("source index out of range");
  if (cls >= params.classes()) throw ValidationError("class index out of range");
  const std::size_t n = params.classes();
  AppriouMasses raw =
      appriou_masses(params.cond_prob(source, cls), params.normalization(source), params.alpha(source, cls), variant);
  if (variant == AppriouVariant::AsPrinted) {
    const double total = raw.total();
    raw.singleton /= total;
    raw.complement /= total;
    raw.ignorance /= total;
  }
  const FocalSet single = FocalSet::singleton(cls, n);
  return MassFunction(n, {{single, raw.singleton}, {single.complement(), raw.complement}, {FocalSet::full(n), raw.ignorance}});
}

MassFunction appriou_fuse(const AppriouParams& params, AppriouVariant variant) {
  MassFunction acc = MassFunction::vacuous(params.classes());
  for (std::size_t j = 0; j < params.sources(); ++j)
    for (ClassIndex i = 0; i < params.classes(); ++i) acc = conjunctive_combine(acc, appriou_mass(j, i, params, variant));
  return acc;
}

// Denoeux

TrainingSet::TrainingSet(std::size_t n_classes, std::vector<Prototype> prototypes, std::vector<double> gamma,
                         double alpha, std::size_t k)
    : prototypes_(std::move(prototypes)), gamma_(std::move(gamma)), alpha_(alpha), k_(k) {
  if (prototypes_.empty()) throw ValidationError("training set is empty");
  if (gamma_.size() != n_classes) throw ValidationError("need one gamma per class");
  for (double g : gamma_)
    if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("gamma must be positive and finite");
  require_unit_interval(alpha_, "discount alpha");
  if (k_ < 1 || k_ > prototypes_.size())
    throw ValidationError("k must lie in [1, " + std::to_string(prototypes_.size()) + "]");
  const std::size_t dim = prototypes_.front().features.size();
  for (const auto& p : prototypes_) {
    if (p.features.size() != dim) throw ValidationError("prototype feature vectors differ in length");
    if (p.cls >= n_classes) throw ValidationError("prototype class index out of range");
  }
}

TrainingSet TrainingSet::fit(std::size_t n_classes, std::vector<Prototype> prototypes, double alpha, std::size_t k) {
  std::vector<double> class_sum(n_classes, 0.0);
  std::vector<std::size_t> class_pairs(n_classes, 0);
  double all_sum = 0.0;
  std::size_t all_pairs = 0;
  for (std::size_t a = 0; a < prototypes.size(); ++a) {
    if (prototypes[a].cls >= n_classes) throw ValidationError("prototype class index out of range");
    for (std::size_t b = a + 1; b < prototypes.size(); ++b) {
      const double d = euclidean_distance(prototypes[a].features, prototypes[b].features);
      all_sum += d;
      ++all_pairs;
      if (prototypes[a].cls == prototypes[b].cls) {
        class_sum[prototypes[a].cls] += d;
        ++class_pairs[prototypes[a].cls];
      }
    }
  }
  const double global_mean = all_pairs > 0 ? all_sum / static_cast<double>(all_pairs) : 0.0;
  const double fallback = global_mean > 0.0 ? 1.0 / global_mean : 1.0;
  std::vector<double> gamma(n_classes, fallback);
  for (ClassIndex i = 0; i < n_classes; ++i) {
    if (class_pairs[i] == 0) continue;
    const double mean = class_sum[i] / static_cast<double>(class_pairs[i]);
    if (mean > 0.0) gamma[i] = 1.0 / mean;
  }
  return TrainingSet(n_classes, std::move(prototypes), std::move(gamma), alpha, k);
}

double denoeux_phi(double gamma, double distance) { return std::exp(-gamma * distance * distance); }

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw ValidationError("feature vectors have dimension " + std::to_string(a.size()) + " and " +
                          std::to_string(b.size()));
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

MassFunction denoeux_mass(std::span<const double> x, std::size_t t, const TrainingSet& ts) {
  if (t >= ts.prototypes().size()) throw ValidationError("prototype index out of range");
  const Prototype& proto = ts.prototypes()[t];
  const double support = ts.alpha() * denoeux_phi(ts.gamma()[proto.cls], euclidean_distance(x, proto.features));
  const std::size_t n = ts.classes();
  return MassFunction(n, {{FocalSet::singleton(proto.cls, n), support}, {FocalSet::full(n), 1.0 - support}});
}

std::vector<std::size_t> nearest_prototypes(std::span<const double> x, const TrainingSet& ts) {
  if (x.size() != ts.dimension())
    throw ValidationError("feature vector has dimension " + std::to_string(x.size()) + ", training set has " +
                          std::to_string(ts.dimension()));
  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(ts.prototypes().size());
  for (std::size_t t = 0; t < ts.prototypes().size(); ++t) {
    const auto& f = ts.prototypes()[t].features;
    double sum = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) sum += (x[i] - f[i]) * (x[i] - f[i]);
    ranked.emplace_back(sum, t);
  }
  const auto k = static_cast<std::ptrdiff_t>(ts.k());
  std::partial_sort(ranked.begin(), ranked.begin() + k, ranked.end());
  std::vector<std::size_t> out;
  out.reserve(ts.k());
  for (auto it = ranked.begin(); it != ranked.begin() + k; ++it) out.push_back(it->second);
  return out;
}

MassFunction denoeux_classify_mass(std::span<const double> x, const TrainingSet& ts) {
  MassFunction acc = MassFunction::vacuous(ts.classes());
  for (std::size_t t : nearest_prototypes(x, ts)) acc = conjunctive_combine(acc, denoeux_mass(x, t, ts));
  return acc;
}

}  // namespace evifuse
