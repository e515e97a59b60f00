#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "evifuse/frame.hpp"

namespace evifuse {

/// Basic belief assignment over the power set of a frame. Only focal elements
/// (strictly positive mass) are stored; the empty set may carry mass, which
/// is read as conflict between combined sources. Total mass is 1.
class MassFunction {
 public:
  using FocalMap = std::map<FocalSet::Bits, double>;

  /// Duplicate focal sets are merged and zero masses dropped. Throws
  /// ValidationError on a negative or non-finite mass, a focal set from another
  /// frame, or a total that differs from 1 by more than 1e-9.
  MassFunction(std::size_t width, std::span<const std::pair<FocalSet, double>> focals);
  MassFunction(std::size_t width, std::initializer_list<std::pair<FocalSet, double>> focals);

  /// Total ignorance, m(D) = 1.
  static MassFunction vacuous(std::size_t width);
  static MassFunction vacuous(const Frame& frame) { return vacuous(frame.size()); }

  std::size_t width() const noexcept { return width_; }
  /// Mass of `a`, 0 when it is not a focal element.
  double mass(const FocalSet& a) const;
  const FocalMap& focal_elements() const noexcept { return focal_; }
  double total() const noexcept;

 private:
  MassFunction(std::size_t width, FocalMap focal) : width_(width), focal_(std::move(focal)) {}
  friend MassFunction conjunctive_combine(const MassFunction&, const MassFunction&);

  std::size_t width_ = 0;
  FocalMap focal_;
};

/// Unnormalized conjunctive rule: m(A) = sum over B, C with B & C = A of
/// m1(B) m2(C). Mass landing on the empty set is kept. Products below 1e-12
/// are pruned from the result.
MassFunction conjunctive_combine(const MassFunction& m1, const MassFunction& m2);

/// Left fold of conjunctive_combine starting from the vacuous mass.
MassFunction conjunctive_combine(std::span<const MassFunction> masses, std::size_t width);

double conflict_mass(const MassFunction& m);

/// Bel(A): mass of the non-empty subsets of A.
double belief(const MassFunction& m, const FocalSet& a);
/// Pl(A): mass of the sets meeting A.
double plausibility(const MassFunction& m, const FocalSet& a);

/// Pignistic probabilities: each non-empty focal element shares its mass
/// equally among its classes, then the result is divided by 1 - m(empty).
/// Throws ValidationError when m(empty) = 1.
std::vector<double> pignistic(const MassFunction& m);

/// Class of maximum pignistic probability, ties to the lowest index.
/// Conflict when all mass sits on the empty set.
Decision decide_pignistic(const MassFunction& m);

// ---------------------------------------------------------------------------
// Probabilistic (Appriou) mass model

enum class AppriouVariant {
  /// Complement mass alpha / (1 + R p): the three masses always sum to 1.
  Corrected,
  /// Complement mass alpha R / (1 + R p) as sometimes printed. Sums to 1 only
  /// when R = 1; appriou_mass() renormalizes it.
  AsPrinted,
};

struct AppriouMasses {
  double singleton = 0.0;   // m({C_i})
  double complement = 0.0;  // m(C_i^c)
  double ignorance = 0.0;   // m(D)

  double total() const noexcept { return singleton + complement + ignorance; }
};

/// Raw three-mass split for likelihood `p`, normalization factor `r` and
/// discount `alpha`, without any renormalization.
AppriouMasses appriou_masses(double p, double r, double alpha, AppriouVariant variant = AppriouVariant::Corrected);

/// Per-source likelihoods p(S_j | C_i), their normalization factors
/// R_j = 1 / max_i p(S_j | C_i) and the discounts alpha_ij.
class AppriouParams {
 public:
  /// Throws ValidationError when shapes disagree, values leave [0,1], or a
  /// source has no positive likelihood (R_j undefined).
  AppriouParams(std::vector<std::vector<double>> cond_prob, std::vector<std::vector<double>> alpha);
  /// All discounts set to 1.
  explicit AppriouParams(std::vector<std::vector<double>> cond_prob);

  std::size_t sources() const noexcept { return cond_prob_.size(); }
  std::size_t classes() const noexcept { return cond_prob_.empty() ? 0 : cond_prob_.front().size(); }
  double cond_prob(std::size_t j, ClassIndex i) const { return cond_prob_.at(j).at(i); }
  double normalization(std::size_t j) const { return r_.at(j); }
  double alpha(std::size_t j, ClassIndex i) const { return alpha_.at(j).at(i); }
  const std::vector<std::vector<double>>& cond_probs() const noexcept { return cond_prob_; }
  const std::vector<double>& normalizations() const noexcept { return r_; }

 private:
  std::vector<std::vector<double>> cond_prob_;
  std::vector<double> r_;
  std::vector<std::vector<double>> alpha_;
};

/// Mass m_ij for source j and hypothesis C_i, with focal elements {C_i},
/// C_i^c and D.
MassFunction appriou_mass(std::size_t source, ClassIndex cls, const AppriouParams& params,
                          AppriouVariant variant = AppriouVariant::Corrected);

/// Conjunctive combination of all n*m Appriou masses.
MassFunction appriou_fuse(const AppriouParams& params, AppriouVariant variant = AppriouVariant::Corrected);

// ---------------------------------------------------------------------------
// Distance-based (Denoeux) mass model

struct Prototype {
  std::vector<double> features;
  ClassIndex cls = 0;
};

/// Labelled prototypes with per-class decay rates gamma_i, a discount alpha
/// and the neighbor count k.
class TrainingSet {
 public:
  /// Throws ValidationError on an empty set, ragged features, an invalid
  /// class, a non-positive gamma, alpha outside [0,1], or k outside
  /// [1, |prototypes|].
  TrainingSet(std::size_t n_classes, std::vector<Prototype> prototypes, std::vector<double> gamma, double alpha,
              std::size_t k);

  /// Sets gamma_i to the inverse mean pairwise Euclidean distance between the
  /// prototypes of class i. Classes with fewer than two prototypes use the
  /// mean over all prototype pairs; if that is undefined or zero gamma is 1.
  static TrainingSet fit(std::size_t n_classes, std::vector<Prototype> prototypes, double alpha, std::size_t k);

  std::size_t classes() const noexcept { return gamma_.size(); }
  std::size_t dimension() const noexcept { return prototypes_.front().features.size(); }
  const std::vector<Prototype>& prototypes() const noexcept { return prototypes_; }
  const std::vector<double>& gamma() const noexcept { return gamma_; }
  double alpha() const noexcept { return alpha_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::vector<Prototype> prototypes_;
  std::vector<double> gamma_;
  double alpha_;
  std::size_t k_;
};

/// exp(-gamma d^2): 1 at d = 0, decreasing to 0.
double denoeux_phi(double gamma, double distance);

double euclidean_distance(std::span<const double> a, std::span<const double> b);

/// Support lent by prototype `t` to its class: m({C_i}) = alpha phi_i(d),
/// rest on D.
MassFunction denoeux_mass(std::span<const double> x, std::size_t t, const TrainingSet& ts);

/// Indices of the k nearest prototypes, nearest first; distance ties go to
/// the lower index.
std::vector<std::size_t> nearest_prototypes(std::span<const double> x, const TrainingSet& ts);

/// Conjunctive combination of denoeux_mass over the k nearest prototypes.
MassFunction denoeux_classify_mass(std::span<const double> x, const TrainingSet& ts);

}  // namespace evifuse
