#pragma once

// Test-only reference computations. These deliberately avoid the library's
// sparse algorithms so they can serve as independent checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "evifuse/belief.hpp"

namespace evifuse::oracle {

/// Mass function as a dense vector indexed by subset bit pattern.
inline std::vector<double> dense(const MassFunction& m) {
  std::vector<double> out(std::size_t{1} << m.width(), 0.0);
  for (std::uint32_t a = 0; a < out.size(); ++a) out[a] = m.mass(FocalSet(a, m.width()));
  return out;
}

/// Unnormalized conjunctive rule by exhaustive enumeration of all subset
/// pairs.
inline std::vector<double> dense_combine(const std::vector<double>& m1, const std::vector<double>& m2) {
  std::vector<double> out(m1.size(), 0.0);
  for (std::uint32_t b = 0; b < m1.size(); ++b)
    for (std::uint32_t c = 0; c < m2.size(); ++c) out[b & c] += m1[b] * m2[c];
  return out;
}

/// Random sparse mass with between 1 and `max_focals` focal elements. When
/// `allow_empty` is false the empty set never receives mass.
inline MassFunction random_mass(std::mt19937_64& gen, std::size_t n, std::size_t max_focals, bool allow_empty = true) {
  const std::uint32_t subsets = std::uint32_t{1} << n;
  std::uniform_int_distribution<std::size_t> count_dist(1, max_focals);
  std::uniform_int_distribution<std::uint32_t> set_dist(allow_empty ? 0 : 1, subsets - 1);
  std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
  const std::size_t count = count_dist(gen);
  std::vector<std::pair<FocalSet, double>> focals;
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double w = weight_dist(gen);
    focals.emplace_back(FocalSet(set_dist(gen), n), w);
    total += w;
  }
  for (auto& f : focals) f.second /= total;
  // Push the rounding residue onto the first element so the sum is exact
  // enough for the constructor's check.
  double sum = 0.0;
  for (const auto& f : focals) sum += f.second;
  focals.front().second += 1.0 - sum;
  return MassFunction(n, focals);
}

/// Probability that a strict majority of m independent voters, each right
/// with probability p, is right (two classes).
inline double majority_vote_accuracy(int m, double p) {
  double total = 0.0;
  for (int k = m / 2 + 1; k <= m; ++k) {
    double binom = 1.0;
    for (int i = 0; i < k; ++i) binom = binom * (m - i) / (i + 1);
    total += binom * std::pow(p, k) * std::pow(1.0 - p, m - k);
  }
  return total;
}

/// Bel and Pl by direct subset enumeration over the dense vector.
inline double dense_belief(const std::vector<double>& m, std::uint32_t a) {
  double s = 0.0;
  for (std::uint32_t b = 1; b < m.size(); ++b)
    if ((b & ~a) == 0) s += m[b];
  return s;
}

inline double dense_plausibility(const std::vector<double>& m, std::uint32_t a) {
  double s = 0.0;
  for (std::uint32_t b = 1; b < m.size(); ++b)
    if ((b & a) != 0) s += m[b];
  return s;
}

}  // namespace evifuse::oracle
