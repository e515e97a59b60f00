// Acceptance suite: one line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "evifuse/belief.hpp"
#include "evifuse/bench/dataset.hpp"
#include "evifuse/bench/experiment.hpp"
#include "evifuse/bench/sim_config.hpp"
#include "evifuse/possibility.hpp"
#include "evifuse/vote.hpp"
#include "oracles.hpp"

using namespace evifuse;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// 1
Outcome oracle_equivalence() {
  Outcome out;
  std::mt19937_64 gen(20040101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 3);
    const auto m1 = oracle::random_mass(gen, n, 6);
    const auto m2 = oracle::random_mass(gen, n, 6);
    const auto expected = oracle::dense_combine(oracle::dense(m1), oracle::dense(m2));
    worst = std::max(worst, max_abs_diff(oracle::dense(conjunctive_combine(m1, m2)), expected));
  }
  out.require(worst <= 1e-9, fmt("max deviation %.3g > 1e-9", worst));
  if (out.pass) out.detail = fmt("1000 pairs, max deviation %.3g", worst);
  return out;
}

// Combines masses[lo, hi) under a random bracketing.
MassFunction random_bracketing(const std::vector<MassFunction>& masses, std::size_t lo, std::size_t hi,
                               std::mt19937_64& gen) {
  if (hi - lo == 1) return masses[lo];
  std::uniform_int_distribution<std::size_t> split(lo + 1, hi - 1);
  const std::size_t mid = split(gen);
  return conjunctive_combine(random_bracketing(masses, lo, mid, gen), random_bracketing(masses, mid, hi, gen));
}

// 2
Outcome normalization_closure() {
  Outcome out;
  std::mt19937_64 gen(77);
  double worst_total = 0.0, worst_order = 0.0;
  for (int chain = 0; chain < 500; ++chain) {
    const std::size_t n = 2 + static_cast<std::size_t>(chain % 3);
    const std::size_t length = 2 + static_cast<std::size_t>(chain % 4);
    std::vector<MassFunction> masses;
    for (std::size_t i = 0; i < length; ++i) masses.push_back(oracle::random_mass(gen, n, 5));
    const auto reference = oracle::dense(conjunctive_combine(masses, n));
    for (int order = 0; order < 8; ++order) {
      auto shuffled = masses;
      std::shuffle(shuffled.begin(), shuffled.end(), gen);
      const auto m = random_bracketing(shuffled, 0, shuffled.size(), gen);
      worst_total = std::max(worst_total, std::abs(m.total() - 1.0));
      worst_order = std::max(worst_order, max_abs_diff(oracle::dense(m), reference));
    }
  }
  out.require(worst_total <= 1e-9, fmt("total mass off by %.3g", worst_total));
  out.require(worst_order <= 1e-9, fmt("association orders disagree by %.3g", worst_order));
  if (out.pass) out.detail = fmt("500 chains x 8 orders, |sum-1| <= %.3g, order spread %.3g", worst_total, worst_order);
  return out;
}

// 3
Outcome bel_pl_duality() {
  Outcome out;
  std::mt19937_64 gen(3);
  double worst = 0.0;
  bool ordered = true;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 4);
    const auto m = oracle::random_mass(gen, n, 6);
    for (FocalSet::Bits a = 0; a < (1U << n); ++a) {
      const FocalSet A(a, n);
      worst = std::max(worst, std::abs(belief(m, A) + plausibility(m, A.complement()) - (1.0 - conflict_mass(m))));
      ordered = ordered && belief(m, A) <= plausibility(m, A) + 1e-15;
    }
  }
  out.require(worst <= 1e-12, fmt("Bel(A)+Pl(A^c) deviates from 1-m(empty) by %.3g", worst));
  out.require(ordered, "Bel(A) > Pl(A) for some A");
  if (out.pass) out.detail = fmt("1000 masses, all subsets, max deviation %.3g", worst);
  return out;
}

// 4
Outcome pignistic_correctness() {
  Outcome out;
  std::mt19937_64 gen(4);
  double worst_sum = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + static_cast<std::size_t>(i % 6);
    const auto m = oracle::random_mass(gen, n, 8);
    if (conflict_mass(m) >= 1.0 - 1e-9) continue;
    const auto bet = pignistic(m);
    worst_sum = std::max(worst_sum, std::abs(std::accumulate(bet.begin(), bet.end(), 0.0) - 1.0));
  }
  out.require(worst_sum <= 1e-9, fmt("BetP sums off by %.3g", worst_sum));

  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 2 + static_cast<std::size_t>(i % 5);
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& x : p) s += (x = u(gen));
    std::vector<std::pair<FocalSet, double>> focals;
    for (std::size_t k = 0; k < n; ++k) focals.emplace_back(FocalSet::singleton(k, n), p[k] / s);
    const auto bet = pignistic(MassFunction(n, focals));
    for (std::size_t k = 0; k < n; ++k) out.require(std::abs(bet[k] - p[k] / s) <= 1e-12, "Bayesian mass not preserved");
  }
  for (std::size_t n = 1; n <= kMaxClasses; ++n)
    for (double b : pignistic(MassFunction::vacuous(n)))
      out.require(std::abs(b - 1.0 / static_cast<double>(n)) <= 1e-12, "vacuous mass not uniform");

  const MassFunction worked(2, {{FocalSet(0b01, 2), 0.3}, {FocalSet(0b10, 2), 0.2}, {FocalSet(0b11, 2), 0.2},
                                {FocalSet(0, 2), 0.3}});
  const auto bet = pignistic(worked);
  out.require(std::abs(bet[0] - 4.0 / 7.0) <= 1e-12 && std::abs(bet[1] - 3.0 / 7.0) <= 1e-12,
              fmt("worked example gave [%.15f, %.15f]", bet[0], bet[1]));
  if (out.pass) out.detail = fmt("sums within %.3g, worked example [%.12f, %.12f]", worst_sum, bet[0], bet[1]);
  return out;
}

// 5
Outcome appriou_model() {
  Outcome out;
  double worst = 0.0;
  double smallest_violation = INFINITY;
  std::size_t violations_checked = 0;
  for (int ip = 1; ip <= 20; ++ip) {
    const double p_max = ip / 20.0;
    const double r = 1.0 / p_max;
    for (int iq = 0; iq <= 20; ++iq) {
      const double p = p_max * iq / 20.0;
      for (int ia = 0; ia <= 10; ++ia) {
        const double alpha = ia / 10.0;
        worst = std::max(worst, std::abs(appriou_masses(p, r, alpha).total() - 1.0));
        if (r > 1.0 && alpha > 0.0) {
          const double excess = appriou_masses(p, r, alpha, AppriouVariant::AsPrinted).total() - 1.0;
          smallest_violation = std::min(smallest_violation, excess);
          ++violations_checked;
        }
      }
    }
  }
  // Same check through the mass-function path.
  const AppriouParams params({{0.2, 0.5, 0.35}, {0.9, 0.1, 0.0}});
  for (std::size_t j = 0; j < 2; ++j)
    for (ClassIndex i = 0; i < 3; ++i) worst = std::max(worst, std::abs(appriou_mass(j, i, params).total() - 1.0));
  out.require(worst <= 1e-12, fmt("corrected masses sum off by %.3g", worst));
  out.require(smallest_violation > 1e-12, fmt("as-printed variant summed to 1 (excess %.3g) with R > 1", smallest_violation));
  if (out.pass)
    out.detail = fmt("corrected |sum-1| <= %.3g; as-printed excess >= %.3g over %.0f grid points with R>1, alpha>0",
                     worst, smallest_violation, static_cast<double>(violations_checked));
  return out;
}

// Conjunctive combination of simple support masses, in closed form: the
// mass on {c} is (1 - Q_c) * prod_{c' != c} Q_c', with Q_c the product of
// (1 - s_t) over the neighbors of class c.
std::vector<double> simple_support_oracle(const std::vector<std::pair<ClassIndex, double>>& supports, std::size_t n) {
  std::vector<double> q(n, 1.0);
  for (auto [c, s] : supports) q[c] *= 1.0 - s;
  std::vector<double> dense(std::size_t{1} << n, 0.0);
  double assigned = 0.0;
  for (ClassIndex c = 0; c < n; ++c) {
    double v = 1.0 - q[c];
    for (ClassIndex o = 0; o < n; ++o)
      if (o != c) v *= q[o];
    dense[std::size_t{1} << c] += v;
    assigned += v;
  }
  double none = 1.0;
  for (double x : q) none *= x;
  dense.back() += none;
  dense[0] = 1.0 - assigned - none;
  return dense;
}

// 6
Outcome denoeux_model() {
  Outcome out;
  for (double gamma : {0.01, 0.5, 1.0, 7.0}) {
    out.require(denoeux_phi(gamma, 0.0) == 1.0, "phi(0) != 1");
    double previous = 1.0;
    for (int e = -40; e <= 40; ++e) {
      const double phi = denoeux_phi(gamma, std::pow(10.0, e / 10.0));
      out.require(phi <= previous && (phi < previous || phi == 0.0), fmt("phi not decreasing at gamma %.3g", gamma));
      previous = phi;
    }
    out.require(previous == 0.0, fmt("phi does not reach 0 for gamma %.3g", gamma));
  }

  std::vector<Prototype> exact{{{0.5, 0.5}, 2}, {{2.0, 1.0}, 0}};
  const TrainingSet one(3, exact, {1.0, 1.0, 1.0}, 1.0, 1);
  const auto categorical = denoeux_classify_mass(std::vector<double>{0.5, 0.5}, one);
  out.require(categorical.focal_elements().size() == 1 && categorical.mass(FocalSet::singleton(2, 3)) == 1.0,
              "zero-distance prototype did not give a categorical mass");

  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_real_distribution<double> gam(0.2, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    std::vector<Prototype> protos;
    for (int t = 0; t < 8; ++t) protos.push_back({{coord(gen), coord(gen)}, static_cast<ClassIndex>(gen() % n)});
    std::vector<double> gamma(n);
    for (auto& g : gamma) g = gam(gen);
    const TrainingSet ts(n, protos, gamma, 0.95, k);
    const std::vector<double> x{coord(gen), coord(gen)};

    // Brute-force neighbor selection and closed-form combination.
    std::vector<std::pair<double, std::size_t>> by_distance;
    for (std::size_t t = 0; t < protos.size(); ++t) {
      const double dx = x[0] - protos[t].features[0], dy = x[1] - protos[t].features[1];
      by_distance.emplace_back(std::sqrt(dx * dx + dy * dy), t);
    }
    std::sort(by_distance.begin(), by_distance.end());
    std::vector<std::pair<ClassIndex, double>> supports;
    for (std::size_t i = 0; i < k; ++i) {
      const auto& p = protos[by_distance[i].second];
      supports.emplace_back(p.cls, 0.95 * std::exp(-gamma[p.cls] * by_distance[i].first * by_distance[i].first));
    }
    worst = std::max(worst, max_abs_diff(oracle::dense(denoeux_classify_mass(x, ts)), simple_support_oracle(supports, n)));
  }
  out.require(worst <= 1e-9, fmt("k-NN mass deviates from hand combination by %.3g", worst));
  if (out.pass) out.detail = fmt("phi shape ok, 300 k<=3 cases within %.3g", worst);
  return out;
}

// 7
Outcome possibility_measures() {
  Outcome out;
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_norm = 0.0;
  const auto check_norm = [&](const PossibilityDistribution& d) {
    auto v = d.values();
    worst_norm = std::max(worst_norm, std::abs(*std::max_element(v.begin(), v.end()) - 1.0));
  };
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    std::vector<PossibilityDistribution> dists;
    for (int j = 0; j < 3; ++j) {
      std::vector<double> s(n);
      for (auto& x : s) x = trial % 17 == 0 && j == 0 ? 0.0 : u(gen);
      dists.push_back(to_possibility(s));
      check_norm(dists.back());
    }
    for (auto op : {PossibilityOperator::Min, PossibilityOperator::Max, PossibilityOperator::Mean,
                    PossibilityOperator::Median})
      check_norm(combine(dists, op));
    const auto& d = dists.front();
    for (FocalSet::Bits a = 0; a < (1U << n); ++a) {
      const FocalSet A(a, n);
      out.require(necessity_measure(d, A) == 1.0 - possibility_measure(d, A.complement()), "N(A) != 1 - Pi(A^c)");
      for (FocalSet::Bits b = 0; b < (1U << n); ++b) {
        const FocalSet B(b, n);
        out.require(possibility_measure(d, A | B) == std::max(possibility_measure(d, A), possibility_measure(d, B)),
                    "maxitivity violated");
      }
    }
  }
  out.require(worst_norm <= 1e-9, fmt("max pi off 1 by %.3g", worst_norm));
  if (out.pass) out.detail = fmt("exhaustive n<=4, max pi within %.3g of 1", worst_norm);
  return out;
}

// 8
Outcome vote_rules() {
  Outcome out;
  std::mt19937_64 gen(8);
  std::size_t compared = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 2 + gen() % 5;
    const std::size_t m = 1 + gen() % 9;
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back("c" + std::to_string(k));
    const Frame f(names);
    std::vector<ClassIndex> labels(m);
    for (auto& l : labels) l = gen() % n;
    const auto t = tally(f, labels);
    const auto majority = decide_majority(t);
    if (majority.is_conflict()) continue;
    ++compared;
    out.require(decide_threshold(t, 0.0, 0.0) == majority, "threshold(c=0,b=0) disagrees with majority");
  }
  std::size_t enumerated = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::vector<std::string> names;
    for (std::size_t k = 0; k < n; ++k) names.push_back("c" + std::to_string(k));
    const Frame f(names);
    for (std::size_t m = 1; m <= 7; ++m) {
      std::vector<ClassIndex> labels(m, 0);
      while (true) {
        ++enumerated;
        const auto t = tally(f, labels);
        const auto d = decide_absolute_majority(t);
        const double top = *std::max_element(t.counts.begin(), t.counts.end());
        if (top <= static_cast<double>(m) / 2) out.require(d.is_conflict(), "absolute majority fired at or below m/2");
        else out.require(!d.is_conflict() && t.counts[d.class_index()] == top, "absolute majority missed a winner");
        if (!d.is_conflict()) out.require(decide_majority(t) == d, "absolute majority without plain majority");
        std::size_t pos = 0;
        while (pos < m && ++labels[pos] == n) labels[pos++] = 0;
        if (pos == m) break;
      }
    }
  }
  if (out.pass)
    out.detail = fmt("%.0f unique-max tallies agree; %.0f exhaustive votes checked", static_cast<double>(compared),
                     static_cast<double>(enumerated));
  return out;
}

// 9
Outcome lam_suen() {
  Outcome out;
  const double analytic = oracle::majority_vote_accuracy(5, 0.7);
  out.require(std::abs(analytic - 0.83692) < 1e-5, fmt("binomial oracle gave %.6f", analytic));
  bench::SimConfig c;
  c.classes = {"a", "b"};
  c.priors = {0.5, 0.5};
  for (int j = 0; j < 5; ++j) c.sources.push_back({"s" + std::to_string(j), {0.7, 0.7}, 0.3});
  c.n_samples = 150000;  // thirds of 50,000
  c.n_trials = 1;
  c.seed = 1997;
  const auto report = bench::run_experiment(c, {{bench::MethodKind::VoteMajority}});
  const double acc = report.methods.at("vote-majority").accuracy;
  out.require(std::abs(acc - analytic) <= 0.01, fmt("accuracy %.5f vs analytic %.5f", acc, analytic));
  out.require(acc > 0.7, fmt("accuracy %.5f not above single-source 0.7", acc));
  if (out.pass) out.detail = fmt("accuracy %.5f, analytic %.5f", acc, analytic);
  return out;
}

// 10
Outcome protocol_regression() {
  Outcome out;
  const auto config = bench::default_config();
  const auto methods = bench::all_methods(config.methods.possibility);
  const auto first = bench::run_experiment(config, methods);
  const auto second = bench::run_experiment(config, methods);
  out.require(bench::report_to_json(first) == bench::report_to_json(second), "reruns differ");

  const double degraded = first.sources.at("run_length").test_accuracy;
  const double weighted = first.methods.at("vote-weighted").accuracy;
  const double appriou = first.methods.at("belief-appriou").accuracy;
  const double denoeux = first.methods.at("belief-denoeux").accuracy;
  const double majority = first.methods.at("vote-majority").accuracy;
  out.require(weighted > degraded, fmt("weighted vote %.4f <= degraded source %.4f", weighted, degraded));
  out.require(appriou > degraded, fmt("Appriou %.4f <= degraded source %.4f", appriou, degraded));
  out.require(denoeux > degraded, fmt("Denoeux %.4f <= degraded source %.4f", denoeux, degraded));
  out.require(denoeux >= majority, fmt("Denoeux %.4f < majority vote %.4f", denoeux, majority));
  if (out.pass)
    out.detail = fmt("degraded %.4f; weighted %.4f, Appriou %.4f", degraded, weighted, appriou) +
                 fmt(", Denoeux %.4f >= majority %.4f", denoeux, majority);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 11
Outcome io_round_trip() {
  Outcome out;
  const auto dir = std::filesystem::temp_directory_path() / ("evifuse_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto config = bench::default_config();

  const auto ds = bench::simulate(config);
  bench::save_dataset((dir / "a.csv").string(), ds);
  const auto loaded = bench::load_dataset((dir / "a.csv").string());
  out.require(loaded == ds, "loaded dataset differs from saved one");
  bench::save_dataset((dir / "b.csv").string(), loaded);
  out.require(slurp(dir / "a.csv") == slurp(dir / "b.csv"), "dataset CSV not byte-identical after round trip");

  const auto report = bench::run_experiment(ds, bench::all_methods(), {2, config.seed, config.methods, 0});
  bench::save_report((dir / "a.json").string(), report);
  bench::save_report((dir / "b.json").string(), bench::load_report((dir / "a.json").string()));
  out.require(slurp(dir / "a.json") == slurp(dir / "b.json"), "report JSON not byte-identical after round trip");

  const auto bytes = std::filesystem::file_size(dir / "a.csv");
  std::filesystem::remove_all(dir);
  if (out.pass) out.detail = fmt("%.0f-byte dataset CSV and report JSON stable", static_cast<double>(bytes));
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC01", "mass algebra matches dense brute force", 5.0, oracle_equivalence},
      {"AC02", "normalization closure under any association order", 0.0, normalization_closure},
      {"AC03", "belief/plausibility duality", 0.0, bel_pl_duality},
      {"AC04", "pignistic transform", 0.0, pignistic_correctness},
      {"AC05", "Appriou model sums to one; printed variant does not", 0.0, appriou_model},
      {"AC06", "Denoeux model and k-NN combination", 0.0, denoeux_model},
      {"AC07", "possibility and necessity measures", 0.0, possibility_measures},
      {"AC08", "vote decision rules", 0.0, vote_rules},
      {"AC09", "majority vote beats independent sources", 10.0, lam_suen},
      {"AC10", "protocol regression on the sediment scenario", 60.0, protocol_regression},
      {"AC11", "dataset CSV and report JSON round trip", 0.0, io_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && seconds >= c.time_limit_s && o.pass) {
      o.pass = false;
      o.detail = fmt("took %.2f s, limit %.0f s", seconds, c.time_limit_s);
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %s %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), seconds);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
