#include "evifuse/bench/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "evifuse/belief.hpp"
#include "evifuse/bench/rng.hpp"
#include "evifuse/calibration.hpp"
#include "evifuse/error.hpp"
#include "evifuse/vote.hpp"
#include "json.hpp"

namespace evifuse::bench {

using nlohmann::json;

std::string Method::name() const {
  switch (kind) {
    case MethodKind::VoteMajority: return "vote-majority";
    case MethodKind::VoteAbsolute: return "vote-absolute";
    case MethodKind::VoteWeighted: return "vote-weighted";
    case MethodKind::Possibility: return "possibility-" + std::string(to_string(op));
    case MethodKind::BeliefAppriou: return "belief-appriou";
    case MethodKind::BeliefDenoeux: return "belief-denoeux";
  }
  return "?";
}

Method parse_method(std::string_view name, PossibilityOperator default_op) {
  if (name == "vote-majority") return {MethodKind::VoteMajority};
  if (name == "vote-absolute") return {MethodKind::VoteAbsolute};
  if (name == "vote-weighted") return {MethodKind::VoteWeighted};
  if (name == "belief-appriou") return {MethodKind::BeliefAppriou};
  if (name == "belief-denoeux") return {MethodKind::BeliefDenoeux};
  if (name == "possibility") return {MethodKind::Possibility, default_op};
  constexpr std::string_view prefix = "possibility-";
  if (name.substr(0, prefix.size()) == prefix)
    return {MethodKind::Possibility, parse_possibility_operator(name.substr(prefix.size()))};
  throw ValidationError("unknown method '" + std::string(name) + "'");
}

std::vector<Method> all_methods(PossibilityOperator op) {
  return {{MethodKind::VoteMajority},  {MethodKind::VoteAbsolute},  {MethodKind::VoteWeighted},
          {MethodKind::Possibility, op}, {MethodKind::BeliefAppriou}, {MethodKind::BeliefDenoeux}};
}

std::vector<Method> parse_methods(std::string_view list, PossibilityOperator default_op) {
  std::vector<Method> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    const auto item = list.substr(start, comma - start);
    if (item == "all") {
      for (const auto& m : all_methods(default_op))
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    } else if (!item.empty()) {
      const Method m = parse_method(item, default_op);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = comma + 1;
  }
  if (out.empty()) throw ValidationError("no fusion method selected");
  return out;
}

namespace {

struct MethodTally {
  std::size_t correct = 0;
  std::size_t conflicts = 0;
  double conflict_mass = 0.0;
  std::vector<std::size_t> class_correct;
};

struct TrialResult {
  std::size_t test_size = 0;
  std::vector<std::size_t> class_total;
  std::vector<MethodTally> methods;
  std::vector<double> source_calibration_accuracy;
  std::vector<double> source_test_accuracy;
};

std::vector<double> concat_scores(const Sample& s) {
  std::vector<double> x;
  for (const auto& rec : s.outputs) x.insert(x.end(), rec.scores.begin(), rec.scores.end());
  return x;
}

double source_accuracy(const Dataset& ds, std::span<const std::size_t> idx, std::size_t source) {
  if (idx.empty()) return 0.0;
  std::size_t hit = 0;
  for (auto i : idx) hit += ds.samples[i].outputs[source].label == ds.samples[i].truth ? 1 : 0;
  return static_cast<double>(hit) / static_cast<double>(idx.size());
}

// Everything fitted on the fusion-calibration third.
struct Calibrated {
  std::vector<ConfusionMatrix> confusion;
  std::optional<VoteWeights> weights;
  std::optional<TrainingSet> prototypes;
};

Calibrated calibrate(const Dataset& ds, std::span<const std::size_t> idx, const std::vector<Method>& methods,
                     const MethodParams& params) {
  Calibrated cal;
  const std::size_t n = ds.frame.size();
  for (std::size_t j = 0; j < ds.sources(); ++j) {
    ConfusionMatrix cm(n, ds.source_ids[j]);
    for (auto i : idx) cm.add(ds.samples[i].truth, ds.samples[i].outputs[j].label);
    cal.confusion.push_back(std::move(cm));
  }
  const auto wants = [&](MethodKind k) {
    return std::any_of(methods.begin(), methods.end(), [k](const Method& m) { return m.kind == k; });
  };
  if (wants(MethodKind::VoteWeighted)) cal.weights = vote_weights(cal.confusion);
  if (wants(MethodKind::BeliefDenoeux)) {
    std::vector<Prototype> protos;
    protos.reserve(idx.size());
    for (auto i : idx) protos.push_back({concat_scores(ds.samples[i]), ds.samples[i].truth});
    const std::size_t k = std::min(params.denoeux.k, protos.size());
    cal.prototypes = TrainingSet::fit(n, std::move(protos), params.denoeux.alpha, k);
  }
  return cal;
}

struct Outcome {
  Decision decision;
  double conflict_mass = 0.0;
};

Outcome fuse(const Dataset& ds, const Sample& s, const Method& method, const Calibrated& cal,
             const MethodParams& params) {
  std::vector<ClassIndex> labels;
  labels.reserve(s.outputs.size());
  for (const auto& rec : s.outputs) labels.push_back(rec.label);

  switch (method.kind) {
    case MethodKind::VoteMajority:
      return {decide_majority(tally(ds.frame, labels))};
    case MethodKind::VoteAbsolute:
      return {decide_absolute_majority(tally(ds.frame, labels))};
    case MethodKind::VoteWeighted:
      return {decide_threshold(tally(ds.frame, labels, &*cal.weights), params.vote.c, params.vote.b)};
    case MethodKind::Possibility: {
      std::vector<PossibilityDistribution> dists;
      dists.reserve(s.outputs.size());
      for (const auto& rec : s.outputs) dists.push_back(to_possibility(rec.scores));
      return {decide_possibilistic(combine(dists, method.op))};
    }
    case MethodKind::BeliefAppriou: {
      // Sources whose answer never occurred during calibration carry no
      // likelihood information and are left out.
      std::vector<std::vector<double>> rows;
      for (auto& row : observation_likelihoods(cal.confusion, labels))
        if (*std::max_element(row.begin(), row.end()) > 0.0) rows.push_back(std::move(row));
      const MassFunction m =
          rows.empty() ? MassFunction::vacuous(ds.frame)
                       : appriou_fuse(AppriouParams(std::move(rows)),
                                      params.appriou.as_printed ? AppriouVariant::AsPrinted : AppriouVariant::Corrected);
      return {decide_pignistic(m), conflict_mass(m)};
    }
    case MethodKind::BeliefDenoeux: {
      const MassFunction m = denoeux_classify_mass(concat_scores(s), *cal.prototypes);
      return {decide_pignistic(m), conflict_mass(m)};
    }
  }
  throw std::logic_error("unhandled fusion method");
}

TrialResult run_trial(const Dataset& ds, const std::vector<Method>& methods, const ExperimentOptions& opts,
                      std::size_t trial) {
  const std::size_t total = ds.samples.size();
  const std::size_t third = total / 3;

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(opts.seed, trial + 1);
  for (std::size_t i = total; i > 1; --i) std::swap(order[i - 1], order[rng.index(i)]);

  const std::span<const std::size_t> all(order);
  const auto source_cal = all.subspan(0, third);
  const auto fusion_cal = all.subspan(third, third);
  const auto test = all.subspan(2 * third);

  const std::size_t n = ds.frame.size();
  TrialResult r;
  r.test_size = test.size();
  r.class_total.assign(n, 0);
  for (std::size_t j = 0; j < ds.sources(); ++j) {
    r.source_calibration_accuracy.push_back(source_accuracy(ds, source_cal, j));
    r.source_test_accuracy.push_back(source_accuracy(ds, test, j));
  }

  const Calibrated cal = calibrate(ds, fusion_cal, methods, opts.params);
  r.methods.assign(methods.size(), MethodTally{0, 0, 0.0, std::vector<std::size_t>(n, 0)});
  for (auto i : test) {
    const Sample& s = ds.samples[i];
    ++r.class_total[s.truth];
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const Outcome o = fuse(ds, s, methods[m], cal, opts.params);
      auto& t = r.methods[m];
      t.conflict_mass += o.conflict_mass;
      if (o.decision.is_conflict()) {
        ++t.conflicts;
      } else if (o.decision.class_index() == s.truth) {
        ++t.correct;
        ++t.class_correct[s.truth];
      }
    }
  }
  return r;
}

}  // namespace

ExperimentReport run_experiment(const Dataset& ds, const std::vector<Method>& methods, const ExperimentOptions& opts) {
  if (methods.empty()) throw ValidationError("no fusion method selected");
  if (opts.n_trials < 1) throw ValidationError("n_trials must be at least 1");
  if (ds.samples.size() / 3 == 0)
    throw ValidationError("dataset of " + std::to_string(ds.samples.size()) +
                          " samples is too small to split into three non-empty parts");
  if (!(opts.params.vote.c >= 0.0 && opts.params.vote.c <= 1.0)) throw ValidationError("vote.c must lie in [0,1]");
  if (opts.params.denoeux.k < 1) throw ValidationError("denoeux.k must be at least 1");

  std::vector<TrialResult> results(opts.n_trials);
  std::vector<std::exception_ptr> errors(opts.n_trials);
  std::size_t workers = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min(workers, opts.n_trials);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t t = next++; t < opts.n_trials; t = next++) {
      try {
        results[t] = run_trial(ds, methods, opts, t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ExperimentReport report;
  report.seed = opts.seed;
  report.n_trials = opts.n_trials;
  const double trials = static_cast<double>(opts.n_trials);
  const std::size_t n = ds.frame.size();

  for (std::size_t m = 0; m < methods.size(); ++m) {
    MethodReport mr;
    std::vector<double> class_sum(n, 0.0);
    std::vector<std::size_t> class_trials(n, 0);
    for (const auto& r : results) {
      const auto& t = r.methods[m];
      const double size = static_cast<double>(r.test_size);
      mr.accuracy += static_cast<double>(t.correct) / size;
      mr.conflict_rate += static_cast<double>(t.conflicts) / size;
      mr.mean_conflict_mass += t.conflict_mass / size;
      for (ClassIndex k = 0; k < n; ++k) {
        if (r.class_total[k] == 0) continue;
        class_sum[k] += static_cast<double>(t.class_correct[k]) / static_cast<double>(r.class_total[k]);
        ++class_trials[k];
      }
    }
    mr.accuracy /= trials;
    mr.conflict_rate /= trials;
    mr.mean_conflict_mass /= trials;
    for (ClassIndex k = 0; k < n; ++k)
      if (class_trials[k] > 0) mr.per_class[ds.frame.label(k)] = class_sum[k] / static_cast<double>(class_trials[k]);
    report.methods[methods[m].name()] = std::move(mr);
  }
  for (std::size_t j = 0; j < ds.sources(); ++j) {
    SourceReport sr;
    for (const auto& r : results) {
      sr.calibration_accuracy += r.source_calibration_accuracy[j];
      sr.test_accuracy += r.source_test_accuracy[j];
    }
    sr.calibration_accuracy /= trials;
    sr.test_accuracy /= trials;
    report.sources[ds.source_ids[j]] = sr;
  }
  return report;
}

ExperimentReport run_experiment(const SimConfig& config, const std::vector<Method>& methods) {
  const Dataset ds = simulate(config);
  ExperimentOptions opts;
  opts.n_trials = config.n_trials;
  opts.seed = config.seed;
  opts.params = config.methods;
  return run_experiment(ds, methods, opts);
}

// Report I/O

std::string report_to_json(const ExperimentReport& report) {
  json j;
  j["seed"] = report.seed;
  j["n_trials"] = report.n_trials;
  j["methods"] = json::object();
  for (const auto& [name, m] : report.methods) {
    j["methods"][name] = {{"accuracy", m.accuracy},
                          {"per_class", m.per_class},
                          {"conflict_rate", m.conflict_rate},
                          {"mean_conflict_mass", m.mean_conflict_mass}};
  }
  j["sources"] = json::object();
  for (const auto& [name, s] : report.sources)
    j["sources"][name] = {{"calibration_accuracy", s.calibration_accuracy}, {"test_accuracy", s.test_accuracy}};
  return j.dump(2) + "\n";
}

ExperimentReport report_from_json(const std::string& text) {
  ExperimentReport report;
  try {
    const json j = json::parse(text);
    report.seed = j.at("seed").get<std::uint64_t>();
    report.n_trials = j.at("n_trials").get<std::size_t>();
    for (const auto& [name, m] : j.at("methods").items()) {
      MethodReport mr;
      mr.accuracy = m.at("accuracy").get<double>();
      mr.per_class = m.at("per_class").get<std::map<std::string, double>>();
      mr.conflict_rate = m.at("conflict_rate").get<double>();
      mr.mean_conflict_mass = m.at("mean_conflict_mass").get<double>();
      report.methods[name] = std::move(mr);
    }
    if (j.contains("sources"))
      for (const auto& [name, s] : j.at("sources").items())
        report.sources[name] = {s.at("calibration_accuracy").get<double>(), s.at("test_accuracy").get<double>()};
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid report JSON: ") + e.what());
  }
  return report;
}

void save_report(const std::string& path, const ExperimentReport& report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write report '" + path + "'");
  out << report_to_json(report);
}

ExperimentReport load_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open report '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return report_from_json(ss.str());
}

void print_report(std::ostream& out, const ExperimentReport& report) {
  char line[128];
  out << "seed " << report.seed << ", " << report.n_trials << " trial(s)\n";
  std::snprintf(line, sizeof line, "%-22s %9s %9s %9s\n", "method", "accuracy", "conflict", "m(empty)");
  out << line;
  for (const auto& [name, m] : report.methods) {
    std::snprintf(line, sizeof line, "%-22s %9.4f %9.4f %9.4f\n", name.c_str(), m.accuracy, m.conflict_rate,
                  m.mean_conflict_mass);
    out << line;
  }
  for (const auto& [name, s] : report.sources) {
    std::snprintf(line, sizeof line, "source:%-15s %9.4f\n", name.c_str(), s.test_accuracy);
    out << line;
  }
}

}  // namespace evifuse::bench
