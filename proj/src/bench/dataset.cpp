#include "evifuse/bench/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <unordered_map>

#include "evifuse/bench/rng.hpp"
#include "evifuse/error.hpp"

namespace evifuse::bench {

namespace {

constexpr double kScoreScale = 1e9;
constexpr std::uint64_t kDataStream = 0;

double quantize(double x) { return std::round(x * kScoreScale) / kScoreScale; }

}  // namespace

SourceOutput Dataset::symbolic(std::size_t sample, std::size_t source) const {
  return SourceOutput::symbolic(frame, samples.at(sample).outputs.at(source).label);
}

SourceOutput Dataset::numeric(std::size_t sample, std::size_t source) const {
  return SourceOutput::numeric(frame, samples.at(sample).outputs.at(source).scores);
}

Dataset simulate(const SimConfig& config) {
  config.validate();
  Dataset ds{config.frame(), {}, {}};
  const std::size_t n = ds.frame.size();
  for (const auto& s : config.sources) ds.source_ids.push_back(s.id);

  Rng rng(config.seed, kDataStream);
  ds.samples.reserve(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    Sample sample;
    sample.id = std::to_string(i + 1);
    sample.truth = rng.categorical(config.priors);
    for (const auto& src : config.sources) {
      SourceRecord rec;
      rec.label = sample.truth;
      if (n > 1 && !rng.bernoulli(src.reliability[sample.truth])) {
        const auto shift = static_cast<ClassIndex>(rng.index(n - 1));
        rec.label = shift < sample.truth ? shift : shift + 1;
      }
      rec.scores.resize(n);
      for (ClassIndex k = 0; k < n; ++k) {
        const double peak = k == rec.label ? 1.0 : 0.0;
        const double s = (1.0 - src.temperature) * peak + src.temperature * rng.uniform();
        rec.scores[k] = quantize(std::clamp(s, 0.0, 1.0));
      }
      sample.outputs.push_back(std::move(rec));
    }
    ds.samples.push_back(std::move(sample));
  }
  return ds;
}

void save_dataset(std::ostream& out, const Dataset& ds) {
  for (const auto& name : ds.frame.labels())
    if (name.find(',') != std::string::npos) throw ValidationError("class name '" + name + "' contains a comma");
  for (const auto& id : ds.source_ids)
    if (id.find(',') != std::string::npos) throw ValidationError("source id '" + id + "' contains a comma");

  out << "sample_id,true_class,source_id,label";
  for (const auto& name : ds.frame.labels()) out << ",score_" << name;
  out << '\n';
  char buf[32];
  for (const auto& sample : ds.samples) {
    if (sample.outputs.size() != ds.sources()) throw ValidationError("sample '" + sample.id + "' has the wrong number of sources");
    for (std::size_t j = 0; j < ds.sources(); ++j) {
      const auto& rec = sample.outputs[j];
      out << sample.id << ',' << ds.frame.label(sample.truth) << ',' << ds.source_ids[j] << ','
          << ds.frame.label(rec.label);
      for (double s : rec.scores) {
        std::snprintf(buf, sizeof buf, "%.9f", s);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
}

void save_dataset(const std::string& path, const Dataset& ds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write dataset '" + path + "'");
  save_dataset(out, ds);
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string line_prefix(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

double parse_score(const std::string& cell, std::size_t line_no) {
  double v = 0.0;
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (cell.empty() || ec != std::errc() || ptr != last)
    throw ValidationError(line_prefix(line_no) + "malformed score '" + cell + "'");
  if (!std::isfinite(v) || v < 0.0 || v > 1.0)
    throw ValidationError(line_prefix(line_no) + "score " + cell + " outside [0,1]");
  return v;
}

}  // namespace

Dataset load_dataset(std::istream& in, const std::string& truth_col) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("dataset is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_row(line);

  std::optional<std::size_t> col_id, col_truth, col_source, col_label;
  std::vector<std::size_t> score_cols;
  std::vector<std::string> classes;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const auto& h = header[c];
    if (h == "sample_id") col_id = c;
    else if (h == truth_col) col_truth = c;
    else if (h == "source_id") col_source = c;
    else if (h == "label") col_label = c;
    else if (h.rfind("score_", 0) == 0) {
      score_cols.push_back(c);
      classes.push_back(h.substr(6));
    }
  }
  if (!col_id || !col_truth || !col_source || !col_label)
    throw ValidationError(line_prefix(1) + "header must contain sample_id, " + truth_col + ", source_id and label");
  if (score_cols.empty()) throw ValidationError(line_prefix(1) + "header has no score_<class> columns");

  Dataset ds{Frame(classes), {}, {}};
  std::unordered_map<std::string, std::size_t> sample_index;
  std::unordered_map<std::string, std::size_t> source_index;
  std::vector<std::vector<std::optional<SourceRecord>>> pending;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size())
      throw ValidationError(line_prefix(line_no) + "expected " + std::to_string(header.size()) + " columns, found " +
                            std::to_string(cells.size()));
    const auto class_of = [&](const std::string& name) {
      auto k = ds.frame.find(name);
      if (!k) throw ValidationError(line_prefix(line_no) + "unknown class name '" + name + "'");
      return *k;
    };
    const std::string& sid = cells[*col_id];
    const std::string& src = cells[*col_source];
    if (sid.empty()) throw ValidationError(line_prefix(line_no) + "empty sample_id");
    if (src.empty()) throw ValidationError(line_prefix(line_no) + "empty source_id");
    const ClassIndex truth = class_of(cells[*col_truth]);

    SourceRecord rec;
    rec.label = class_of(cells[*col_label]);
    for (std::size_t c : score_cols) rec.scores.push_back(parse_score(cells[c], line_no));

    auto [sit, new_sample] = sample_index.try_emplace(sid, ds.samples.size());
    if (new_sample) {
      ds.samples.push_back(Sample{sid, truth, {}});
      pending.emplace_back();
    } else if (ds.samples[sit->second].truth != truth) {
      throw ValidationError(line_prefix(line_no) + "sample '" + sid + "' has conflicting true classes");
    }
    auto [jt, new_source] = source_index.try_emplace(src, ds.source_ids.size());
    if (new_source) {
      if (ds.samples.size() > 1)
        throw ValidationError(line_prefix(line_no) + "source '" + src + "' does not appear in the first sample");
      ds.source_ids.push_back(src);
    }
    auto& slots = pending[sit->second];
    if (slots.size() < ds.source_ids.size()) slots.resize(ds.source_ids.size());
    if (slots[jt->second]) throw ValidationError(line_prefix(line_no) + "duplicate row for sample '" + sid + "', source '" + src + "'");
    slots[jt->second] = std::move(rec);
  }
  if (ds.samples.empty()) throw ValidationError("dataset has no rows");

  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    auto& slots = pending[i];
    slots.resize(ds.source_ids.size());
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (!slots[j])
        throw ValidationError("sample '" + ds.samples[i].id + "' has no row for source '" + ds.source_ids[j] + "'");
      ds.samples[i].outputs.push_back(std::move(*slots[j]));
    }
  }
  return ds;
}

Dataset load_dataset(const std::string& path, const std::string& truth_col) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open dataset '" + path + "'");
  return load_dataset(in, truth_col);
}

}  // namespace evifuse::bench
