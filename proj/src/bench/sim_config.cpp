#include "evifuse/bench/sim_config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "evifuse/error.hpp"
#include "json.hpp"

namespace evifuse::bench {

using nlohmann::json;

void SimConfig::validate() const {
  const Frame f(classes);
  if (priors.size() != f.size()) throw ValidationError("need one prior per class");
  double sum = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("prior outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("priors sum to " + std::to_string(sum) + ", expected 1");
  if (sources.empty()) throw ValidationError("need at least one source");
  for (const auto& s : sources) {
    if (s.id.empty()) throw ValidationError("source id must not be empty");
    if (s.id.find(',') != std::string::npos) throw ValidationError("source id '" + s.id + "' contains a comma");
    if (s.reliability.size() != f.size())
      throw ValidationError("source '" + s.id + "' needs one reliability per class");
    for (double r : s.reliability)
      if (!(r >= 0.0 && r <= 1.0)) throw ValidationError("source '" + s.id + "' has a reliability outside [0,1]");
    if (!(s.temperature >= 0.0 && s.temperature <= 1.0))
      throw ValidationError("source '" + s.id + "' has a temperature outside [0,1]");
  }
  for (std::size_t a = 0; a < sources.size(); ++a)
    for (std::size_t b = a + 1; b < sources.size(); ++b)
      if (sources[a].id == sources[b].id) throw ValidationError("duplicate source id '" + sources[a].id + "'");
  for (const auto& name : classes)
    if (name.find(',') != std::string::npos) throw ValidationError("class name '" + name + "' contains a comma");
  if (n_samples == 0) throw ValidationError("n_samples must be positive");
  if (n_trials < 1) throw ValidationError("n_trials must be at least 1");
  if (!(methods.vote.c >= 0.0 && methods.vote.c <= 1.0)) throw ValidationError("vote.c must lie in [0,1]");
  if (methods.denoeux.k < 1) throw ValidationError("denoeux.k must be at least 1");
  if (!(methods.denoeux.alpha >= 0.0 && methods.denoeux.alpha <= 1.0))
    throw ValidationError("denoeux.alpha must lie in [0,1]");
}

std::vector<double> sediment_priors() {
  std::vector<double> raw{54.52, 21.35, 8.80, 5.50, 0.77, 2.40};
  double sum = 0.0;
  for (double p : raw) sum += p;
  for (double& p : raw) p /= sum;
  return raw;
}

SimConfig default_config() {
  SimConfig c;
  c.classes = {"sand", "rock", "ripple", "silt", "cobble", "shadow"};
  c.priors = sediment_priors();
  const auto flat = [&](double r) { return std::vector<double>(c.classes.size(), r); };
  c.sources = {
      {"cooccurrence", flat(0.70), 0.30},
      {"run_length", flat(0.50), 0.30},
      {"wavelet", flat(0.69), 0.30},
      {"gabor", flat(0.66), 0.30},
  };
  c.n_samples = 3000;
  c.n_trials = 10;
  c.seed = 2004;
  return c;
}

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

MethodParams method_params_from(const json& j) {
  MethodParams m;
  if (j.contains("vote")) {
    const auto& v = j.at("vote");
    m.vote.c = get_or(v, "c", m.vote.c);
    m.vote.b = get_or(v, "b", m.vote.b);
  }
  if (j.contains("possibility"))
    m.possibility = parse_possibility_operator(get_or<std::string>(j.at("possibility"), "operator", "max"));
  if (j.contains("denoeux")) {
    const auto& d = j.at("denoeux");
    m.denoeux.k = get_or(d, "k", m.denoeux.k);
    m.denoeux.alpha = get_or(d, "alpha", m.denoeux.alpha);
  }
  if (j.contains("appriou")) m.appriou.as_printed = get_or(j.at("appriou"), "as_printed", false);
  return m;
}

json parse_document(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ValidationError("config must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid config JSON: ") + e.what());
  }
}

}  // namespace

SimConfig parse_config(const std::string& json_text) {
  const json j = parse_document(json_text);
  SimConfig c;
  try {
    c.classes = j.at("classes").get<std::vector<std::string>>();
    c.priors = j.at("priors").get<std::vector<double>>();
    for (const auto& s : j.at("sources")) {
      SourceProfile p;
      p.id = s.at("id").get<std::string>();
      p.reliability = s.at("reliability").get<std::vector<double>>();
      p.temperature = get_or(s, "temperature", p.temperature);
      c.sources.push_back(std::move(p));
    }
    c.n_samples = j.at("n_samples").get<std::size_t>();
    c.n_trials = get_or<std::size_t>(j, "n_trials", 1);
    c.seed = get_or<std::uint64_t>(j, "seed", 0);
    c.methods = method_params_from(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
  c.validate();
  return c;
}

MethodParams parse_method_params(const std::string& json_text) {
  try {
    return method_params_from(parse_document(json_text));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid config: ") + e.what());
  }
}

SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string config_to_json(const SimConfig& c) {
  json j;
  j["classes"] = c.classes;
  j["priors"] = c.priors;
  j["sources"] = json::array();
  for (const auto& s : c.sources)
    j["sources"].push_back({{"id", s.id}, {"reliability", s.reliability}, {"temperature", s.temperature}});
  j["n_samples"] = c.n_samples;
  j["n_trials"] = c.n_trials;
  j["seed"] = c.seed;
  j["vote"] = {{"c", c.methods.vote.c}, {"b", c.methods.vote.b}};
  j["possibility"] = {{"operator", std::string(to_string(c.methods.possibility))}};
  j["denoeux"] = {{"k", c.methods.denoeux.k}, {"alpha", c.methods.denoeux.alpha}};
  j["appriou"] = {{"as_printed", c.methods.appriou.as_printed}};
  return j.dump(2) + "\n";
}

}  // namespace evifuse::bench
