#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

#include "edgelearn/errors.h"
#include "edgelearn/harness.h"

namespace edgelearn {

namespace {

std::size_t to_count(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text.front() == '-') {
    throw InvalidConfig(key + ": expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(value);
}

bool to_flag(const std::string& key, const std::string& text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw InvalidConfig(key + ": expected true or false, got '" + text + "'");
}

void apply(TrialConfig& config, std::size_t& n_per_m, const std::string& key,
           const std::string& value) {
  if (key == "family") {
    config.family = parse_family(value);
  } else if (key == "algorithm") {
    config.algorithm = parse_algorithm(value);
  } else if (key == "n") {
    config.n = to_count(key, value);
  } else if (key == "n_per_m") {
    n_per_m = to_count(key, value);
  } else if (key == "m") {
    config.m = to_count(key, value);
  } else if (key == "d") {
    config.d = to_count(key, value);
  } else if (key == "k") {
    config.k = to_count(key, value);
  } else if (key == "cost_model") {
    config.model.kind = parse_cost_kind(value);
  } else if (key == "cost_scale") {
    config.model.scale = parse_positive_rational(value);
  } else if (key == "const_scale") {
    config.const_scale = parse_positive_rational(value);
  } else if (key == "seed") {
    config.seed = to_count(key, value);
  } else if (key == "batched_cgt") {
    config.batched_cgt = to_flag(key, value);
  } else {
    throw InvalidConfig("grid: unknown key '" + key + "'");
  }
}

std::vector<std::string> values_of(const std::string& key, const YAML::Node& node) {
  std::vector<std::string> out;
  if (node.IsScalar()) {
    out.push_back(node.Scalar());
  } else if (node.IsSequence()) {
    for (const auto& item : node) {
      if (!item.IsScalar()) throw InvalidConfig("grid." + key + ": nested values are not allowed");
      out.push_back(item.Scalar());
    }
  } else {
    throw InvalidConfig("grid." + key + ": expected a scalar or a list");
  }
  if (out.empty()) throw InvalidConfig("grid." + key + ": empty list");
  return out;
}

}  // namespace

Experiment parse_experiment(const std::string& yaml_text) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw InvalidConfig(std::string("config: ") + e.what());
  }
  if (!root.IsMap()) throw InvalidConfig("config: top level must be a map");

  Experiment experiment;
  for (const auto& section : root) {
    const auto name = section.first.as<std::string>();
    if (name != "experiment" && name != "grid") {
      throw InvalidConfig("config: unknown section '" + name + "'");
    }
  }
  if (const auto settings = root["experiment"]) {
    if (!settings.IsMap()) throw InvalidConfig("experiment: expected a map");
    for (const auto& entry : settings) {
      const auto key = entry.first.as<std::string>();
      if (!entry.second.IsScalar()) throw InvalidConfig("experiment." + key + ": expected a scalar");
      const auto value = entry.second.Scalar();
      if (key == "trials") {
        experiment.options.trials = to_count(key, value);
        if (experiment.options.trials == 0) throw InvalidConfig("trials must be positive");
      } else if (key == "jobs") {
        experiment.options.jobs = std::max<std::size_t>(1, to_count(key, value));
      } else {
        throw InvalidConfig("experiment: unknown key '" + key + "'");
      }
    }
  }

  const auto grid = root["grid"];
  if (!grid || !grid.IsMap()) throw InvalidConfig("config: missing grid map");
  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (const auto& entry : grid) {
    const auto key = entry.first.as<std::string>();
    axes.emplace_back(key, values_of(key, entry.second));
  }

  std::vector<std::size_t> at(axes.size(), 0);
  while (true) {
    TrialConfig config;
    std::size_t n_per_m = 0;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      apply(config, n_per_m, axes[a].first, axes[a].second[at[a]]);
    }
    if (n_per_m > 0) config.n = n_per_m * config.m;
    experiment.grid.push_back(config);

    // Odometer: the last key turns fastest.
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++at[a] < axes[a].second.size()) break;
      at[a] = 0;
      if (a == 0) return experiment;
    }
    if (axes.empty()) return experiment;
  }
}

Experiment load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_experiment(text.str());
}

}  // namespace edgelearn
