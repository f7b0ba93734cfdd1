#include "corrtherm/config.hpp"

#include <fstream>
#include <set>

namespace corrtherm {

using nlohmann::json;

Task parse_task(const std::string& name) {
  if (name == "pressure") return Task::Pressure;
  if (name == "density") return Task::Density;
  if (name == "entropy") return Task::Entropy;
  if (name == "markov") return Task::Markov;
  if (name == "cylinders") return Task::Cylinders;
  if (name == "check") return Task::Check;
  throw ConfigError("unknown task: " + name);
}

std::string task_name(Task t) {
  switch (t) {
    case Task::Pressure:
      return "pressure";
    case Task::Density:
      return "density";
    case Task::Entropy:
      return "entropy";
    case Task::Markov:
      return "markov";
    case Task::Cylinders:
      return "cylinders";
    case Task::Check:
      return "check";
  }
  return "?";
}

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.contains(it.key()))
      throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad value for \"") + key + "\": " + e.what());
  }
}

}  // namespace

GeneratorMap generator_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("generator spec needs a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "circle_linear") {
    reject_unknown(j, {"kind", "p", "c"}, "circle_linear generator");
    return GeneratorMap::circle_linear(j.at("p").get<int>(), get_or(j, "c", 0.0));
  }
  if (kind == "circle_perturbed") {
    reject_unknown(j, {"kind", "p", "c", "eps"}, "circle_perturbed generator");
    return GeneratorMap::circle_perturbed(j.at("p").get<int>(), get_or(j, "c", 0.0),
                                          j.at("eps").get<double>());
  }
  if (kind == "torus_linear") {
    reject_unknown(j, {"kind", "A", "c"}, "torus_linear generator");
    const auto A = j.at("A").get<std::vector<std::vector<std::int64_t>>>();
    auto c = get_or(j, "c", std::vector<double>(A.size(), 0.0));
    return GeneratorMap::torus_linear(A, c);
  }
  throw ConfigError("unknown generator kind: " + kind);
}

json generator_to_json(const GeneratorMap& g) {
  json j;
  switch (g.kind()) {
    case GeneratorMap::Kind::CircleLinear:
      j["kind"] = "circle_linear";
      j["p"] = g.degree();
      j["c"] = g.lift_base();
      break;
    case GeneratorMap::Kind::CirclePerturbed: {
      j["kind"] = "circle_perturbed";
      j["p"] = g.linear_slope();
      j["c"] = g.lift_base();
      // recover eps from the Jacobian at 0: Jac(0) = p + eps
      j["eps"] = g.jacobian(Point(0.0)) - g.linear_slope();
      break;
    }
    case GeneratorMap::Kind::TorusLinear: {
      j["kind"] = "torus_linear";
      std::vector<std::vector<std::int64_t>> A(static_cast<std::size_t>(g.dimension()));
      for (int i = 0; i < g.dimension(); ++i)
        for (int jc = 0; jc < g.dimension(); ++jc) A[static_cast<std::size_t>(i)].push_back(g.matrix_entry(i, jc));
      j["A"] = A;
      std::vector<double> c;
      for (const auto& r : g.rational_shift_vector()) c.push_back(r.to_double());
      j["c"] = c;
      break;
    }
  }
  return j;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(j,
                 {"task", "generators", "potential", "kernel", "resolution", "n_min", "n_max",
                  "epsilon", "tol", "max_iter", "seed", "budget", "steps", "burnin", "x0",
                  "partition_size", "word_len", "word", "out_dir", "threads"},
                 "config");
  ExperimentConfig cfg;
  cfg.task = parse_task(get_or<std::string>(j, "task", "check"));
  if (j.contains("generators")) {
    if (!j.at("generators").is_array()) throw ConfigError("\"generators\" must be an array");
    for (const auto& spec : j.at("generators")) {
      generator_from_json(spec);  // validate now, build later
      cfg.generator_specs.push_back(spec);
    }
  }
  cfg.potential = get_or<std::string>(j, "potential", cfg.potential);
  Potential::parse(cfg.potential);  // validate the name
  if (j.contains("kernel")) {
    const auto& kj = j.at("kernel");
    if (kj.is_string()) {
      if (kj.get<std::string>() != "uniform")
        throw ConfigError("kernel must be \"uniform\" or an array of weights");
    } else {
      cfg.kernel_weights = kj.get<std::vector<double>>();
    }
  }
  cfg.resolution = get_or(j, "resolution", cfg.resolution);
  cfg.n_min = get_or(j, "n_min", cfg.n_min);
  cfg.n_max = get_or(j, "n_max", cfg.n_max);
  cfg.epsilon = get_or(j, "epsilon", cfg.epsilon);
  cfg.tol = get_or(j, "tol", cfg.tol);
  cfg.max_iter = get_or(j, "max_iter", cfg.max_iter);
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.budget = get_or<std::uint64_t>(j, "budget", cfg.budget);
  cfg.steps = get_or(j, "steps", cfg.steps);
  cfg.burnin = get_or(j, "burnin", cfg.burnin);
  cfg.x0 = get_or(j, "x0", cfg.x0);
  cfg.partition_size = get_or(j, "partition_size", cfg.partition_size);
  cfg.word_len = get_or(j, "word_len", cfg.word_len);
  cfg.word = get_or(j, "word", cfg.word);
  cfg.out_dir = get_or<std::string>(j, "out_dir", cfg.out_dir);
  cfg.threads = get_or(j, "threads", cfg.threads);

  if (cfg.task != Task::Check && cfg.generator_specs.empty())
    throw ConfigError("task \"" + task_name(cfg.task) + "\" needs a \"generators\" list");
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min) throw ConfigError("need 1 <= n_min <= n_max");
  if (cfg.task == Task::Density && cfg.resolution < kMinTransferResolution)
    throw ConfigError("density: resolution must be >= 64");
  if (cfg.steps < 1) throw ConfigError("steps must be >= 1");
  if (cfg.burnin < 0) throw ConfigError("burnin must be >= 0");
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(j);
}

json resolved_config(const ExperimentConfig& cfg) {
  json j;
  j["task"] = task_name(cfg.task);
  j["generators"] = cfg.generator_specs;
  j["potential"] = cfg.potential;
  if (cfg.kernel_weights.empty())
    j["kernel"] = "uniform";
  else
    j["kernel"] = cfg.kernel_weights;
  j["resolution"] = cfg.resolution;
  j["n_min"] = cfg.n_min;
  j["n_max"] = cfg.n_max;
  j["epsilon"] = cfg.epsilon;
  j["tol"] = cfg.tol;
  j["max_iter"] = cfg.max_iter;
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["steps"] = cfg.steps;
  j["burnin"] = cfg.burnin;
  j["x0"] = cfg.x0;
  j["partition_size"] = cfg.partition_size;
  j["word_len"] = cfg.word_len;
  j["word"] = cfg.word;
  j["out_dir"] = cfg.out_dir;
  j["threads"] = cfg.threads;
  return j;
}

Correspondence build_correspondence(const ExperimentConfig& cfg) {
  std::vector<GeneratorMap> gens;
  gens.reserve(cfg.generator_specs.size());
  for (const auto& spec : cfg.generator_specs) gens.push_back(generator_from_json(spec));
  return Correspondence(std::move(gens));
}

Potential build_potential(const ExperimentConfig& cfg) { return Potential::parse(cfg.potential); }

Kernel build_kernel(const ExperimentConfig& cfg, int k) {
  if (cfg.kernel_weights.empty()) return Kernel::uniform(k);
  if (static_cast<int>(cfg.kernel_weights.size()) != k)
    throw ConfigError("kernel weight count does not match the generator count");
  return Kernel::constant(cfg.kernel_weights);
}

}  // namespace corrtherm
