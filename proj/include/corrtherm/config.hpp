#ifndef CORRTHERM_CONFIG_HPP
#define CORRTHERM_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrtherm/correspondence.hpp"
#include "corrtherm/kernel.hpp"
#include "corrtherm/potential.hpp"

namespace corrtherm {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

enum class Task { Pressure, Density, Entropy, Markov, Cylinders, Check };

Task parse_task(const std::string& name);
std::string task_name(Task t);

/// Fully resolved experiment configuration. Parsing is strict: unknown keys
/// are rejected and every default is explicit in the emitted resolved config.
struct ExperimentConfig {
  Task task = Task::Check;
  std::vector<nlohmann::json> generator_specs;  // retained for round-trip
  std::string potential = "jacobian";
  std::vector<double> kernel_weights;  // empty = uniform
  int resolution = 4096;
  int n_min = 3;
  int n_max = 10;
  double epsilon = 0.1;
  double tol = 1e-10;
  int max_iter = 200;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = 100'000'000;
  int steps = 100'000;
  int burnin = 0;
  std::vector<double> x0;  // empty = drawn from Leb (markov) / origin (pressure)
  int partition_size = 16;
  int word_len = 3;
  std::vector<int> word;  // explicit cylinder word; overrides word_len scan
  std::string out_dir = "out";
  int threads = 0;  // 0 = hardware
};

GeneratorMap generator_from_json(const nlohmann::json& j);
nlohmann::json generator_to_json(const GeneratorMap& g);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);
nlohmann::json resolved_config(const ExperimentConfig& cfg);

Correspondence build_correspondence(const ExperimentConfig& cfg);
Potential build_potential(const ExperimentConfig& cfg);
Kernel build_kernel(const ExperimentConfig& cfg, int k);

}  // namespace corrtherm

#endif
