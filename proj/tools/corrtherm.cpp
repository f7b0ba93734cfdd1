#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "corrtherm/tasks.hpp"

int main(int argc, char** argv) {
  CLI::App app{"corrtherm: pressure, invariant densities, kernels and entropies "
               "for correspondences generated by expanding circle/torus maps"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int threads = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto add_task = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "JSON experiment config")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads, "worker cap (0 = hardware)");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t s) { seed = s; seed_given = true; }, "PRNG seed override");
    return sub;
  };

  add_task("pressure", "growth/spanning/separated pressure estimates");
  add_task("density", "invariant density by transfer-operator power iteration");
  add_task("entropy", "kernel entropy: partition rate + analytic assembly");
  add_task("markov", "reproducible Markov trajectory sampling");
  add_task("cylinders", "finite-horizon cylinder measure tables");
  add_task("check", "run the built-in verification suite");

  CLI11_PARSE(app, argc, argv);
  const std::string task = app.get_subcommands().front()->get_name();

  try {
    corrtherm::ExperimentConfig cfg;
    if (!config_path.empty()) {
      cfg = corrtherm::load_config_file(config_path);
      if (cfg.task != corrtherm::parse_task(task) && cfg.task != corrtherm::Task::Check)
        throw corrtherm::ConfigError("config task \"" + corrtherm::task_name(cfg.task) +
                                     "\" does not match subcommand \"" + task + "\"");
    } else if (task != "check") {
      throw corrtherm::ConfigError("task \"" + task + "\" needs --config");
    }
    cfg.task = corrtherm::parse_task(task);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads > 0) cfg.threads = threads;
    if (seed_given) cfg.seed = seed;
    if (const char* env = std::getenv("CORRTHERM_BUDGET"))
      cfg.budget = std::strtoull(env, nullptr, 10);

    const auto manifest = corrtherm::run(cfg);
    if (manifest.exit_code == 0)
      std::cout << "wrote " << cfg.out_dir << "/manifest.json (" << manifest.wall_seconds << "s)\n";
    return manifest.exit_code;
  } catch (const corrtherm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 4;
  } catch (const corrtherm::ResourceError& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
