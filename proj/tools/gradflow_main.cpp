// Command line front end: run, compare and sweep.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gradflow/config.hpp"
#include "gradflow/errors.hpp"
#include "gradflow/runner.hpp"

namespace {

int thread_count(std::optional<int> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("GRADFLOW_THREADS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw gradflow::ConfigError("GRADFLOW_THREADS", "expected an integer");
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface gradient flows of density-dependent energies on graph surfaces"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<int> threads;
  std::vector<double> ladder;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "output directory (default: run.output_dir)");
    cmd->add_option("--threads", threads, "worker threads, overrides GRADFLOW_THREADS")
        ->check(CLI::PositiveNumber);
  };

  auto* run = app.add_subcommand("run", "integrate one configuration to t_end");
  add_common(run);
  auto* compare = app.add_subcommand("compare", "full coupled model against normal-only motion");
  add_common(compare);
  auto* sweep = app.add_subcommand("sweep", "mass-error convergence over a dt ladder");
  add_common(sweep);
  sweep->add_option("--dt-ladder", ladder, "comma separated time steps")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    const auto config = gradflow::load_config(config_path);
    const auto exec = gradflow::configure_threads(thread_count(threads));
    const std::string dir = out_dir.empty() ? config.output_dir : out_dir;
    if (*run) return gradflow::run_command(config, dir, exec, std::cout);
    if (*compare) return gradflow::compare_command(config, dir, exec, std::cout);
    return gradflow::sweep_command(config, ladder, dir, exec, std::cout);
  } catch (const gradflow::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
