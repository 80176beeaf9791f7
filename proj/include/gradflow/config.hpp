#pragma once

/// @file config.hpp
/// @brief Run configuration: a flat `section.key = value` document.
///
/// Grammar: one assignment per line, `#` starts a comment, blank lines are
/// ignored, keys may appear once. Unknown keys are errors. Reals accept an
/// optional `pi` suffix (`2pi`, `0.5pi`). Lists are comma separated.
///
///   grid.nx, grid.ny            even integers >= 8          (required)
///   grid.lx, grid.ly            reals > 0                   (default 2pi)
///   grid.dealias                true | false                (default true)
///   energy.kind                 constant | linear | quadratic | flory_huggins
///   energy.c                    constant/linear/quadratic   (default 1)
///   energy.sigma0, energy.beta  flory_huggins               (required)
///   energy.chi                  flory_huggins               (default 0)
///   mobility.m_x, mobility.m_psi reals > 0                  (required)
///   model.variant               full_coupled | velocity_substituted |
///                               normal_only | material_gauge_quadratic
///   stepper.dt                  real > 0                    (required)
///   stepper.scheme              imex1 | explicit_euler      (default imex1)
///   stepper.stab_h, stab_psi    auto | real >= 0, 0 = auto  (default auto)
///   run.t_end                   real > 0                    (required)
///   run.record_every            integer >= 1                (default 100)
///   run.snapshot_times          list of reals in [0, t_end] (default none)
///   run.output_dir              path                        (default out)
///   run.seed                    integer, reserved           (default 0)
///   initial.h                   zero | sin2x_sin2y | sin2x | file:<path>
///   initial.h_amplitude         real                        (default 1)
///   initial.psi                 real | file:<path>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gradflow/energy.hpp"
#include "gradflow/flow.hpp"

namespace gradflow {

struct InitialHeight {
  enum class Kind { Zero, Sin2xSin2y, Sin2x, File };
  Kind kind = Kind::Zero;
  double amplitude = 1.0;
  std::string path;

  bool operator==(const InitialHeight&) const = default;
};

struct InitialDensity {
  enum class Kind { Constant, File };
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::string path;

  bool operator==(const InitialDensity&) const = default;
};

struct RunConfig {
  int nx = 0;
  int ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  bool dealias = true;
  EnergyModel energy = EnergyModel::constant(1.0);
  Mobilities mobilities;
  ModelVariant variant = ModelVariant::FullCoupled;
  StepperConfig stepper;
  double t_end = 0.0;
  int record_every = 100;
  std::vector<double> snapshot_times;
  InitialHeight initial_h;
  InitialDensity initial_psi;
  std::string output_dir = "out";
  std::int64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError naming the offending key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
/// Emits every key; parse_config(print_config(c)) == c.
std::string print_config(const RunConfig& config);
/// Checks cross-field invariants; throws ConfigError.
void validate(const RunConfig& config);

GridPtr make_grid(const RunConfig& config);
/// Samples the configured initial data at t = 0.
FlowState initial_state(const RunConfig& config, const GridPtr& grid);

}  // namespace gradflow
