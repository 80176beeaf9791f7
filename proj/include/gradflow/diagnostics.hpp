#pragma once

/// @file diagnostics.hpp
/// @brief Recorded observables, the run loop and the convergence harness.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gradflow/config.hpp"
#include "gradflow/flow.hpp"

namespace gradflow {

struct DiagnosticsRecord {
  double t = 0.0;
  std::int64_t step_index = 0;
  double energy = 0.0;
  double mass = 0.0;        ///< integral of psi over the surface
  double mass0 = 0.0;
  double mass_error = 0.0;  ///< mass - mass0
  double h_min = 0.0, h_max = 0.0;
  double psi_min = 0.0, psi_max = 0.0;
  /// Backward difference of recorded energies; absent on the first record.
  std::optional<double> dissipation_lhs;
  double dissipation_rhs = 0.0;
  std::int64_t clamp_count = 0;
};

/// -(M_X |V|^2 + M_psi |q|^2) integrated over the surface.
double dissipation_rate(const Spectral& sp, const FlowState& state, const Rates& rates,
                        const EnergyModel& energy, const Mobilities& mob);

DiagnosticsRecord record(const Spectral& sp, const FlowState& state, ModelVariant variant,
                         const EnergyModel& energy, const Mobilities& mob,
                         const std::optional<DiagnosticsRecord>& prev,
                         std::int64_t clamp_count = 0);

using Series = std::vector<DiagnosticsRecord>;

/// Thrown by simulate when a step produces non-finite values.
class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(const std::string& what, FlowState last_valid, Series partial)
      : std::runtime_error(what),
        last_valid_(std::move(last_valid)),
        partial_(std::move(partial)) {}

  const FlowState& last_valid() const noexcept { return last_valid_; }
  const Series& partial() const noexcept { return partial_; }

 private:
  FlowState last_valid_;
  Series partial_;
};

/// Called after every step with the new state.
using StepObserver = std::function<void(const FlowState&)>;

struct RunResult {
  Series series;
  FlowState final_state;
  std::int64_t clamp_count = 0;
};

/// Runs config to t_end. Records at step 0, every record_every steps and at
/// the final step, which is shortened to land on t_end.
RunResult simulate(const RunConfig& config, Execution exec = Execution::Serial,
                   const StepObserver& observer = {});

enum class SweepQuantity { MassError, TrajectoryError };

struct SweepRow {
  double dt = 0.0;
  double error = 0.0;
  std::optional<double> order;  ///< log(e_prev / e) / log(dt_prev / dt)
};

/// Same problem over a dt ladder. Trajectory errors are max-norm errors of h
/// against a run at dt_min / 4. Throws std::invalid_argument for < 3 configs.
std::vector<SweepRow> convergence_sweep(const std::vector<RunConfig>& configs,
                                        SweepQuantity quantity,
                                        Execution exec = Execution::Serial);

struct VariantComparison {
  Series full;
  Series normal;
  bool energy_below = false;   ///< U_full <= U_normal for every t >= transient
  bool spread_smaller = false; ///< final psi range smaller for the full model
};

VariantComparison compare_variants(const RunConfig& base, double transient = 0.05,
                                   Execution exec = Execution::Serial);

}  // namespace gradflow
