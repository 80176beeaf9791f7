#pragma once

/// @file flow.hpp
/// @brief Right-hand sides of the height-observer surface tension flows and
/// the time stepper.
///
/// All variants evolve (h, psi) on a periodic graph surface:
///   FullCoupled            tangential + normal motion, Truesdell gauge
///   VelocitySubstituted    the same model with v eliminated from the psi law
///   NormalOnly             tangential material velocity constrained to zero
///   MaterialGaugeQuadratic quadratic density under the material gauge; its
///                          spatial forces point the other way and the energy
///                          may increase
///
/// Rates at one time level are evaluated in the order dt h, v, dt psi, all
/// from the old state. Right-hand sides are dealiased once after assembly.

#include <cstdint>
#include <optional>
#include <string_view>

#include "gradflow/energy.hpp"
#include "gradflow/geometry.hpp"
#include "gradflow/spectral.hpp"

namespace gradflow {

enum class ModelVariant { FullCoupled, VelocitySubstituted, NormalOnly, MaterialGaugeQuadratic };

std::string_view to_string(ModelVariant v);
/// Truesdell gauge variants have a guaranteed energy decay.
inline bool is_truesdell_gauge(ModelVariant v) { return v != ModelVariant::MaterialGaugeQuadratic; }

/// Throws std::invalid_argument for MaterialGaugeQuadratic with a
/// non-quadratic energy.
void validate_variant(ModelVariant variant, const EnergyModel& energy);

struct Mobilities {
  double m_x = 1.0;    ///< immobility of the surface
  double m_psi = 1.0;  ///< immobility of the density

  /// Throws std::invalid_argument unless both are positive.
  void validate() const;

  bool operator==(const Mobilities&) const = default;
};

enum class Scheme { ExplicitEuler, IMEX1 };

std::string_view to_string(Scheme s);

struct StepperConfig {
  double dt = 1e-5;
  Scheme scheme = Scheme::IMEX1;
  /// Implicit stabilization coefficients; empty selects the per-step automatic value.
  std::optional<double> stab_h;
  std::optional<double> stab_psi;

  void validate() const;

  bool operator==(const StepperConfig&) const = default;
};

struct FlowState {
  double t = 0.0;
  ScalarField h;
  ScalarField psi;
  std::int64_t step_index = 0;
};

/// Everything the stepper and the diagnostics need at one time level.
struct Rates {
  GeometryCache geo;
  Derivatives dpsi;
  VectorField2 vflat;  ///< covariant tangential velocity proxy
  ScalarField dth;     ///< dealiased when the grid dealiases
  ScalarField dtpsi;   ///< dealiased when the grid dealiases
  std::int64_t clamps = 0;
};

Rates evaluate_rates(const Spectral& sp, const FlowState& state, ModelVariant variant,
                     const EnergyModel& energy, const Mobilities& mob);

/// M_X v = -psi f'' dpsi (sign flipped for the material gauge, zero for NormalOnly).
VectorField2 tangential_velocity(const Spectral& sp, const FlowState& state, ModelVariant variant,
                                 const EnergyModel& energy, const Mobilities& mob);

/// M_X dt h = |g| sigma hfrak (material gauge: |g| (c/2) psi^2 hfrak).
ScalarField height_rhs(const Spectral& sp, const FlowState& state, ModelVariant variant,
                       const Mobilities& mob, const GeometryCache& geo, const EnergyModel& energy,
                       ClampCounter* clamps = nullptr);

/// dt psi for the selected variant given dt h and v at the same level.
ScalarField psi_rhs(const Spectral& sp, const FlowState& state, ModelVariant variant,
                    const Mobilities& mob, const GeometryCache& geo, const EnergyModel& energy,
                    const ScalarField& dth, const VectorField2& vflat,
                    ClampCounter* clamps = nullptr);

/// Covariant flux proxy, M_psi q = -f'' dpsi.
VectorField2 flux_vector(const Spectral& sp, const FlowState& state, const EnergyModel& energy,
                         const Mobilities& mob);

struct Stabilization {
  double a_h = 0.0;
  double a_psi = 0.0;
};

/// a_h = max|sigma| / M_X, a_psi = max((1 + psi^2 M_psi / M_X) f'') / M_psi.
Stabilization auto_stabilization(const FlowState& state, ModelVariant variant,
                                 const EnergyModel& energy, const Mobilities& mob);

/// One step of length dt (stepper.dt unless overridden). Throws
/// NonFiniteError if the new state is not finite; the input is untouched.
FlowState step(const Spectral& sp, const FlowState& state, ModelVariant variant,
               const EnergyModel& energy, const Mobilities& mob, const StepperConfig& stepper,
               ClampCounter* clamps = nullptr, std::optional<double> dt_override = {});

/// Owns one simulation: its spectral context, parameters and state.
class Simulation {
 public:
  Simulation(GridPtr grid, Execution exec, EnergyModel energy, ModelVariant variant,
             Mobilities mob, StepperConfig stepper, FlowState initial);

  const FlowState& state() const noexcept { return state_; }
  const Spectral& spectral() const noexcept { return sp_; }
  const EnergyModel& energy() const noexcept { return energy_; }
  ModelVariant variant() const noexcept { return variant_; }
  const Mobilities& mobilities() const noexcept { return mob_; }
  const StepperConfig& stepper() const noexcept { return stepper_; }
  std::int64_t clamp_count() const noexcept { return clamps_.count; }

  /// Advances by dt (or a shorter final step). On failure the state is kept
  /// at the last valid step and NonFiniteError propagates.
  void advance(std::optional<double> dt_override = {});

  Rates rates() const;

 private:
  Spectral sp_;
  EnergyModel energy_;
  ModelVariant variant_;
  Mobilities mob_;
  StepperConfig stepper_;
  FlowState state_;
  ClampCounter clamps_;
  double origin_t_ = 0.0;  // full steps land on origin_t_ + n dt
  std::int64_t origin_step_ = 0;
};

}  // namespace gradflow
