#pragma once

/// @file energy.hpp
/// @brief Energy densities f(psi) of U = int f(psi) dS, their derivatives up
/// to third order and the surface tension sigma = f - psi f'.

#include <cstdint>
#include <string_view>

#include "gradflow/geometry.hpp"

namespace gradflow {

/// Clamp violations of the Flory-Huggins domain. Counted, never silent.
struct ClampCounter {
  std::int64_t count = 0;
};

class EnergyModel {
 public:
  enum class Kind { Constant, Linear, Quadratic, FloryHuggins };

  /// Flory-Huggins arguments are clamped into [eps, 1 - eps].
  static constexpr double kClampEps = 1e-10;

  static EnergyModel constant(double c);
  static EnergyModel linear(double c);
  /// f = (c/2) psi^2
  static EnergyModel quadratic(double c);
  /// f = sigma0 + beta (psi ln psi + (1-psi) ln(1-psi)) + chi psi (1-psi)
  static EnergyModel flory_huggins(double sigma0, double beta, double chi);

  Kind kind() const noexcept { return kind_; }
  double c() const noexcept { return c_; }
  double sigma0() const noexcept { return sigma0_; }
  double beta() const noexcept { return beta_; }
  double chi() const noexcept { return chi_; }

  /// Values needed by the flow at one point.
  struct Point {
    double f, f1, f2, f3;
    double sigma;
    bool clamped;
  };

  Point evaluate(double psi) const noexcept;
  /// f^(order)(psi), order in 0..3.
  double f(double psi, int order, bool* clamped = nullptr) const;
  /// sigma^(order)(psi), order in 0..2.
  double sigma(double psi, int order, bool* clamped = nullptr) const;

  bool operator==(const EnergyModel&) const = default;

 private:
  EnergyModel(Kind kind, double c, double sigma0, double beta, double chi)
      : kind_(kind), c_(c), sigma0_(sigma0), beta_(beta), chi_(chi) {}

  double clamp(double psi, bool& clamped) const noexcept;

  Kind kind_;
  double c_ = 0.0;
  double sigma0_ = 0.0;
  double beta_ = 0.0;
  double chi_ = 0.0;
};

std::string_view to_string(EnergyModel::Kind kind);

ScalarField eval_f(const EnergyModel& model, const ScalarField& psi, int order,
                   ClampCounter* clamps = nullptr, Execution exec = Execution::Serial);
ScalarField eval_sigma(const EnergyModel& model, const ScalarField& psi, int order,
                       ClampCounter* clamps = nullptr, Execution exec = Execution::Serial);

double total_energy(const Spectral& sp, const EnergyModel& model, const ScalarField& psi,
                    const GeometryCache& geo, ClampCounter* clamps = nullptr);

/// D_psi U = f'(psi); tangential part of D_X U as covariant proxy psi f'' dpsi;
/// normal part (psi f' - f) H = -sigma H.
struct FunctionalDerivatives {
  ScalarField dpsi;
  VectorField2 tangential;
  ScalarField normal;
};

FunctionalDerivatives functional_derivatives(const Spectral& sp, const EnergyModel& model,
                                             const ScalarField& psi, const GeometryCache& geo,
                                             ClampCounter* clamps = nullptr);

}  // namespace gradflow
