#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "fd_oracle.hpp"
#include "gradflow/config.hpp"
#include "gradflow/flow.hpp"

namespace fixtures {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline gradflow::GridPtr square(int n, bool dealias = true) {
  return gradflow::Grid::make(n, n, kTwoPi, kTwoPi, dealias);
}

inline fd::Mesh mesh_of(const gradflow::Grid& g) { return {g.nx(), g.ny(), g.lx(), g.ly()}; }

inline fd::Field plain(const gradflow::ScalarField& f) { return {f.values().begin(), f.values().end()}; }

// Smooth, non-symmetric test surfaces and densities.
inline double bumpy_h(double x, double y) {
  return 0.3 * std::sin(x) * std::cos(2.0 * y) + 0.15 * std::cos(x + y) + 0.1 * std::sin(2.0 * x);
}
inline double smooth_psi(double x, double y) {
  return 0.4 + 0.1 * std::cos(x) * std::sin(y) + 0.05 * std::sin(2.0 * x - y);
}
inline double smooth_vx(double x, double y) { return 0.2 * std::sin(x + 2.0 * y) + 0.1 * std::cos(y); }
inline double smooth_vy(double x, double y) { return -0.15 * std::cos(2.0 * x) * std::sin(y); }
inline double smooth_dth(double x, double y) { return 0.25 * std::cos(x) * std::cos(y) - 0.1 * std::sin(y); }

inline double max_abs_diff(const gradflow::ScalarField& a, const gradflow::ScalarField& b) {
  double e = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a[k] - b[k]));
  return e;
}

// The shipped Flory-Huggins configuration at a chosen resolution and step.
inline gradflow::RunConfig relaxation(int n = 128, double dt = 1e-5, double t_end = 0.8) {
  gradflow::RunConfig c;
  c.nx = c.ny = n;
  c.lx = c.ly = kTwoPi;
  c.energy = gradflow::EnergyModel::flory_huggins(1.0, 0.75, 0.0);
  c.mobilities = {5.0, 1.0};
  c.variant = gradflow::ModelVariant::FullCoupled;
  c.stepper.dt = dt;
  c.t_end = t_end;
  c.initial_h.kind = gradflow::InitialHeight::Kind::Sin2xSin2y;
  c.initial_psi.value = 0.25;
  return c;
}

}  // namespace fixtures
