#pragma once

/// @file spectral.hpp
/// @brief Fourier differentiation, dealiasing, quadrature and constant
/// coefficient implicit solves on a periodic grid.
///
/// Forward transforms are unnormalized and inverse transforms divide by
/// nx * ny; every public operation takes and returns physical-space fields.
/// First-derivative symbols vanish on the Nyquist row/column, and the second
/// derivative symbols are the squares of the first-derivative ones, so
/// partial2 equals partial applied twice.
///
/// A Spectral object owns FFTW plans and scratch buffers. It is not safe to
/// use one instance from several threads at once; give each simulation its
/// own.

#include <memory>

#include "gradflow/grid.hpp"
#include "gradflow/parallel.hpp"

namespace gradflow {

class Spectral {
 public:
  explicit Spectral(GridPtr grid, Execution exec = Execution::Serial);
  ~Spectral();
  Spectral(Spectral&&) noexcept;
  Spectral& operator=(Spectral&&) noexcept;
  Spectral(const Spectral&) = delete;
  Spectral& operator=(const Spectral&) = delete;

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  Execution execution() const noexcept { return exec_; }

  ScalarField partial(const ScalarField& f, Axis axis) const;
  VectorField2 gradient(const ScalarField& f) const;
  Hessian partial2(const ScalarField& f) const;
  Derivatives derivatives(const ScalarField& f) const;
  /// Flat Laplacian dxx + dyy.
  ScalarField laplacian(const ScalarField& f) const;

  /// Spectral truncation by the grid's dealias mask; identity when disabled.
  ScalarField dealias(const ScalarField& f) const;

  /// Trapezoid rule, (lx * ly / (nx * ny)) * sum of samples.
  double integrate(const ScalarField& f) const;

  /// Solves (I - a (dxx + dyy)) u = rhs mode by mode. Requires a >= 0.
  ScalarField solve_helmholtz(const ScalarField& rhs, double a) const;

 /// FFTW state; opaque outside spectral.cpp.
  struct Plans;

 private:
  void check_grid(const ScalarField& f) const;

  GridPtr grid_;
  Execution exec_;
  std::unique_ptr<Plans> plans_;
};

}  // namespace gradflow
