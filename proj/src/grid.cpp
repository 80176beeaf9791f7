#include "gradflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <omp.h>

#include "gradflow/errors.hpp"
#include "gradflow/parallel.hpp"

namespace gradflow {

Execution configure_threads(int threads) {
  if (threads < 1) throw std::invalid_argument("thread count must be >= 1");
  omp_set_num_threads(threads);
  return threads == 1 ? Execution::Serial : Execution::OpenMP;
}

namespace {

// 2/3 rule per axis: keep |m| <= n/3.
bool keep_mode(int m, int n) { return 3 * std::abs(m) <= n; }

}  // namespace

GridPtr Grid::make(int nx, int ny, double lx, double ly, bool dealias) {
  if (nx < 8 || ny < 8) throw std::invalid_argument("grid sizes must be >= 8");
  if (nx % 2 != 0 || ny % 2 != 0) throw std::invalid_argument("grid sizes must be even");
  if (!(lx > 0.0) || !(ly > 0.0) || !std::isfinite(lx) || !std::isfinite(ly))
    throw std::invalid_argument("domain lengths must be positive and finite");
  return std::shared_ptr<const Grid>(new Grid(nx, ny, lx, ly, dealias));
}

Grid::Grid(int nx, int ny, double lx, double ly, bool dealias)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly), dealias_(dealias) {
  const double sx = 2.0 * std::numbers::pi / lx;
  const double sy = 2.0 * std::numbers::pi / ly;
  kx_.resize(nx);
  for (int i = 0; i < nx; ++i) kx_[i] = sx * mode_x(i);
  ky_.resize(ny_half());
  for (int j = 0; j < ny_half(); ++j) ky_[j] = sy * j;

  mask_.assign(spectral_size(), 1);
  if (dealias) {
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny_half(); ++j)
        mask_[static_cast<std::size_t>(i) * ny_half() + j] =
            keep_mode(mode_x(i), nx) && keep_mode(j, ny) ? 1 : 0;
  }
}

ScalarField::ScalarField(GridPtr grid, double value)
    : grid_(std::move(grid)), values_(grid_->size(), value) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw std::invalid_argument("field size does not match grid");
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return std::isfinite(v); });
}

void ScalarField::require_finite(std::string_view what) const {
  if (!all_finite()) throw NonFiniteError("non-finite values in " + std::string(what));
}

double ScalarField::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

VectorField2::VectorField2(ScalarField xc, ScalarField yc) : x(std::move(xc)), y(std::move(yc)) {
  if (x.grid_ptr() != y.grid_ptr())
    throw std::invalid_argument("vector components must share one grid");
}

}  // namespace gradflow
