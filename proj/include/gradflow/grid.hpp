#pragma once

/// @file grid.hpp
/// @brief Uniform periodic 2-D grid and the fields sampled on it.
///
/// Fields are stored row-major with x as the slow index: value (i, j) sits at
/// i * ny + j and samples the point (i * lx / nx, j * ly / ny).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace gradflow {

enum class Axis { X, Y };

class Grid {
 public:
  /// Throws std::invalid_argument for odd sizes, sizes below 8 or
  /// non-positive lengths.
  static std::shared_ptr<const Grid> make(int nx, int ny, double lx, double ly,
                                          bool dealias = true);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double lx() const noexcept { return lx_; }
  double ly() const noexcept { return ly_; }
  bool dealias_enabled() const noexcept { return dealias_; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  /// Number of complex modes of the real-to-complex transform, nx * (ny/2 + 1).
  std::size_t spectral_size() const noexcept {
    return static_cast<std::size_t>(nx_) * (ny_ / 2 + 1);
  }
  int ny_half() const noexcept { return ny_ / 2 + 1; }

  double dx() const noexcept { return lx_ / nx_; }
  double dy() const noexcept { return ly_ / ny_; }
  double x(int i) const noexcept { return i * dx(); }
  double y(int j) const noexcept { return j * dy(); }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * ny_ + j;
  }

  /// Physical wavenumbers (2*pi/L scaling); kx has nx entries, ky has ny/2+1.
  std::span<const double> kx() const noexcept { return kx_; }
  std::span<const double> ky() const noexcept { return ky_; }
  /// Integer mode index of x row i, in (-nx/2, nx/2].
  int mode_x(int i) const noexcept { return i <= nx_ / 2 ? i : i - nx_; }
  bool is_nyquist_x(int i) const noexcept { return i == nx_ / 2; }
  bool is_nyquist_y(int j) const noexcept { return j == ny_ / 2; }

  /// Per-mode keep flag over the half spectrum; all ones when dealiasing is off.
  std::span<const std::uint8_t> dealias_mask() const noexcept { return mask_; }

 private:
  Grid(int nx, int ny, double lx, double ly, bool dealias);

  int nx_;
  int ny_;
  double lx_;
  double ly_;
  bool dealias_;
  std::vector<double> kx_;
  std::vector<double> ky_;
  std::vector<std::uint8_t> mask_;
};

using GridPtr = std::shared_ptr<const Grid>;

class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double value = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples fn(x, y) at every grid point.
  template <typename Fn>
  static ScalarField sample(GridPtr grid, Fn&& fn) {
    ScalarField out(grid);
    for (int i = 0; i < grid->nx(); ++i)
      for (int j = 0; j < grid->ny(); ++j)
        out.values_[grid->index(i, j)] = fn(grid->x(i), grid->y(j));
    return out;
  }

  const Grid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }

  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  double& at(int i, int j) noexcept { return values_[grid_->index(i, j)]; }
  double at(int i, int j) const noexcept { return values_[grid_->index(i, j)]; }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const noexcept;
  /// Throws NonFiniteError naming `what` if any value is NaN or Inf.
  void require_finite(std::string_view what) const;

  double max_abs() const noexcept;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Two components on one grid; used for covariant proxies such as the
/// height gradient or the tangential velocity.
struct VectorField2 {
  ScalarField x;
  ScalarField y;

  VectorField2() = default;
  explicit VectorField2(const GridPtr& grid) : x(grid), y(grid) {}
  VectorField2(ScalarField xc, ScalarField yc);
};

/// Second partial derivatives; the mixed one is stored once.
struct Hessian {
  ScalarField xx;
  ScalarField xy;
  ScalarField yy;
};

/// First and second partials obtained from one forward transform.
struct Derivatives {
  VectorField2 grad;
  Hessian hess;
};

}  // namespace gradflow
