#include "gradflow/spectral.hpp"

#include <complex>
#include <cstring>
#include <mutex>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace gradflow {

namespace {

using cplx = std::complex<double>;

// FFTW planning is not thread safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct Spectral::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  std::vector<cplx> coeffs;  // forward result, kept while symbols are applied

  Plans(int nx, int ny) {
    const std::size_t n = static_cast<std::size_t>(nx) * ny;
    const std::size_t nh = static_cast<std::size_t>(nx) * (ny / 2 + 1);
    std::lock_guard lock(planner_mutex());
    real = fftw_alloc_real(n);
    spec = fftw_alloc_complex(nh);
    forward = fftw_plan_dft_r2c_2d(nx, ny, real, spec, FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_2d(nx, ny, spec, real, FFTW_ESTIMATE);
    coeffs.resize(nh);
  }

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
    fftw_free(real);
    fftw_free(spec);
  }

  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;
};

Spectral::Spectral(GridPtr grid, Execution exec)
    : grid_(std::move(grid)), exec_(exec),
      plans_(std::make_unique<Plans>(grid_->nx(), grid_->ny())) {}

Spectral::~Spectral() = default;
Spectral::Spectral(Spectral&&) noexcept = default;
Spectral& Spectral::operator=(Spectral&&) noexcept = default;

void Spectral::check_grid(const ScalarField& f) const {
  if (f.size() != grid_->size() ||
      (f.grid_ptr() != grid_ && (f.grid().nx() != grid_->nx() || f.grid().ny() != grid_->ny())))
    throw std::invalid_argument("field grid does not match spectral context");
}

namespace {

// Forward transform of f into p.coeffs.
void forward(Spectral::Plans& p, const ScalarField& f) {
  std::memcpy(p.real, f.data(), f.size() * sizeof(double));
  fftw_execute(p.forward);
  std::memcpy(static_cast<void*>(p.coeffs.data()), p.spec, p.coeffs.size() * sizeof(cplx));
}

// Applies symbol(i, j) to p.coeffs and transforms back.
template <typename Symbol>
ScalarField backward(Spectral::Plans& p, const GridPtr& grid, Execution exec, Symbol&& symbol) {
  const int nyh = grid->ny_half();
  auto* out = reinterpret_cast<cplx*>(p.spec);
  const cplx* in = p.coeffs.data();
  for_each_point(exec, static_cast<std::size_t>(grid->nx()), [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < nyh; ++j) {
      const std::size_t k = row * nyh + j;
      const cplx a = symbol(i, j);
      const cplx b = in[k];
      // plain product; std::complex operator* takes the slow NaN-recovery path
      out[k] = {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
    }
  });
  fftw_execute(p.backward);
  ScalarField result(grid);
  const double scale = 1.0 / static_cast<double>(grid->size());
  const double* src = p.real;
  double* dst = result.data();
  for_each_point(exec, grid->size(), [&](std::size_t k) { dst[k] = src[k] * scale; });
  return result;
}

struct Symbols {
  const Grid& g;
  // i * k with the Nyquist entry removed.
  double kx1(int i) const { return g.is_nyquist_x(i) ? 0.0 : g.kx()[i]; }
  double ky1(int j) const { return g.is_nyquist_y(j) ? 0.0 : g.ky()[j]; }
  cplx dx(int i, int) const { return {0.0, kx1(i)}; }
  cplx dy(int, int j) const { return {0.0, ky1(j)}; }
  cplx dxx(int i, int) const { return -kx1(i) * kx1(i); }
  cplx dyy(int, int j) const { return -ky1(j) * ky1(j); }
  cplx dxy(int i, int j) const { return -kx1(i) * ky1(j); }
};

}  // namespace

ScalarField Spectral::partial(const ScalarField& f, Axis axis) const {
  check_grid(f);
  forward(*plans_, f);
  const Symbols s{*grid_};
  if (axis == Axis::X) return backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dx(i, j); });
  return backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dy(i, j); });
}

VectorField2 Spectral::gradient(const ScalarField& f) const {
  check_grid(f);
  forward(*plans_, f);
  const Symbols s{*grid_};
  auto gx = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dx(i, j); });
  auto gy = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dy(i, j); });
  return {std::move(gx), std::move(gy)};
}

Hessian Spectral::partial2(const ScalarField& f) const {
  check_grid(f);
  forward(*plans_, f);
  const Symbols s{*grid_};
  Hessian h;
  h.xx = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dxx(i, j); });
  h.xy = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dxy(i, j); });
  h.yy = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dyy(i, j); });
  return h;
}

Derivatives Spectral::derivatives(const ScalarField& f) const {
  check_grid(f);
  forward(*plans_, f);
  const Symbols s{*grid_};
  Derivatives d;
  d.grad.x = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dx(i, j); });
  d.grad.y = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dy(i, j); });
  d.hess.xx = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dxx(i, j); });
  d.hess.xy = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dxy(i, j); });
  d.hess.yy = backward(*plans_, grid_, exec_, [&](int i, int j) { return s.dyy(i, j); });
  return d;
}

ScalarField Spectral::laplacian(const ScalarField& f) const {
  check_grid(f);
  forward(*plans_, f);
  const Symbols s{*grid_};
  return backward(*plans_, grid_, exec_,
                  [&](int i, int j) { return s.dxx(i, j) + s.dyy(i, j); });
}

ScalarField Spectral::dealias(const ScalarField& f) const {
  check_grid(f);
  if (!grid_->dealias_enabled()) return f;
  forward(*plans_, f);
  const auto mask = grid_->dealias_mask();
  const int nyh = grid_->ny_half();
  return backward(*plans_, grid_, exec_, [&](int i, int j) {
    return mask[static_cast<std::size_t>(i) * nyh + j] ? cplx{1.0} : cplx{0.0};
  });
}

double Spectral::integrate(const ScalarField& f) const {
  check_grid(f);
  const double cell = grid_->lx() * grid_->ly() / static_cast<double>(grid_->size());
  return cell * sum(exec_, f.values());
}

ScalarField Spectral::solve_helmholtz(const ScalarField& rhs, double a) const {
  check_grid(rhs);
  if (!(a >= 0.0)) throw std::invalid_argument("helmholtz coefficient must be >= 0");
  if (a == 0.0) return rhs;
  forward(*plans_, rhs);
  const Symbols s{*grid_};
  return backward(*plans_, grid_, exec_, [&](int i, int j) {
    return cplx{1.0 / (1.0 - a * (s.dxx(i, j).real() + s.dyy(i, j).real()))};
  });
}

}  // namespace gradflow
