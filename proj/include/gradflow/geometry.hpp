#pragma once

/// @file geometry.hpp
/// @brief Geometric quantities of the graph surface (x, y, h(x, y)).
///
/// hfrak = H / sqrt|g| coincides with the Laplace-Beltrami of h, so the cache
/// keeps a single array for both and every consumer reads it from there.

#include <array>

#include "gradflow/grid.hpp"
#include "gradflow/pointwise.hpp"
#include "gradflow/spectral.hpp"

namespace gradflow {

/// Everything derived from h at one instant. Immutable once built.
struct GeometryCache {
  VectorField2 dh;
  Hessian d2h;
  ScalarField g_det;      ///< 1 + dh.dh, >= 1
  ScalarField sqrt_g;
  ScalarField hfrak;      ///< H / sqrt|g|, equal to Laplace-Beltrami of h
  ScalarField mean_curv;  ///< H = sqrt|g| * hfrak
  std::array<ScalarField, 3> normal;

  pointwise::HeightPoint at(std::size_t k) const {
    return {dh.x[k], dh.y[k], d2h.xx[k], d2h.xy[k], d2h.yy[k], g_det[k], hfrak[k]};
  }
};

/// Throws NonFiniteError if h is not finite.
GeometryCache build_cache(const Spectral& sp, const ScalarField& h);

ScalarField laplace_beltrami(const Spectral& sp, const ScalarField& f, const GeometryCache& geo);

/// |grad f|^2 = df.df - (df.dh)^2 / |g|
ScalarField covariant_grad_sq(const Spectral& sp, const ScalarField& f, const GeometryCache& geo);

/// Trace divergence of V = v + v_perp nu given the covariant proxy v and dt h.
ScalarField div_comp_material(const Spectral& sp, const VectorField2& vflat,
                              const ScalarField& dth, const GeometryCache& geo);

/// Material velocity in ambient coordinates plus its normal speed.
struct AmbientVelocity {
  std::array<ScalarField, 3> V;
  ScalarField normal_speed;  ///< dt h / sqrt|g|
};

AmbientVelocity reconstruct_velocity(const VectorField2& vflat, const ScalarField& dth,
                                     const GeometryCache& geo);

/// Scalar Truesdell rate in height proxies.
ScalarField truesdell_rate(const Spectral& sp, const ScalarField& psi, const ScalarField& dtpsi,
                           const VectorField2& vflat, const ScalarField& dth,
                           const GeometryCache& geo);

/// Integral over the surface, i.e. of f * sqrt|g| over the parameter domain.
double surface_integral(const Spectral& sp, const ScalarField& f, const GeometryCache& geo);

/// Gradient of both components of a covariant proxy (two forward transforms).
struct VectorGradient {
  ScalarField dvx_dx, dvx_dy, dvy_dx, dvy_dy;

  pointwise::VelocityGradient at(std::size_t k) const {
    return {dvx_dx[k], dvx_dy[k], dvy_dx[k], dvy_dy[k]};
  }
};

VectorGradient vector_gradient(const Spectral& sp, const VectorField2& v);

}  // namespace gradflow
