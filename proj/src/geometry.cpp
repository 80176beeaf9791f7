#include "gradflow/geometry.hpp"

#include <cmath>

namespace gradflow {

GeometryCache build_cache(const Spectral& sp, const ScalarField& h) {
  h.require_finite("height field");
  auto d = sp.derivatives(h);
  const auto& grid = sp.grid_ptr();
  GeometryCache geo{std::move(d.grad), std::move(d.hess), ScalarField(grid), ScalarField(grid),
                    ScalarField(grid),  ScalarField(grid),
                    {ScalarField(grid), ScalarField(grid), ScalarField(grid)}};

  for_each_point(sp.execution(), grid->size(), [&](std::size_t k) {
    const auto p = pointwise::height_point(geo.dh.x[k], geo.dh.y[k], geo.d2h.xx[k],
                                           geo.d2h.xy[k], geo.d2h.yy[k]);
    const double root = std::sqrt(p.gdet);
    geo.g_det[k] = p.gdet;
    geo.sqrt_g[k] = root;
    geo.hfrak[k] = p.hfrak;
    geo.mean_curv[k] = root * p.hfrak;
    geo.normal[0][k] = -p.hx / root;
    geo.normal[1][k] = -p.hy / root;
    geo.normal[2][k] = 1.0 / root;
  });
  return geo;
}

ScalarField laplace_beltrami(const Spectral& sp, const ScalarField& f, const GeometryCache& geo) {
  const auto d = sp.derivatives(f);
  ScalarField out(sp.grid_ptr());
  for_each_point(sp.execution(), out.size(), [&](std::size_t k) {
    out[k] = pointwise::laplace_beltrami(geo.at(k), d.grad.x[k], d.grad.y[k], d.hess.xx[k],
                                         d.hess.xy[k], d.hess.yy[k]);
  });
  return out;
}

ScalarField covariant_grad_sq(const Spectral& sp, const ScalarField& f, const GeometryCache& geo) {
  const auto df = sp.gradient(f);
  ScalarField out(sp.grid_ptr());
  for_each_point(sp.execution(), out.size(), [&](std::size_t k) {
    out[k] = pointwise::covariant_norm_sq(geo.at(k), df.x[k], df.y[k]);
  });
  return out;
}

VectorGradient vector_gradient(const Spectral& sp, const VectorField2& v) {
  auto gx = sp.gradient(v.x);
  auto gy = sp.gradient(v.y);
  return {std::move(gx.x), std::move(gx.y), std::move(gy.x), std::move(gy.y)};
}

ScalarField div_comp_material(const Spectral& sp, const VectorField2& vflat,
                              const ScalarField& dth, const GeometryCache& geo) {
  const auto dv = vector_gradient(sp, vflat);
  ScalarField out(sp.grid_ptr());
  for_each_point(sp.execution(), out.size(), [&](std::size_t k) {
    out[k] = pointwise::div_comp_material(geo.at(k), vflat.x[k], vflat.y[k], dv.at(k), dth[k]);
  });
  return out;
}

AmbientVelocity reconstruct_velocity(const VectorField2& vflat, const ScalarField& dth,
                                     const GeometryCache& geo) {
  const auto& grid = dth.grid_ptr();
  AmbientVelocity out{{ScalarField(grid), ScalarField(grid), ScalarField(grid)},
                      ScalarField(grid)};
  for (std::size_t k = 0; k < dth.size(); ++k) {
    const double along = dth[k] + vflat.x[k] * geo.dh.x[k] + vflat.y[k] * geo.dh.y[k];
    const double s = along / geo.sqrt_g[k];
    out.V[0][k] = vflat.x[k] + s * geo.normal[0][k];
    out.V[1][k] = vflat.y[k] + s * geo.normal[1][k];
    out.V[2][k] = s * geo.normal[2][k];
    out.normal_speed[k] = dth[k] / geo.sqrt_g[k];
  }
  return out;
}

ScalarField truesdell_rate(const Spectral& sp, const ScalarField& psi, const ScalarField& dtpsi,
                           const VectorField2& vflat, const ScalarField& dth,
                           const GeometryCache& geo) {
  const auto dpsi = sp.gradient(psi);
  const auto dv = vector_gradient(sp, vflat);
  ScalarField out(sp.grid_ptr());
  for_each_point(sp.execution(), out.size(), [&](std::size_t k) {
    out[k] = dtpsi[k] + pointwise::truesdell_remainder(geo.at(k), psi[k], dpsi.x[k], dpsi.y[k],
                                                       vflat.x[k], vflat.y[k], dv.at(k), dth[k]);
  });
  return out;
}

double surface_integral(const Spectral& sp, const ScalarField& f, const GeometryCache& geo) {
  ScalarField weighted(sp.grid_ptr());
  for_each_point(sp.execution(), f.size(),
                 [&](std::size_t k) { weighted[k] = f[k] * geo.sqrt_g[k]; });
  return sp.integrate(weighted);
}

}  // namespace gradflow
