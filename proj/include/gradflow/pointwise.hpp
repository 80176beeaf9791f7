#pragma once

/// @file pointwise.hpp
/// @brief Height-observer closed forms evaluated at one grid point.
///
/// Inputs are the Cartesian partials of the height h and of the fields being
/// operated on. Christoffel symbols and the shape operator never appear
/// explicitly: they are already folded into these expressions. Both the
/// geometry module and the flow right-hand sides call these, so the two can
/// not drift apart.

namespace gradflow::pointwise {

/// Local height data: dh, d2h, |g| and hfrak (= mean curvature / sqrt|g|,
/// which is also the Laplace-Beltrami of h).
struct HeightPoint {
  double hx, hy;
  double hxx, hxy, hyy;
  double gdet;
  double hfrak;
};

inline double metric_det(double hx, double hy) { return 1.0 + hx * hx + hy * hy; }

/// a . M . a for the symmetric 2x2 matrix [[mxx, mxy], [mxy, myy]].
inline double quadratic_form(double ax, double ay, double mxx, double mxy, double myy) {
  return ax * ax * mxx + 2.0 * ax * ay * mxy + ay * ay * myy;
}

inline double hfrak(double hx, double hy, double hxx, double hxy, double hyy) {
  const double g = metric_det(hx, hy);
  return (hxx + hyy) / g - quadratic_form(hx, hy, hxx, hxy, hyy) / (g * g);
}

inline HeightPoint height_point(double hx, double hy, double hxx, double hxy, double hyy) {
  return {hx, hy, hxx, hxy, hyy, metric_det(hx, hy), hfrak(hx, hy, hxx, hxy, hyy)};
}

/// dh . df
inline double along_slope(const HeightPoint& h, double fx, double fy) {
  return fx * h.hx + fy * h.hy;
}

inline double laplace_beltrami(const HeightPoint& h, double fx, double fy, double fxx,
                               double fxy, double fyy) {
  return fxx + fyy - quadratic_form(h.hx, h.hy, fxx, fxy, fyy) / h.gdet -
         along_slope(h, fx, fy) * h.hfrak;
}

/// Squared norm of the covariant gradient, or of any covariant proxy w.
inline double covariant_norm_sq(const HeightPoint& h, double wx, double wy) {
  const double s = along_slope(h, wx, wy);
  return wx * wx + wy * wy - s * s / h.gdet;
}

/// Gradient of a covariant proxy v: dvx_dx = d_x v_x, dvx_dy = d_y v_x, ...
struct VelocityGradient {
  double dvx_dx, dvx_dy, dvy_dx, dvy_dy;
};

/// Tangential part of the trace divergence: d.v - dh.dv.dh / |g|.
inline double tangential_divergence(const HeightPoint& h, const VelocityGradient& dv) {
  const double contracted = h.hx * h.hx * dv.dvx_dx + h.hx * h.hy * (dv.dvx_dy + dv.dvy_dx) +
                            h.hy * h.hy * dv.dvy_dy;
  return dv.dvx_dx + dv.dvy_dy - contracted / h.gdet;
}

/// Componentwise trace divergence of the material velocity.
inline double div_comp_material(const HeightPoint& h, double vx, double vy,
                                const VelocityGradient& dv, double dth) {
  return tangential_divergence(h, dv) - (dth + along_slope(h, vx, vy)) * h.hfrak;
}

/// Coefficient of dt h in the Truesdell rate: psi * hfrak + dpsi.dh / |g|.
inline double transport_coefficient(const HeightPoint& h, double psi, double psix, double psiy) {
  return psi * h.hfrak + along_slope(h, psix, psiy) / h.gdet;
}

/// The velocity-dependent part of the Truesdell rate minus dt psi, i.e. the
/// full rate is dtpsi + truesdell_remainder(...).
inline double truesdell_remainder(const HeightPoint& h, double psi, double psix, double psiy,
                                  double vx, double vy, const VelocityGradient& dv,
                                  double dth) {
  const double a = transport_coefficient(h, psi, psix, psiy);
  return -a * dth + psi * tangential_divergence(h, dv) + vx * (psix - a * h.hx) +
         vy * (psiy - a * h.hy);
}

}  // namespace gradflow::pointwise
