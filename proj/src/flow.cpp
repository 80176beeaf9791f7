#include "gradflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gradflow {

std::string_view to_string(ModelVariant v) {
  switch (v) {
    case ModelVariant::FullCoupled: return "full_coupled";
    case ModelVariant::VelocitySubstituted: return "velocity_substituted";
    case ModelVariant::NormalOnly: return "normal_only";
    case ModelVariant::MaterialGaugeQuadratic: return "material_gauge_quadratic";
  }
  return "?";
}

std::string_view to_string(Scheme s) {
  return s == Scheme::ExplicitEuler ? "explicit_euler" : "imex1";
}

void validate_variant(ModelVariant variant, const EnergyModel& energy) {
  if (variant == ModelVariant::MaterialGaugeQuadratic &&
      energy.kind() != EnergyModel::Kind::Quadratic)
    throw std::invalid_argument("material gauge variant requires the quadratic energy");
}

void Mobilities::validate() const {
  if (!(m_x > 0.0) || !(m_psi > 0.0) || !std::isfinite(m_x) || !std::isfinite(m_psi))
    throw std::invalid_argument("mobilities must be positive");
}

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  for (const auto& a : {stab_h, stab_psi})
    if (a && !(*a >= 0.0)) throw std::invalid_argument("stabilization must be >= 0");
}

namespace {

double tangential_sign(ModelVariant variant) {
  return variant == ModelVariant::MaterialGaugeQuadratic ? 1.0 : -1.0;
}

VectorField2 velocity_from(const Execution exec, const ScalarField& psi, const VectorField2& grad,
                           ModelVariant variant, const EnergyModel& energy,
                           const Mobilities& mob) {
  VectorField2 v(psi.grid_ptr());
  if (variant == ModelVariant::NormalOnly) return v;
  const double scale = tangential_sign(variant) / mob.m_x;
  for_each_point(exec, psi.size(), [&](std::size_t k) {
    const double w = scale * psi[k] * energy.evaluate(psi[k]).f2;
    v.x[k] = w * grad.x[k];
    v.y[k] = w * grad.y[k];
  });
  return v;
}

ScalarField height_rate(const Spectral& sp, const ScalarField& psi, ModelVariant variant,
                        const Mobilities& mob, const GeometryCache& geo,
                        const EnergyModel& energy, ClampCounter* clamps) {
  ScalarField dth(sp.grid_ptr());
  const double inv_mx = 1.0 / mob.m_x;
  const bool material = variant == ModelVariant::MaterialGaugeQuadratic;
  const auto n = count_points(sp.execution(), psi.size(), [&](std::size_t k) -> std::int64_t {
    const auto e = energy.evaluate(psi[k]);
    const double tension = material ? 0.5 * energy.c() * psi[k] * psi[k] : e.sigma;
    dth[k] = geo.g_det[k] * tension * geo.hfrak[k] * inv_mx;
    return e.clamped ? 1 : 0;
  });
  if (clamps) clamps->count += n;
  return sp.dealias(dth);
}

ScalarField psi_rate(const Spectral& sp, const ScalarField& psi, const Derivatives& dpsi,
                     ModelVariant variant, const Mobilities& mob, const GeometryCache& geo,
                     const EnergyModel& energy, const ScalarField& dth,
                     const VectorField2& vflat, ClampCounter* clamps) {
  ScalarField out(sp.grid_ptr());
  const double inv_mpsi = 1.0 / mob.m_psi;
  const auto exec = sp.execution();

  // f'' Laplace-Beltrami(psi) + f''' |grad psi|^2 at point k
  auto diffusion = [&](std::size_t k, const pointwise::HeightPoint& p,
                       const EnergyModel::Point& e) {
    const double lb = pointwise::laplace_beltrami(p, dpsi.grad.x[k], dpsi.grad.y[k],
                                                  dpsi.hess.xx[k], dpsi.hess.xy[k],
                                                  dpsi.hess.yy[k]);
    const double gsq = pointwise::covariant_norm_sq(p, dpsi.grad.x[k], dpsi.grad.y[k]);
    return e.f2 * lb + e.f3 * gsq;
  };

  std::int64_t n = 0;
  switch (variant) {
    case ModelVariant::FullCoupled:
    case ModelVariant::MaterialGaugeQuadratic: {
      const auto dv = vector_gradient(sp, vflat);
      n = count_points(exec, psi.size(), [&](std::size_t k) -> std::int64_t {
        const auto p = geo.at(k);
        const auto e = energy.evaluate(psi[k]);
        const double rest = pointwise::truesdell_remainder(
            p, psi[k], dpsi.grad.x[k], dpsi.grad.y[k], vflat.x[k], vflat.y[k], dv.at(k), dth[k]);
        out[k] = diffusion(k, p, e) * inv_mpsi - rest;
        return e.clamped ? 1 : 0;
      });
      break;
    }
    case ModelVariant::NormalOnly:
      n = count_points(exec, psi.size(), [&](std::size_t k) -> std::int64_t {
        const auto p = geo.at(k);
        const auto e = energy.evaluate(psi[k]);
        out[k] = diffusion(k, p, e) * inv_mpsi +
                 pointwise::transport_coefficient(p, psi[k], dpsi.grad.x[k], dpsi.grad.y[k]) *
                     dth[k];
        return e.clamped ? 1 : 0;
      });
      break;
    case ModelVariant::VelocitySubstituted: {
      const double r = mob.m_psi / mob.m_x;
      n = count_points(exec, psi.size(), [&](std::size_t k) -> std::int64_t {
        const auto p = geo.at(k);
        const auto e = energy.evaluate(psi[k]);
        const double ps = psi[k];
        const double px = dpsi.grad.x[k];
        const double py = dpsi.grad.y[k];
        const double w = 1.0 + ps * ps * r;
        const double flat_part =
            dpsi.hess.xx[k] + dpsi.hess.yy[k] -
            pointwise::quadratic_form(p.hx, p.hy, dpsi.hess.xx[k], dpsi.hess.xy[k],
                                      dpsi.hess.yy[k]) /
                p.gdet;
        const double gsq = pointwise::covariant_norm_sq(p, px, py);
        const double slope = pointwise::along_slope(p, px, py);
        const double rhs = w * e.f2 * flat_part + (w * e.f3 + 2.0 * ps * r * e.f2) * gsq +
                           (r * (e.sigma - ps * ps * e.f2) - e.f2) * slope * p.hfrak +
                           p.gdet * ps * r * e.sigma * p.hfrak * p.hfrak;
        out[k] = rhs * inv_mpsi;
        return e.clamped ? 1 : 0;
      });
      break;
    }
  }
  if (clamps) clamps->count += n;
  return sp.dealias(out);
}

}  // namespace

VectorField2 tangential_velocity(const Spectral& sp, const FlowState& state, ModelVariant variant,
                                 const EnergyModel& energy, const Mobilities& mob) {
  return velocity_from(sp.execution(), state.psi, sp.gradient(state.psi), variant, energy, mob);
}

ScalarField height_rhs(const Spectral& sp, const FlowState& state, ModelVariant variant,
                       const Mobilities& mob, const GeometryCache& geo, const EnergyModel& energy,
                       ClampCounter* clamps) {
  return height_rate(sp, state.psi, variant, mob, geo, energy, clamps);
}

ScalarField psi_rhs(const Spectral& sp, const FlowState& state, ModelVariant variant,
                    const Mobilities& mob, const GeometryCache& geo, const EnergyModel& energy,
                    const ScalarField& dth, const VectorField2& vflat, ClampCounter* clamps) {
  return psi_rate(sp, state.psi, sp.derivatives(state.psi), variant, mob, geo, energy, dth,
                  vflat, clamps);
}

VectorField2 flux_vector(const Spectral& sp, const FlowState& state, const EnergyModel& energy,
                         const Mobilities& mob) {
  const auto grad = sp.gradient(state.psi);
  VectorField2 q(sp.grid_ptr());
  for_each_point(sp.execution(), state.psi.size(), [&](std::size_t k) {
    const double w = -energy.evaluate(state.psi[k]).f2 / mob.m_psi;
    q.x[k] = w * grad.x[k];
    q.y[k] = w * grad.y[k];
  });
  return q;
}

Rates evaluate_rates(const Spectral& sp, const FlowState& state, ModelVariant variant,
                     const EnergyModel& energy, const Mobilities& mob) {
  validate_variant(variant, energy);
  ClampCounter clamps;
  auto geo = build_cache(sp, state.h);
  state.psi.require_finite("density field");
  auto dpsi = sp.derivatives(state.psi);
  auto dth = height_rate(sp, state.psi, variant, mob, geo, energy, &clamps);
  auto v = velocity_from(sp.execution(), state.psi, dpsi.grad, variant, energy, mob);
  auto dtpsi = psi_rate(sp, state.psi, dpsi, variant, mob, geo, energy, dth, v, nullptr);
  return {std::move(geo), std::move(dpsi), std::move(v), std::move(dth), std::move(dtpsi),
          clamps.count};
}

Stabilization auto_stabilization(const FlowState& state, ModelVariant variant,
                                 const EnergyModel& energy, const Mobilities& mob) {
  const double r = mob.m_psi / mob.m_x;
  double tension = 0.0;
  double diffusion = 0.0;
  for (std::size_t k = 0; k < state.psi.size(); ++k) {
    const double ps = state.psi[k];
    const auto e = energy.evaluate(ps);
    const double s = variant == ModelVariant::MaterialGaugeQuadratic ? 0.5 * energy.c() * ps * ps
                                                                      : e.sigma;
    tension = std::max(tension, std::abs(s));
    diffusion = std::max(diffusion, (1.0 + ps * ps * r) * e.f2);
  }
  return {tension / mob.m_x, diffusion / mob.m_psi};
}

namespace {

// u* = u + dt (rate - a lap u), then (I - dt a lap) u_new = u*
ScalarField imex_update(const Spectral& sp, const ScalarField& u, const ScalarField& rate,
                        const Hessian& hess, double a, double dt) {
  ScalarField star(sp.grid_ptr());
  for_each_point(sp.execution(), u.size(), [&](std::size_t k) {
    star[k] = u[k] + dt * (rate[k] - a * (hess.xx[k] + hess.yy[k]));
  });
  return sp.solve_helmholtz(star, dt * a);
}

ScalarField euler_update(const Spectral& sp, const ScalarField& u, const ScalarField& rate,
                         double dt) {
  ScalarField out(sp.grid_ptr());
  for_each_point(sp.execution(), u.size(), [&](std::size_t k) { out[k] = u[k] + dt * rate[k]; });
  return out;
}

}  // namespace

FlowState step(const Spectral& sp, const FlowState& state, ModelVariant variant,
               const EnergyModel& energy, const Mobilities& mob, const StepperConfig& stepper,
               ClampCounter* clamps, std::optional<double> dt_override) {
  const double dt = dt_override.value_or(stepper.dt);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  const auto rates = evaluate_rates(sp, state, variant, energy, mob);
  if (clamps) clamps->count += rates.clamps;

  FlowState next;
  next.t = state.t + dt;
  next.step_index = state.step_index + 1;
  if (stepper.scheme == Scheme::ExplicitEuler) {
    next.h = euler_update(sp, state.h, rates.dth, dt);
    next.psi = euler_update(sp, state.psi, rates.dtpsi, dt);
  } else {
    Stabilization stab;
    if (!stepper.stab_h || !stepper.stab_psi) stab = auto_stabilization(state, variant, energy, mob);
    if (stepper.stab_h) stab.a_h = *stepper.stab_h;
    if (stepper.stab_psi) stab.a_psi = *stepper.stab_psi;
    next.h = imex_update(sp, state.h, rates.dth, rates.geo.d2h, stab.a_h, dt);
    next.psi = imex_update(sp, state.psi, rates.dtpsi, rates.dpsi.hess, stab.a_psi, dt);
  }
  next.h.require_finite("height field after step");
  next.psi.require_finite("density field after step");
  return next;
}

Simulation::Simulation(GridPtr grid, Execution exec, EnergyModel energy, ModelVariant variant,
                       Mobilities mob, StepperConfig stepper, FlowState initial)
    : sp_(std::move(grid), exec),
      energy_(energy),
      variant_(variant),
      mob_(mob),
      stepper_(stepper),
      state_(std::move(initial)),
      origin_t_(state_.t),
      origin_step_(state_.step_index) {
  validate_variant(variant_, energy_);
  mob_.validate();
  stepper_.validate();
  if (state_.h.size() != sp_.grid().size() || state_.psi.size() != sp_.grid().size())
    throw std::invalid_argument("initial state does not match the grid");
  state_.h.require_finite("initial height field");
  state_.psi.require_finite("initial density field");
}

void Simulation::advance(std::optional<double> dt_override) {
  auto next = step(sp_, state_, variant_, energy_, mob_, stepper_, &clamps_, dt_override);
  if (!dt_override) {
    next.t = origin_t_ + static_cast<double>(next.step_index - origin_step_) * stepper_.dt;
  } else {
    origin_t_ = next.t;
    origin_step_ = next.step_index;
  }
  state_ = std::move(next);
}

Rates Simulation::rates() const { return evaluate_rates(sp_, state_, variant_, energy_, mob_); }

}  // namespace gradflow
