#include "gradflow/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gradflow {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

EnergyModel EnergyModel::constant(double c) {
  require(std::isfinite(c) && c > 0.0, "constant energy requires c > 0");
  return {Kind::Constant, c, 0.0, 0.0, 0.0};
}

EnergyModel EnergyModel::linear(double c) {
  require(std::isfinite(c), "linear energy requires finite c");
  return {Kind::Linear, c, 0.0, 0.0, 0.0};
}

EnergyModel EnergyModel::quadratic(double c) {
  require(std::isfinite(c) && c > 0.0, "quadratic energy requires c > 0");
  return {Kind::Quadratic, c, 0.0, 0.0, 0.0};
}

EnergyModel EnergyModel::flory_huggins(double sigma0, double beta, double chi) {
  require(std::isfinite(sigma0) && sigma0 > 0.0, "flory-huggins requires sigma0 > 0");
  require(std::isfinite(beta) && beta > 0.0, "flory-huggins requires beta > 0");
  require(std::isfinite(chi), "flory-huggins requires finite chi");
  return {Kind::FloryHuggins, 0.0, sigma0, beta, chi};
}

std::string_view to_string(EnergyModel::Kind kind) {
  switch (kind) {
    case EnergyModel::Kind::Constant: return "constant";
    case EnergyModel::Kind::Linear: return "linear";
    case EnergyModel::Kind::Quadratic: return "quadratic";
    case EnergyModel::Kind::FloryHuggins: return "flory_huggins";
  }
  return "?";
}

double EnergyModel::clamp(double psi, bool& clamped) const noexcept {
  clamped = false;
  if (kind_ != Kind::FloryHuggins) return psi;
  const double lo = kClampEps;
  const double hi = 1.0 - kClampEps;
  if (psi < lo || psi > hi || std::isnan(psi)) {
    clamped = true;
    return std::isnan(psi) ? psi : std::clamp(psi, lo, hi);
  }
  return psi;
}

EnergyModel::Point EnergyModel::evaluate(double psi_in) const noexcept {
  Point p{};
  const double psi = clamp(psi_in, p.clamped);
  switch (kind_) {
    case Kind::Constant:
      p = {c_, 0.0, 0.0, 0.0, c_, p.clamped};
      break;
    case Kind::Linear:
      p = {c_ * psi, c_, 0.0, 0.0, 0.0, p.clamped};
      break;
    case Kind::Quadratic:
      p = {0.5 * c_ * psi * psi, c_ * psi, c_, 0.0, -0.5 * c_ * psi * psi, p.clamped};
      break;
    case Kind::FloryHuggins: {
      const double q = 1.0 - psi;
      const double lp = std::log(psi);
      const double lq = std::log(q);
      p.f = sigma0_ + beta_ * (psi * lp + q * lq) + chi_ * psi * q;
      p.f1 = beta_ * (lp - lq) + chi_ * (1.0 - 2.0 * psi);
      p.f2 = beta_ / (psi * q) - 2.0 * chi_;
      p.f3 = beta_ * (2.0 * psi - 1.0) / (psi * psi * q * q);
      // Langmuir form
      p.sigma = sigma0_ + beta_ * lq + chi_ * psi * psi;
      break;
    }
  }
  return p;
}

double EnergyModel::f(double psi, int order, bool* clamped) const {
  if (order < 0 || order > 3) throw std::invalid_argument("f derivative order must be 0..3");
  const auto p = evaluate(psi);
  if (clamped) *clamped = p.clamped;
  switch (order) {
    case 0: return p.f;
    case 1: return p.f1;
    case 2: return p.f2;
    default: return p.f3;
  }
}

double EnergyModel::sigma(double psi_in, int order, bool* clamped) const {
  if (order < 0 || order > 2) throw std::invalid_argument("sigma derivative order must be 0..2");
  const auto p = evaluate(psi_in);
  if (clamped) *clamped = p.clamped;
  bool unused = false;
  const double psi = clamp(psi_in, unused);
  switch (order) {
    case 0: return p.sigma;
    case 1: return -psi * p.f2;
    default: return -(p.f2 + psi * p.f3);
  }
}

namespace {

template <typename Eval>
ScalarField eval_field(const ScalarField& psi, ClampCounter* clamps, Execution exec, Eval&& eval) {
  ScalarField out(psi.grid_ptr());
  const auto n = count_points(exec, psi.size(), [&](std::size_t k) -> std::int64_t {
    bool clamped = false;
    out[k] = eval(psi[k], &clamped);
    return clamped ? 1 : 0;
  });
  if (clamps) clamps->count += n;
  return out;
}

}  // namespace

ScalarField eval_f(const EnergyModel& model, const ScalarField& psi, int order,
                   ClampCounter* clamps, Execution exec) {
  if (order < 0 || order > 3) throw std::invalid_argument("f derivative order must be 0..3");
  return eval_field(psi, clamps, exec,
                    [&](double v, bool* c) { return model.f(v, order, c); });
}

ScalarField eval_sigma(const EnergyModel& model, const ScalarField& psi, int order,
                       ClampCounter* clamps, Execution exec) {
  if (order < 0 || order > 2) throw std::invalid_argument("sigma derivative order must be 0..2");
  return eval_field(psi, clamps, exec,
                    [&](double v, bool* c) { return model.sigma(v, order, c); });
}

double total_energy(const Spectral& sp, const EnergyModel& model, const ScalarField& psi,
                    const GeometryCache& geo, ClampCounter* clamps) {
  return surface_integral(sp, eval_f(model, psi, 0, clamps, sp.execution()), geo);
}

FunctionalDerivatives functional_derivatives(const Spectral& sp, const EnergyModel& model,
                                             const ScalarField& psi, const GeometryCache& geo,
                                             ClampCounter* clamps) {
  const auto dpsi = sp.gradient(psi);
  const auto& grid = sp.grid_ptr();
  FunctionalDerivatives out{ScalarField(grid), VectorField2(grid), ScalarField(grid)};
  const auto n = count_points(sp.execution(), psi.size(), [&](std::size_t k) -> std::int64_t {
    const auto e = model.evaluate(psi[k]);
    out.dpsi[k] = e.f1;
    out.tangential.x[k] = psi[k] * e.f2 * dpsi.x[k];
    out.tangential.y[k] = psi[k] * e.f2 * dpsi.y[k];
    out.normal[k] = -e.sigma * geo.mean_curv[k];
    return e.clamped ? 1 : 0;
  });
  if (clamps) clamps->count += n;
  return out;
}

}  // namespace gradflow
