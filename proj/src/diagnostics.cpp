#include "gradflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "gradflow/errors.hpp"

namespace gradflow {

double dissipation_rate(const Spectral& sp, const FlowState& state, const Rates& rates,
                        const EnergyModel& energy, const Mobilities& mob) {
  const auto& geo = rates.geo;
  const auto q = flux_vector(sp, state, energy, mob);
  ScalarField density(sp.grid_ptr());
  for_each_point(sp.execution(), density.size(), [&](std::size_t k) {
    const auto p = geo.at(k);
    const double v_tan = pointwise::covariant_norm_sq(p, rates.vflat.x[k], rates.vflat.y[k]);
    const double v_perp = rates.dth[k] * rates.dth[k] / p.gdet;
    const double q_sq = pointwise::covariant_norm_sq(p, q.x[k], q.y[k]);
    density[k] = mob.m_x * (v_tan + v_perp) + mob.m_psi * q_sq;
  });
  return -surface_integral(sp, density, geo);
}

DiagnosticsRecord record(const Spectral& sp, const FlowState& state, ModelVariant variant,
                         const EnergyModel& energy, const Mobilities& mob,
                         const std::optional<DiagnosticsRecord>& prev, std::int64_t clamp_count) {
  const auto rates = evaluate_rates(sp, state, variant, energy, mob);
  const auto exec = sp.execution();
  DiagnosticsRecord r;
  r.t = state.t;
  r.step_index = state.step_index;
  r.energy = total_energy(sp, energy, state.psi, rates.geo);
  r.mass = surface_integral(sp, state.psi, rates.geo);
  r.mass0 = prev ? prev->mass0 : r.mass;
  r.mass_error = r.mass - r.mass0;
  r.h_min = min_value(exec, state.h.values());
  r.h_max = max_value(exec, state.h.values());
  r.psi_min = min_value(exec, state.psi.values());
  r.psi_max = max_value(exec, state.psi.values());
  if (prev && state.t > prev->t) r.dissipation_lhs = (r.energy - prev->energy) / (state.t - prev->t);
  r.dissipation_rhs = dissipation_rate(sp, state, rates, energy, mob);
  r.clamp_count = clamp_count;
  return r;
}

RunResult simulate(const RunConfig& config, Execution exec, const StepObserver& observer) {
  const auto grid = make_grid(config);
  Simulation sim(grid, exec, config.energy, config.variant, config.mobilities, config.stepper,
                 initial_state(config, grid));
  const double dt = config.stepper.dt;
  const auto total = static_cast<std::int64_t>(std::ceil(config.t_end / dt - 1e-9));

  RunResult out;
  auto add_record = [&] {
    std::optional<DiagnosticsRecord> prev;
    if (!out.series.empty()) prev = out.series.back();
    out.series.push_back(record(sim.spectral(), sim.state(), sim.variant(), sim.energy(),
                                sim.mobilities(), prev, sim.clamp_count()));
  };
  add_record();
  if (observer) observer(sim.state());

  for (std::int64_t n = 1; n <= total; ++n) {
    std::optional<double> dt_step;
    if (n == total) dt_step = config.t_end - sim.state().t;
    try {
      if (dt_step && !(*dt_step > 0.0)) break;
      sim.advance(dt_step);
    } catch (const NonFiniteError& e) {
      throw SimulationAborted(e.what(), sim.state(), out.series);
    }
    if (observer) observer(sim.state());
    if (n % config.record_every == 0 || n == total) add_record();
  }
  out.final_state = sim.state();
  out.clamp_count = sim.clamp_count();
  return out;
}

namespace {

std::vector<SweepRow> with_orders(std::vector<SweepRow> rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& a = rows[i - 1];
    const auto& b = rows[i];
    if (a.error > 0.0 && b.error > 0.0)
      rows[i].order = std::log(a.error / b.error) / std::log(a.dt / b.dt);
  }
  return rows;
}

}  // namespace

std::vector<SweepRow> convergence_sweep(const std::vector<RunConfig>& configs,
                                        SweepQuantity quantity, Execution exec) {
  if (configs.size() < 3) throw std::invalid_argument("a convergence ladder needs at least 3 runs");
  std::vector<SweepRow> rows;
  if (quantity == SweepQuantity::MassError) {
    for (const auto& c : configs) {
      const auto result = simulate(c, exec);
      rows.push_back({c.stepper.dt, std::abs(result.series.back().mass_error), std::nullopt});
    }
    return with_orders(std::move(rows));
  }

  double dt_min = configs.front().stepper.dt;
  for (const auto& c : configs) dt_min = std::min(dt_min, c.stepper.dt);
  auto reference_config = configs.front();
  reference_config.stepper.dt = dt_min / 4.0;
  reference_config.record_every = 1'000'000'000;
  const auto reference = simulate(reference_config, exec).final_state;
  for (auto c : configs) {
    c.record_every = 1'000'000'000;
    const auto h = simulate(c, exec).final_state.h;
    double err = 0.0;
    for (std::size_t k = 0; k < h.size(); ++k) err = std::max(err, std::abs(h[k] - reference.h[k]));
    rows.push_back({c.stepper.dt, err, std::nullopt});
  }
  return with_orders(std::move(rows));
}

VariantComparison compare_variants(const RunConfig& base, double transient, Execution exec) {
  auto full_config = base;
  full_config.variant = ModelVariant::FullCoupled;
  auto normal_config = base;
  normal_config.variant = ModelVariant::NormalOnly;

  VariantComparison out;
  out.full = simulate(full_config, exec).series;
  out.normal = simulate(normal_config, exec).series;

  out.energy_below = true;
  const std::size_t n = std::min(out.full.size(), out.normal.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (out.full[i].t < transient) continue;
    if (out.full[i].energy > out.normal[i].energy) out.energy_below = false;
  }
  const auto& f = out.full.back();
  const auto& m = out.normal.back();
  out.spread_smaller = (f.psi_max - f.psi_min) <= (m.psi_max - m.psi_min);
  return out;
}

}  // namespace gradflow
