// Acceptance run: one PASS/FAIL line per criterion. Pass criterion numbers
// as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "gradflow/diagnostics.hpp"

using namespace gradflow;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "!") + what;
  }
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Energy nonincreasing with |U0| 1e-8 slack per step; h range decreasing.
void check_relaxation(Outcome& o, const Series& s, int record_every, const std::string& tag) {
  const double slack = std::abs(s.front().energy) * 1e-8 * record_every;
  double worst_rise = -INFINITY;
  bool flattening = true;
  for (std::size_t i = 1; i < s.size(); ++i) {
    worst_rise = std::max(worst_rise, s[i].energy - s[i - 1].energy);
    if (s[i].h_max - s[i].h_min >= s[i - 1].h_max - s[i - 1].h_min) flattening = false;
  }
  const double rel_mass = std::abs(s.back().mass_error) / s.front().mass;
  o.require(worst_rise <= slack, tag + " max dU/record " + fmt("%.3e", worst_rise));
  o.require(rel_mass < 1e-4, tag + " |mass_error|/mass " + fmt("%.2e", rel_mass));
  o.require(flattening, tag + " h range " + fmt("%.4f", s.front().h_max - s.front().h_min) + " -> " +
                            fmt("%.4f", s.back().h_max - s.back().h_min));
}

VariantComparison& relaxation_comparison() {
  static VariantComparison cmp = [] {
    auto c = fixtures::relaxation();
    return compare_variants(c, 0.05);
  }();
  return cmp;
}

Outcome criterion1() {
  Outcome o;
  check_relaxation(o, relaxation_comparison().full, 100, "128^2");

  auto c = fixtures::relaxation(64, 4e-5, 0.8);
  c.record_every = 25;
  const auto t0 = std::chrono::steady_clock::now();
  const auto run = simulate(c);
  const double wall = seconds_since(t0);
  check_relaxation(o, run.series, 25, "64^2");
  o.require(wall < 60.0, "64^2 wall " + fmt("%.1f s", wall));
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto& cmp = relaxation_comparison();
  double margin = INFINITY;
  for (std::size_t i = 0; i < cmp.full.size(); ++i)
    if (cmp.full[i].t >= 0.05) margin = std::min(margin, cmp.normal[i].energy - cmp.full[i].energy);
  const auto& f = cmp.full.back();
  const auto& n = cmp.normal.back();
  o.require(cmp.energy_below, "min(U_normal - U_full) for t>=0.05 " + fmt("%.3e", margin));
  o.require(cmp.spread_smaller, "psi range full " + fmt("%.5f", f.psi_max - f.psi_min) + " vs normal " +
                                    fmt("%.5f", n.psi_max - n.psi_min));
  return o;
}

const double kLadder[] = {4e-5, 2e-5, 1e-5};

Outcome criterion3() {
  Outcome o;
  std::vector<RunConfig> configs;
  for (double dt : kLadder) {
    auto c = fixtures::relaxation(128, dt, 0.05);
    c.record_every = 1'000'000'000;
    configs.push_back(c);
  }
  const auto rows = convergence_sweep(configs, SweepQuantity::MassError);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::string line = "dt " + fmt("%.0e", rows[i].dt) + " err " + fmt("%.3e", rows[i].error);
    if (rows[i].order) {
      line += " order " + fmt("%.3f", *rows[i].order);
      o.require(*rows[i].order >= 0.8 && *rows[i].order <= 1.2, line);
    } else {
      o.require(true, line);
    }
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::vector<double> mismatch;
  for (double dt : kLadder) {
    const auto c = fixtures::relaxation(128, dt, 0.05);
    const auto grid = make_grid(c);
    Simulation sim(grid, Execution::Serial, c.energy, c.variant, c.mobilities, c.stepper,
                   initial_state(c, grid));
    const auto steps = static_cast<long>(std::llround(c.t_end / dt));
    for (long n = 1; n < steps; ++n) sim.advance();
    const auto before = record(sim.spectral(), sim.state(), sim.variant(), sim.energy(), sim.mobilities(), {});
    sim.advance();
    const auto after = record(sim.spectral(), sim.state(), sim.variant(), sim.energy(), sim.mobilities(), before);
    mismatch.push_back(std::abs(*after.dissipation_lhs - after.dissipation_rhs) / std::abs(after.dissipation_rhs));
  }
  for (std::size_t i = 0; i < mismatch.size(); ++i) {
    std::string line = "dt " + fmt("%.0e", kLadder[i]) + " rel " + fmt("%.3e", mismatch[i]);
    if (i == 0) {
      o.require(true, line);
    } else {
      const double factor = mismatch[i - 1] / mismatch[i];
      o.require(factor >= 1.5, line + " factor " + fmt("%.2f", factor));
    }
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto g = fixtures::square(64);
  const Mobilities mob{1.0, 1.0};

  {  // linear: frozen
    FlowState s;
    s.h = ScalarField::sample(g, [](double x, double y) { return std::sin(2 * x) * std::sin(2 * y); });
    s.psi = ScalarField::sample(g, fixtures::smooth_psi);
    Simulation sim(g, Execution::Serial, EnergyModel::linear(1.0), ModelVariant::FullCoupled, mob,
                   {1e-5, Scheme::IMEX1, {}, {}}, s);
    for (int n = 0; n < 1000; ++n) sim.advance();
    const double drift = std::max(fixtures::max_abs_diff(sim.state().h, s.h),
                                  fixtures::max_abs_diff(sim.state().psi, s.psi));
    o.require(drift <= 1e-14, "linear drift " + fmt("%.1e", drift));
  }

  {  // constant: no tangential velocity, conservative transport, curvature decay
    const double c = 1.0, amp = 0.01, t_end = 0.25;
    FlowState s;
    s.h = ScalarField::sample(g, [&](double x, double) { return amp * std::sin(2 * x); });
    s.psi = ScalarField(g, 1.0);
    const auto energy = EnergyModel::constant(c);
    Simulation sim(g, Execution::Serial, energy, ModelVariant::FullCoupled, mob,
                   {1e-4, Scheme::IMEX1, {}, {}}, s);
    double v_max = 0.0, transport = 0.0;
    const auto steps = static_cast<int>(std::lround(t_end / 1e-4));
    for (int n = 0; n <= steps; ++n) {
      if (n % 250 == 0) {
        const auto r = sim.rates();
        v_max = std::max({v_max, r.vflat.x.max_abs(), r.vflat.y.max_abs()});
        const auto ddth = sim.spectral().gradient(r.dth);
        ScalarField rate(g);
        for (std::size_t k = 0; k < rate.size(); ++k) {
          const double root = r.geo.sqrt_g[k];
          rate[k] = r.dtpsi[k] * root +
                    sim.state().psi[k] * (r.geo.dh.x[k] * ddth.x[k] + r.geo.dh.y[k] * ddth.y[k]) / root;
        }
        const double mass = surface_integral(sim.spectral(), sim.state().psi, r.geo);
        transport = std::max(transport, std::abs(sim.spectral().integrate(rate)) / mass);
      }
      if (n < steps) sim.advance();
    }
    const double measured = sim.state().h.max_abs();
    const double oracle = amp * std::exp(-4.0 * c * t_end / mob.m_x);
    o.require(v_max == 0.0, "constant v max " + fmt("%.1e", v_max));
    o.require(transport < 1e-10, "transport identity " + fmt("%.1e", transport));
    o.require(std::abs(measured / oracle - 1.0) < 0.05,
              "h amplitude " + fmt("%.5e", measured) + " vs " + fmt("%.5e", oracle));
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  const auto g = fixtures::square(32);
  FlowState s;
  s.h = ScalarField::sample(g, [](double x, double y) { return 0.1 * std::sin(x) * std::sin(y); });
  s.psi = ScalarField::sample(g, [](double x, double y) { return 0.5 + 0.2 * std::cos(x) * std::cos(y); });
  const auto q = EnergyModel::quadratic(1.0);
  const Mobilities mob{0.01, 1.0};
  const StepperConfig st{1e-6, Scheme::IMEX1, {}, {}};

  auto energies = [&](ModelVariant variant) {
    Simulation sim(g, Execution::Serial, q, variant, mob, st, s);
    std::vector<double> u;
    for (int n = 0; n <= 500; ++n) {
      if (n % 10 == 0)
        u.push_back(record(sim.spectral(), sim.state(), variant, q, mob, {}).energy);
      if (n < 500) sim.advance();
    }
    return u;
  };
  const auto material = energies(ModelVariant::MaterialGaugeQuadratic);
  const auto truesdell = energies(ModelVariant::FullCoupled);
  int rising = 0;
  double worst = -INFINITY;
  for (std::size_t i = 1; i < material.size(); ++i) rising += material[i] > material[i - 1];
  for (std::size_t i = 1; i < truesdell.size(); ++i) worst = std::max(worst, truesdell[i] - truesdell[i - 1]);
  o.require(rising > 0, "material gauge rising intervals " + std::to_string(rising) + "/" +
                            std::to_string(material.size() - 1));
  o.require(worst <= 0.0, "truesdell max dU " + fmt("%.3e", worst));
  return o;
}

Outcome criterion7() {
  Outcome o;
  struct Op {
    const char* name;
    std::function<double(int)> error;
  };
  auto setup = [](int n) {
    struct S {
      GridPtr g;
      Spectral sp;
      fd::Mesh m;
      ScalarField h, psi, dtpsi, dth;
      VectorField2 v;
      GeometryCache geo;
    };
    const auto g = fixtures::square(n);
    Spectral sp(g);
    const auto h = ScalarField::sample(g, fixtures::bumpy_h);
    auto geo = build_cache(sp, h);
    return S{g, std::move(sp), fixtures::mesh_of(*g), h, ScalarField::sample(g, fixtures::smooth_psi),
             ScalarField::sample(g, fixtures::smooth_dth), ScalarField::sample(g, fixtures::smooth_vy),
             VectorField2(ScalarField::sample(g, fixtures::smooth_vx), ScalarField::sample(g, fixtures::smooth_vy)),
             std::move(geo)};
  };
  using fixtures::plain;
  const std::vector<Op> ops = {
      {"hfrak", [&](int n) {
         const auto s = setup(n);
         const auto H = plain(s.h);
         const auto mean = fd::mean_curvature(s.m, H);
         const auto g = fd::metric(s.m, H);
         return fd::max_abs_diff(fd::pointwise(s.m, [&](std::size_t k) { return mean[k] / g.root[k]; }),
                                 plain(s.geo.hfrak));
       }},
      {"normal", [&](int n) {
         const auto s = setup(n);
         return fd::max_abs_diff(fd::unit_normal(s.m, plain(s.h))[1], plain(s.geo.normal[1]));
       }},
      {"laplace_beltrami", [&](int n) {
         const auto s = setup(n);
         return fd::max_abs_diff(fd::laplace_beltrami(s.m, plain(s.h), plain(s.psi)),
                                 plain(laplace_beltrami(s.sp, s.psi, s.geo)));
       }},
      {"grad_sq", [&](int n) {
         const auto s = setup(n);
         return fd::max_abs_diff(fd::grad_sq(s.m, plain(s.h), plain(s.psi)),
                                 plain(covariant_grad_sq(s.sp, s.psi, s.geo)));
       }},
      {"div_material", [&](int n) {
         const auto s = setup(n);
         const auto V = fd::material_velocity(s.m, plain(s.h), plain(s.v.x), plain(s.v.y), plain(s.dth));
         return fd::max_abs_diff(fd::surface_divergence(s.m, plain(s.h), V),
                                 plain(div_comp_material(s.sp, s.v, s.dth, s.geo)));
       }},
      {"truesdell", [&](int n) {
         const auto s = setup(n);
         return fd::max_abs_diff(
             fd::truesdell_rate(s.m, plain(s.h), plain(s.psi), plain(s.dtpsi), plain(s.v.x), plain(s.v.y),
                                plain(s.dth)),
             plain(truesdell_rate(s.sp, s.psi, s.dtpsi, s.v, s.dth, s.geo)));
       }},
  };
  double worst = INFINITY;
  std::string worst_name;
  for (const auto& op : ops) {
    double prev = op.error(64);
    for (int n : {128, 256, 512}) {
      const double cur = op.error(n);
      const double order = fd::observed_order(prev, cur);
      if (order < worst) {
        worst = order;
        worst_name = op.name;
      }
      prev = cur;
    }
  }
  o.require(worst >= 3.5, "min observed order " + fmt("%.2f", worst) + " (" + worst_name + ")");

  // flat reductions
  const auto g = fixtures::square(64);
  const Spectral sp(g);
  const auto flat = build_cache(sp, ScalarField(g, 0.3));
  const auto f = ScalarField::sample(g, fixtures::smooth_psi);
  double flat_err = fixtures::max_abs_diff(laplace_beltrami(sp, f, flat), sp.laplacian(f));
  flat_err = std::max(flat_err, flat.hfrak.max_abs());
  flat_err = std::max(flat_err, flat.mean_curv.max_abs());
  o.require(flat_err < 1e-12, "flat reduction " + fmt("%.1e", flat_err));
  return o;
}

Outcome criterion8() {
  Outcome o;
  const auto g = fixtures::square(32);
  const Spectral sp(g);
  const auto geo = build_cache(sp, ScalarField::sample(g, fixtures::bumpy_h));
  const auto psi = ScalarField::sample(g, fixtures::smooth_psi);
  const auto phi = ScalarField::sample(g, [](double x, double y) { return std::cos(x - 2 * y) + 0.5 * std::sin(y); });
  const EnergyModel presets[] = {EnergyModel::constant(1.3), EnergyModel::linear(0.7),
                                 EnergyModel::quadratic(2.0), EnergyModel::flory_huggins(1.0, 0.75, 0.0),
                                 EnergyModel::flory_huggins(0.5, 0.4, 1.1)};
  for (const auto& m : presets) {
    const auto d = functional_derivatives(sp, m, psi, geo);
    ScalarField prod(g);
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = d.dpsi[k] * phi[k];
    const double exact = surface_integral(sp, prod, geo);
    auto error = [&](double eps) {
      ScalarField up(g), down(g);
      for (std::size_t k = 0; k < psi.size(); ++k) {
        up[k] = psi[k] + eps * phi[k];
        down[k] = psi[k] - eps * phi[k];
      }
      return std::abs((total_energy(sp, m, up, geo) - total_energy(sp, m, down, geo)) / (2 * eps) - exact);
    };
    const double e1 = error(1e-2), e2 = error(5e-3);
    const double scale = std::max(1.0, std::abs(exact));
    const bool exact_fd = e1 < 1e-11 * scale;
    const std::string name(to_string(m.kind()));
    if (exact_fd)
      o.require(true, name + " exact " + fmt("%.1e", e1));
    else
      o.require(std::abs(e1 / e2 - 4.0) < 0.2, name + " ratio " + fmt("%.3f", e1 / e2));
  }

  auto c = fixtures::relaxation(128, 1e-6, 1e-4);
  c.stepper.scheme = Scheme::ExplicitEuler;
  const auto grid = make_grid(c);
  const auto init = initial_state(c, grid);
  Simulation full(grid, Execution::Serial, c.energy, ModelVariant::FullCoupled, c.mobilities, c.stepper, init);
  Simulation sub(grid, Execution::Serial, c.energy, ModelVariant::VelocitySubstituted, c.mobilities, c.stepper, init);
  for (int n = 0; n < 100; ++n) {
    full.advance();
    sub.advance();
  }
  const double rel = std::max(fixtures::max_abs_diff(full.state().psi, sub.state().psi) / full.state().psi.max_abs(),
                              fixtures::max_abs_diff(full.state().h, sub.state().h) / full.state().h.max_abs());
  o.require(rel < 1e-6, "coupled vs substituted after 100 steps " + fmt("%.1e", rel));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"relaxation of the Flory-Huggins graph", criterion1},
      {"full model against normal-only motion", criterion2},
      {"first-order mass conservation error", criterion3},
      {"energy rate matches dissipation", criterion4},
      {"linear and constant energy special cases", criterion5},
      {"material gauge can raise the energy", criterion6},
      {"geometry against finite differences", criterion7},
      {"variational gradient and substituted law", criterion8},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = criteria[i].second();
    failures += !out.pass;
    std::printf("[%s] %d %s (%.1f s): %s\n", out.pass ? "PASS" : "FAIL", id, criteria[i].first,
                seconds_since(t0), out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
