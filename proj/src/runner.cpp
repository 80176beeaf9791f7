#include "gradflow/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "gradflow/snapshot.hpp"

namespace gradflow {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

std::string snapshot_name(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_t%.6f.sgf", t);
  return buf;
}

void write_report(const std::filesystem::path& path, const RunConfig& config,
                  const DiagnosticsRecord& last, double wall, const std::string& status) {
  auto out = open_out(path);
  out << "status " << status << '\n'
      << "variant " << to_string(config.variant) << '\n'
      << "energy_kind " << to_string(config.energy.kind()) << '\n'
      << "steps " << last.step_index << '\n'
      << "t " << g17(last.t) << '\n'
      << "energy " << g17(last.energy) << '\n'
      << "mass " << g17(last.mass) << '\n'
      << "mass_error " << g17(last.mass_error) << '\n'
      << "h_range " << g17(last.h_max - last.h_min) << '\n'
      << "psi_range " << g17(last.psi_max - last.psi_min) << '\n'
      << "dissipation_rhs " << g17(last.dissipation_rhs) << '\n'
      << "clamp_count " << last.clamp_count << '\n'
      << "wall_seconds " << g17(wall) << '\n';
}

}  // namespace

std::string csv_row(const DiagnosticsRecord& r) {
  std::string s;
  for (double v : {r.t, r.energy, r.mass, r.mass_error, r.h_min, r.h_max, r.psi_min, r.psi_max})
    s += g17(v) + ',';
  if (r.dissipation_lhs) s += g17(*r.dissipation_lhs);
  s += ',' + g17(r.dissipation_rhs) + ',' + std::to_string(r.clamp_count);
  return s;
}

void write_series(const Series& series, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << kSeriesHeader << '\n';
  for (const auto& r : series) out << csv_row(r) << '\n';
}

int run_command(const RunConfig& config, const std::filesystem::path& out_dir, Execution exec,
                std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const auto start = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };

  // Each requested time is written once, by the first state at or past it.
  std::vector<double> pending = config.snapshot_times;
  std::sort(pending.begin(), pending.end());
  std::size_t next = 0;
  const double slack = 0.5 * config.stepper.dt;
  auto observer = [&](const FlowState& s) {
    while (next < pending.size() && s.t + slack >= pending[next]) {
      write_snapshot(s, out_dir / snapshot_name(pending[next]));
      ++next;
    }
  };

  try {
    const auto result = simulate(config, exec, observer);
    write_series(result.series, out_dir / "series.csv");
    write_report(out_dir / "report.txt", config, result.series.back(), elapsed(), "ok");
    log << "run finished at t = " << g17(result.final_state.t) << " after "
        << result.final_state.step_index << " steps, " << g17(elapsed()) << " s\n";
    return 0;
  } catch (const SimulationAborted& e) {
    write_series(e.partial(), out_dir / "series.csv");
    write_snapshot(e.last_valid(), out_dir / "last_valid.sgf");
    if (!e.partial().empty())
      write_report(out_dir / "report.txt", config, e.partial().back(), elapsed(),
                   std::string("aborted: ") + e.what());
    log << "solver aborted at t = " << g17(e.last_valid().t) << ": " << e.what() << '\n';
    return 2;
  }
}

int compare_command(const RunConfig& config, const std::filesystem::path& out_dir,
                    Execution exec, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  const auto cmp = compare_variants(config, 0.05, exec);
  write_series(cmp.full, out_dir / "series_full.csv");
  write_series(cmp.normal, out_dir / "series_normal.csv");
  auto out = open_out(out_dir / "compare.txt");
  const auto& f = cmp.full.back();
  const auto& n = cmp.normal.back();
  out << "energy_full_le_normal_after_0.05 " << (cmp.energy_below ? "true" : "false") << '\n'
      << "psi_range_full_le_normal_final " << (cmp.spread_smaller ? "true" : "false") << '\n'
      << "energy_full_final " << g17(f.energy) << '\n'
      << "energy_normal_final " << g17(n.energy) << '\n'
      << "psi_range_full_final " << g17(f.psi_max - f.psi_min) << '\n'
      << "psi_range_normal_final " << g17(n.psi_max - n.psi_min) << '\n';
  log << "energy ordering " << (cmp.energy_below ? "holds" : "fails") << ", psi spread ordering "
      << (cmp.spread_smaller ? "holds" : "fails") << '\n';
  return 0;
}

int sweep_command(const RunConfig& config, const std::vector<double>& dt_ladder,
                  const std::filesystem::path& out_dir, Execution exec, std::ostream& log) {
  std::filesystem::create_directories(out_dir);
  std::vector<RunConfig> configs;
  for (double dt : dt_ladder) {
    auto c = config;
    c.stepper.dt = dt;
    c.record_every = 1'000'000'000;
    validate(c);
    configs.push_back(c);
  }
  const auto rows = convergence_sweep(configs, SweepQuantity::MassError, exec);
  auto out = open_out(out_dir / "sweep.csv");
  out << "dt,mass_error,observed_order\n";
  for (const auto& r : rows) {
    out << g17(r.dt) << ',' << g17(r.error) << ',';
    if (r.order) out << g17(*r.order);
    out << '\n';
    log << "dt " << g17(r.dt) << "  |mass_error| " << g17(r.error);
    if (r.order) log << "  order " << g17(*r.order);
    log << '\n';
  }
  return 0;
}

}  // namespace gradflow
