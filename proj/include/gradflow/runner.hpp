#pragma once

/// @file runner.hpp
/// @brief Orchestration behind the command line: runs, comparisons, sweeps
/// and their output files.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "gradflow/diagnostics.hpp"

namespace gradflow {

inline constexpr const char* kSeriesHeader =
    "t,energy,mass,mass_error,h_min,h_max,psi_min,psi_max,dissipation_lhs,dissipation_rhs,"
    "clamp_count";

/// One CSV row, 17 significant digits, empty dissipation_lhs when absent.
std::string csv_row(const DiagnosticsRecord& r);
void write_series(const Series& series, const std::filesystem::path& path);

/// Writes series.csv, snapshot_<t>.sgf for each requested time and
/// report.txt. Returns 0, or 2 after a solver abort (last_valid.sgf is written).
int run_command(const RunConfig& config, const std::filesystem::path& out_dir, Execution exec,
                std::ostream& log);

/// series_full.csv, series_normal.csv and compare.txt.
int compare_command(const RunConfig& config, const std::filesystem::path& out_dir,
                    Execution exec, std::ostream& log);

/// sweep.csv with mass-error orders over the dt ladder.
int sweep_command(const RunConfig& config, const std::vector<double>& dt_ladder,
                  const std::filesystem::path& out_dir, Execution exec, std::ostream& log);

}  // namespace gradflow
