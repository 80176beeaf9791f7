#pragma once

/// @file snapshot.hpp
/// @brief Binary state snapshots.
///
/// Layout, little-endian: "SGF1", u32 nx, u32 ny, f64 lx, f64 ly, f64 t,
/// nx*ny f64 of h (row-major), nx*ny f64 of psi (row-major).

#include <cstdint>
#include <string>
#include <vector>

#include "gradflow/flow.hpp"

namespace gradflow {

struct SnapshotData {
  std::uint32_t nx = 0;
  std::uint32_t ny = 0;
  double lx = 0.0;
  double ly = 0.0;
  double t = 0.0;
  std::vector<double> h;
  std::vector<double> psi;
};

void write_snapshot(const FlowState& state, const std::string& path);

/// Throws SnapshotError on bad magic, truncation or trailing bytes.
SnapshotData read_snapshot_data(const std::string& path);
/// State on a fresh (dealiased) grid built from the header.
FlowState read_snapshot(const std::string& path);
/// State on an existing grid; throws SnapshotError on shape mismatch.
FlowState read_snapshot(const std::string& path, const GridPtr& grid);

}  // namespace gradflow
