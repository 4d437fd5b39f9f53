// Snapshot, series, and manifest writers. All numeric text uses 17
// significant digits so a written state reads back bit-for-bit.
#pragma once

#include "deltashock/core.hpp"
#include "deltashock/solver.hpp"

#include <string>
#include <vector>

namespace deltashock {

// CSV with header `x,u0[,u1]` plus a JSON sidecar (same stem, .json) that
// records the grid, time, and component count.
void write_snapshot(const std::string& csv_path, const FieldState& state);
FieldState read_snapshot(const std::string& csv_path);

void write_series_csv(const std::string& path, const StepSeries& series);

// Run provenance: effective config text, tool version, step counts, abort
// flag, and wall-clock seconds (the only field allowed to differ on rerun).
void write_run_manifest(const std::string& path, const std::string& config_text,
                        const Trajectory& traj, double wall_seconds);

void ensure_directory(const std::string& dir);

}  // namespace deltashock
