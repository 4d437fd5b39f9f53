#include "deltashock/convergence.hpp"

#include "deltashock/io.hpp"

#include <fstream>
#include <stdexcept>

namespace deltashock {

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, int levels,
                                              double spike_threshold) {
    if (levels < 3) throw std::invalid_argument("convergence study needs at least 3 levels");
    if (!(base.epsilon > 0.0))
        throw std::invalid_argument("convergence study needs a positive base epsilon");
    if (base.model != "scalar")
        throw std::invalid_argument("convergence study covers the scalar model");

    std::vector<ConvergenceRow> rows;
    for (int level = 0; level < levels; ++level) {
        RunConfig cfg = base;
        cfg.variants.clear();
        cfg.snapshot_stride = 0;
        cfg.grid_cells = base.grid_cells << level;
        cfg.epsilon = base.epsilon / static_cast<double>(1u << (2 * level));

        const Trajectory traj = run_config(cfg);
        if (traj.aborted)
            throw std::runtime_error("convergence level " + std::to_string(level) +
                                     " aborted: " + traj.abort_reason);
        const FieldState& final_state = traj.last();

        ConvergenceRow row;
        row.level = level;
        row.dx = final_state.grid.dx();
        row.epsilon = cfg.epsilon;
        const SpikeReport s = detect_spike(final_state, nullptr, spike_threshold);
        if (s.found) {
            row.spike_found = true;
            row.width = s.width;
            row.peak_pos = s.peak_pos;
            row.peak_neg = s.peak_neg;
            row.net_mass = s.net_mass;
            row.location = s.location;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_convergence_csv(const std::string& path, const std::vector<ConvergenceRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "level,dx,epsilon,spike_found,width,peak_pos,peak_neg,net_mass,location\n";
    for (const ConvergenceRow& r : rows)
        out << r.level << "," << format_g17(r.dx) << "," << format_g17(r.epsilon) << ","
            << (r.spike_found ? 1 : 0) << "," << format_g17(r.width) << ","
            << format_g17(r.peak_pos) << "," << format_g17(r.peak_neg) << ","
            << format_g17(r.net_mass) << "," << format_g17(r.location) << "\n";
}

}  // namespace deltashock
