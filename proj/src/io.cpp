#include "deltashock/io.hpp"

#include "deltashock/config.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace deltashock {

namespace {

std::string sidecar_path(const std::string& csv_path) {
    std::filesystem::path p(csv_path);
    p.replace_extension(".json");
    return p.string();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    return out;
}

}  // namespace

void ensure_directory(const std::string& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

void write_snapshot(const std::string& csv_path, const FieldState& state) {
    std::ofstream out = open_out(csv_path);
    out << "x";
    for (int c = 0; c < state.components; ++c) out << ",u" << c;
    out << "\n";
    for (int i = 0; i < state.grid.cells; ++i) {
        out << format_g17(state.grid.center(i));
        for (int c = 0; c < state.components; ++c)
            out << "," << format_g17(state.at(c, i));
        out << "\n";
    }

    nlohmann::json meta;
    meta["time"] = state.time;
    meta["components"] = state.components;
    meta["grid"] = {{"origin", state.grid.origin},
                    {"length", state.grid.length},
                    {"cells", state.grid.cells},
                    {"periodic", state.grid.periodic}};
    std::ofstream side = open_out(sidecar_path(csv_path));
    side << meta.dump(2) << "\n";
}

FieldState read_snapshot(const std::string& csv_path) {
    std::ifstream meta_in(sidecar_path(csv_path));
    if (!meta_in)
        throw std::runtime_error("missing snapshot sidecar for '" + csv_path + "'");
    nlohmann::json meta = nlohmann::json::parse(meta_in);
    const Grid1D grid = make_grid(meta["grid"]["length"].get<double>(),
                                  meta["grid"]["cells"].get<int>(),
                                  meta["grid"]["periodic"].get<bool>(),
                                  meta["grid"]["origin"].get<double>());
    FieldState state = make_state(grid, meta["components"].get<int>());
    state.time = meta["time"].get<double>();

    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error("cannot open snapshot '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty snapshot '" + csv_path + "'");
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= grid.cells)
            throw std::runtime_error("snapshot '" + csv_path + "' has too many rows");
        std::istringstream fields(line);
        std::string cell;
        if (!std::getline(fields, cell, ','))
            throw std::runtime_error("bad snapshot row in '" + csv_path + "'");
        for (int c = 0; c < state.components; ++c) {
            if (!std::getline(fields, cell, ','))
                throw std::runtime_error("snapshot row " + std::to_string(row + 1) +
                                         " in '" + csv_path + "' is short");
            state.at(c, row) = std::strtod(cell.c_str(), nullptr);
        }
        ++row;
    }
    if (row != grid.cells)
        throw std::runtime_error("snapshot '" + csv_path + "' has " + std::to_string(row) +
                                 " rows, expected " + std::to_string(grid.cells));
    if (!all_finite(state)) throw std::runtime_error("snapshot '" + csv_path + "' is not finite");
    return state;
}

void write_series_csv(const std::string& path, const StepSeries& series) {
    std::ofstream out = open_out(path);
    out << "time,dt,max_u,min_u,max_grad\n";
    for (std::size_t i = 0; i < series.time.size(); ++i)
        out << format_g17(series.time[i]) << "," << format_g17(series.dt[i]) << ","
            << format_g17(series.max_u[i]) << "," << format_g17(series.min_u[i]) << ","
            << format_g17(series.max_grad[i]) << "\n";
}

void write_run_manifest(const std::string& path, const std::string& config_text,
                        const Trajectory& traj, double wall_seconds) {
    nlohmann::json m;
    m["tool"] = "deltashock";
    m["version"] = "0.1.0";
    m["config"] = config_text;
    m["steps"] = traj.steps;
    m["frames"] = traj.frames.size();
    m["final_time"] = traj.frames.empty() ? 0.0 : traj.frames.back().time;
    m["aborted"] = traj.aborted;
    m["abort_reason"] = traj.abort_reason;
    m["wall_seconds"] = wall_seconds;
    std::ofstream out = open_out(path);
    out << m.dump(2) << "\n";
}

}  // namespace deltashock
