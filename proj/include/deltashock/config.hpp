// Plain-text `key = value` run configuration with named variant overlays.
#pragma once

#include "deltashock/core.hpp"
#include "deltashock/flux.hpp"
#include "deltashock/solver.hpp"
#include "deltashock/systems.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace deltashock {

struct InitialSpec {
    std::string kind = "sin";  // sin | shifted-sin | riemann-step | cosh | constant | dx-of-u
    double amplitude = 1.0;
    double offset = 0.0;
    double left = 1.0;   // riemann-step
    double right = 0.0;
    double jump = 0.5;
    double value = 0.0;  // constant
    double alpha = 0.2;  // cosh
    double beta = 0.5;
    double epsilon = 1e-4;

    bool operator==(const InitialSpec&) const = default;
};

struct RunConfig {
    int schema = 1;
    double grid_length = 1.0;
    double grid_origin = 0.0;
    int grid_cells = 500;
    std::string model = "scalar";  // scalar | tans | tans-viscous | keyfitz | hopf-transport
    InitialSpec initial;
    InitialSpec initial_v;          // second component for system models
    std::string flux_family = "hopf";     // hopf | square
    std::string irr_family = "rational";  // none | rational | exponential
    double epsilon = 0.0;
    double eta = 0.0;
    int order = 2;
    double cfl = 0.4;
    std::string dt_policy = "cfl-adaptive";  // cfl-adaptive | fixed
    double fixed_dt = 0.0;
    bool abort_on_nonfinite = true;
    double t_end = 1.0;
    int snapshot_stride = 0;
    int converge_levels = 0;  // > 0 marks a convergence-study config
    std::string out_dir = "out";
    std::vector<std::pair<std::string, std::map<std::string, std::string>>> variants;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

// Variant list to run: the base alone, or one entry per variant with its
// overrides applied and the output directory pushed into a subdirectory.
std::vector<std::pair<std::string, RunConfig>> expand_variants(const RunConfig& cfg);

FieldState initial_state(const RunConfig& cfg);
FluxSpec config_flux(const RunConfig& cfg);
IrregularizationSpec config_irregularization(const RunConfig& cfg);
RegularizationSpec config_regularization(const RunConfig& cfg);
SchemeConfig config_scheme(const RunConfig& cfg);
bool config_is_system(const RunConfig& cfg);
SystemSpec config_system(const RunConfig& cfg);

// Build everything the config describes and integrate to t_end.
Trajectory run_config(const RunConfig& cfg);

std::string format_g17(double v);

}  // namespace deltashock
