// Two-component models that develop defect shocks: the (u^2, uv) pair, its
// viscous variant, the Keyfitz-Kranzer flux, and F(u)/g(u)v transport.
#pragma once

#include "deltashock/solver.hpp"

#include <memory>

namespace deltashock {

enum class SystemKind { tans, tans_viscous, keyfitz, transport };

struct SystemSpec {
    SystemKind kind = SystemKind::tans;
    double eta = 0.0;  // k=2 viscosity applied to the u component only
    FluxSpec conv;                        // transport kind: F(u)
    std::function<double(double)> g;      // transport kind: v advection speed
    std::function<double(double)> speed;  // transport kind: per-cell wave speed bound
};

SystemSpec make_tans_system();
SystemSpec make_tans_viscous_system(double eta);
SystemSpec make_keyfitz_system();
SystemSpec make_transport_system(FluxSpec conv, std::function<double(double)> g,
                                 std::function<double(double)> speed);
// Transport pair with the Hopf flux: u_t + (u^2/2)_x = eta u_xx,
// v_t + (u v)_x = 0. Differentiating the u equation shows v tracks u_x.
SystemSpec make_hopf_transport_system(double eta = 0.0);

// Semi-discrete right side. Scalar components use the solver's upwind flux,
// v transport upwinds on the sign of g(u_i) + g(u_{i+1}), and the Keyfitz
// pair uses a local Lax-Friedrichs flux with speed bound max(|2u| + 1).
void system_rhs(const FieldState& state, const SystemSpec& spec, std::vector<double>& out);

RhsOperator system_operator(const SystemSpec& spec);

// Filter for the u component when the spec carries viscosity; null otherwise.
std::unique_ptr<SpectralFilter> system_filter(const Grid1D& grid, const SystemSpec& spec);

// Circular central difference of one component.
std::vector<double> central_derivative(const FieldState& state, int comp = 0);

// Per-frame |v - D_x u|_1 / |D_x u|_1.
std::vector<double> derivative_consistency(const Trajectory& traj);

}  // namespace deltashock
