// Jump conditions for scalar and two-component Riemann data, including the
// generalized balance where the defect absorbs the unmatched flux.
#pragma once

#include "deltashock/flux.hpp"

#include <functional>
#include <vector>

namespace deltashock {

struct RiemannData {
    std::vector<double> left;
    std::vector<double> right;
};

using VectorFlux = std::function<std::vector<double>(const std::vector<double>&)>;

VectorFlux scalar_vector_flux(FluxSpec flux);
VectorFlux tans_vector_flux();     // (u^2, u v)
VectorFlux keyfitz_vector_flux();  // (u^2 - v, u^3/3 - u)
VectorFlux transport_vector_flux(FluxSpec flux, std::function<double(double)> g);  // (F(u), g(u) v)

// Classical shock speed, per component. A component with zero state jump and
// zero flux jump holds for any speed and is left out of the agreement vote.
struct ShockSpeedResult {
    bool overdetermined = false;
    double speed = 0.0;                    // meaningful when !overdetermined
    std::vector<double> component_speeds;  // NaN marks a no-vote component
};

ShockSpeedResult classical_shock_speed(const VectorFlux& flux, const RiemannData& data,
                                       double rel_tol = 1e-12);

// d/dt of defect mass when the discontinuity moves at sigma:
// F(u_l) - F(u_r) - sigma (u_l - u_r), per component.
std::vector<double> delta_mass_rate(const VectorFlux& flux, const RiemannData& data, double sigma);

// True iff u_l v_r == u_r v_l within rel_tol; exactly the states for which the
// (u^2, u v) system admits a classical single-speed shock.
bool tans_degeneracy(const RiemannData& data, double rel_tol = 1e-12);

// Step profile plus point masses: the weak solution object for defect shocks.
struct StepProfile {
    double position = 0.0;
    std::vector<double> left;
    std::vector<double> right;
};

struct PointAtom {
    double position = 0.0;
    std::vector<double> mass;
};

struct AtomicMeasure1D {
    StepProfile regular;
    std::vector<PointAtom> atoms;
};

// Stationary solution for step data (1, 0) under the Hopf flux: the step does
// not move and the atom at the jump grows linearly, mass t/2.
AtomicMeasure1D stationary_riemann_solution(double t);

}  // namespace deltashock
