// Post-processing: zero crossings, windowed masses, spike detection, the
// slope ODE, and the large-time ramp-plus-cosh profile construction.
#pragma once

#include "deltashock/core.hpp"
#include "deltashock/solver.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace deltashock {

enum class CrossingDirection { upward, downward };

struct ZeroCrossing {
    double position = 0.0;
    CrossingDirection direction = CrossingDirection::upward;
};

// Sign changes located by linear interpolation, periodic wrap included.
// A constant-sign state has none.
std::vector<ZeroCrossing> zero_crossings(const FieldState& state, int comp = 0);

// Integral of u over [a, b] with piecewise-constant cells, partial cells included.
// Requires origin <= a <= b <= origin + length.
double mass_between(const FieldState& state, double a, double b, int comp = 0);

// Same, but walks rightward from a to b across the periodic seam when b < a.
double mass_between_periodic(const FieldState& state, double a, double b, int comp = 0);

struct AsymptoticSpike {
    double alpha = 0.0;    // cosh amplitude, the ramp height where the defect starts
    double beta = 0.0;     // cosh center
    double epsilon = 0.0;
    double mass = 0.0;     // defect mass fed by the window imbalance
    double cut = 0.0;      // discontinuity position (the downward crossing)
};

// Linear ramp through the upward crossing plus one cosh cap at the cut.
struct AsymptoticProfile {
    double slope_b = 0.0;
    double intercept_a = 0.0;  // -slope_b * crossing_up
    double crossing_up = 0.0;
    double crossing_down = 0.0;
    double origin = 0.0;
    double length = 0.0;
    std::vector<AsymptoticSpike> spikes;

    // Ramp value at x; the periodic branch cut sits at crossing_down.
    double eval_linear(double x) const;
    // Ramp with the cosh cap in place on [beta, cut].
    double eval(double x) const;
};

struct SpikeReport {
    bool found = false;
    double location = 0.0;  // x of the largest |u - background| excursion
    double peak_pos = 0.0;  // max u over the spike window
    double peak_neg = 0.0;  // min u over the spike window
    double width = 0.0;     // full width at half the peak excursion of |u - background|
    double net_mass = 0.0;  // integral of (u - background) over the window
    double window_lo = 0.0, window_hi = 0.0;  // arc from lo rightward to hi
    std::optional<double> cosh_alpha, cosh_beta;
};

// Background defaults to the cell median; a profile supplies the ramp instead.
// The spike window is the smallest arc holding every cell whose excursion
// exceeds threshold times the 90th-percentile excursion.
SpikeReport detect_spike(const FieldState& state, const AsymptoticProfile* background = nullptr,
                         double threshold = 3.0, int comp = 0);

// alpha * cosh((x - beta) / (alpha sqrt(epsilon))); requires epsilon > 0, alpha != 0.
double cosh_profile(double alpha, double beta, double epsilon, double x);

// Decaying slope at a tracked upward crossing: ds/dt = -s^2 / (1 + eps s^2).
// Inverts t = (1/s - eps s) - (1/s0 - eps s0); closed form s0/(1 + s0 t) at eps = 0.
double slope_ode_solve(double s0, double epsilon, double t);

// Predict the state at time t from smooth initial data with one upward and
// one downward crossing: ramp slope from the slope ODE, defect mass from the
// initial windowed mass minus the ramp's share, cosh cap placed by matching
// that mass.
AsymptoticProfile asymptotic_profile(const FieldState& initial, double epsilon, double t);

// Per-frame (max, min) of component 0.
std::vector<std::pair<double, double>> running_extrema(const Trajectory& traj);

}  // namespace deltashock
