#include "deltashock/analysis.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace deltashock;

namespace {

FieldState sine_state(int n, double offset = 0.0) {
    return sample(make_grid(1.0, n),
                  [offset](double x) { return std::sin(2.0 * M_PI * x) + offset; });
}

}  // namespace

TEST_CASE("sine has one upward and one downward crossing at the exact spots") {
    const FieldState s = sine_state(500);
    const auto cr = zero_crossings(s);
    REQUIRE(cr.size() == 2);
    const ZeroCrossing& up = cr[0].direction == CrossingDirection::upward ? cr[0] : cr[1];
    const ZeroCrossing& down = cr[0].direction == CrossingDirection::upward ? cr[1] : cr[0];
    CHECK(up.direction == CrossingDirection::upward);
    CHECK(down.direction == CrossingDirection::downward);
    // The upward crossing sits on the periodic seam; either representation
    // of that point is fine.
    CHECK(std::min(up.position, 1.0 - up.position) <= 1e-9);
    CHECK(down.position == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("shifted sine crossings land on the arcsine values") {
    const FieldState s = sine_state(500, 0.1);
    const auto cr = zero_crossings(s);
    REQUIRE(cr.size() == 2);
    const double down = 0.5 + std::asin(0.1) / (2.0 * M_PI);
    const double up = 1.0 - std::asin(0.1) / (2.0 * M_PI);
    CHECK(cr[0].direction == CrossingDirection::downward);
    CHECK(std::abs(cr[0].position - down) <= 1e-4);
    CHECK(cr[1].direction == CrossingDirection::upward);
    CHECK(std::abs(cr[1].position - up) <= 1e-4);
}

TEST_CASE("constant-sign and identically-zero states have no crossings") {
    CHECK(zero_crossings(sine_state(100, 2.0)).empty());
    CHECK(zero_crossings(make_state(make_grid(1.0, 100))).empty());
}

TEST_CASE("exact-zero plateaus give one crossing between the nonzero neighbors") {
    FieldState s = make_state(make_grid(1.0, 100));
    for (int i = 0; i < 100; ++i)
        s.at(0, i) = i < 30 ? -1.0 : (i < 60 ? 0.0 : 1.0);
    const auto cr = zero_crossings(s);
    REQUIRE(cr.size() == 2);
    // Upward through the plateau, downward across the periodic seam.
    const ZeroCrossing& up = cr[0].direction == CrossingDirection::upward ? cr[0] : cr[1];
    const ZeroCrossing& down = cr[0].direction == CrossingDirection::upward ? cr[1] : cr[0];
    CHECK(up.direction == CrossingDirection::upward);
    CHECK(up.position > 0.29);
    CHECK(up.position < 0.61);
    CHECK(down.direction == CrossingDirection::downward);
    CHECK(std::min(down.position, 1.0 - down.position) <= 0.02);
}

TEST_CASE("windowed mass is exact for constants, partial cells included") {
    const FieldState s = sample(make_grid(1.0, 64), [](double) { return 2.5; });
    CHECK(mass_between(s, 0.3, 0.8) == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(mass_between(s, 0.301, 0.799) == doctest::Approx(2.5 * 0.498).epsilon(1e-13));
    CHECK(mass_between(s, 0.5, 0.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("windowed mass matches the sine integral") {
    const FieldState s = sine_state(500);
    const double want = 1.0 / M_PI;  // integral of sin(2 pi x) over [0, 1/2]
    CHECK(std::abs(mass_between(s, 0.0, 0.5) - want) <= 1e-5);
}

TEST_CASE("windowed mass is additive") {
    const FieldState s = sine_state(300, 0.2);
    const double whole = mass_between(s, 0.1, 0.9);
    const double split = mass_between(s, 0.1, 0.47) + mass_between(s, 0.47, 0.9);
    CHECK(whole == doctest::Approx(split).epsilon(1e-12));
}

TEST_CASE("periodic windowed mass wraps across the seam") {
    const FieldState s = sine_state(400, 0.3);
    const double wrapped = mass_between_periodic(s, 0.9, 0.2);
    const double pieces = mass_between(s, 0.9, 1.0) + mass_between(s, 0.0, 0.2);
    CHECK(wrapped == doctest::Approx(pieces).epsilon(1e-12));
}

TEST_CASE("windowed mass validates its interval") {
    const FieldState s = sine_state(64);
    CHECK_THROWS_AS(mass_between(s, 0.8, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(mass_between(s, -0.5, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(mass_between(s, 0.5, 1.5), std::invalid_argument);
}

TEST_CASE("slope ODE closed form at eps = 0") {
    for (double t : {0.0, 0.3, 2.0, 50.0})
        CHECK(slope_ode_solve(2.0, 0.0, t) == 2.0 / (1.0 + 2.0 * t));
}

TEST_CASE("slope ODE hits the hand-solved point s = 1/2") {
    // eps = 1, s0 = 1: 1/s - s = 3/2 has the positive root 1/2.
    CHECK(std::abs(slope_ode_solve(1.0, 1.0, 1.5) - 0.5) <= 1e-12);
}

TEST_CASE("slope ODE satisfies its implicit relation") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> s_dist(0.1, 20.0);
    std::uniform_real_distribution<double> e_dist(0.0, 1e-2);
    std::uniform_real_distribution<double> t_dist(0.0, 10.0);
    for (int k = 0; k < 60; ++k) {
        const double s0 = s_dist(rng), eps = e_dist(rng), t = t_dist(rng);
        const double s = slope_ode_solve(s0, eps, t);
        CHECK(s > 0.0);
        CHECK(s <= s0 + 1e-15);
        if (eps == 0.0) continue;
        const double resid = (1.0 / s - eps * s) - (1.0 / s0 - eps * s0) - t;
        CHECK(std::abs(resid) <= 1e-12 * std::max({1.0, 1.0 / s, t}));
    }
}

TEST_CASE("slope ODE is monotone decreasing in time") {
    double prev = slope_ode_solve(6.0, 1e-4, 0.0);
    for (double t : {0.1, 0.5, 1.0, 3.0, 9.0}) {
        const double s = slope_ode_solve(6.0, 1e-4, t);
        CHECK(s < prev);
        prev = s;
    }
}

TEST_CASE("slope ODE validates its arguments") {
    CHECK_THROWS_AS(slope_ode_solve(0.0, 1e-4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(slope_ode_solve(-1.0, 1e-4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(slope_ode_solve(1.0, -1e-4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(slope_ode_solve(1.0, 1e-4, -1.0), std::invalid_argument);
}

TEST_CASE("cosh profile value and validation") {
    CHECK(cosh_profile(0.2, 0.5, 1e-4, 0.5) == doctest::Approx(0.2).epsilon(1e-15));
    const double z = 0.01 / (0.2 * 0.01);  // (x - beta)/(alpha sqrt(eps))
    CHECK(cosh_profile(0.2, 0.5, 1e-4, 0.51) ==
          doctest::Approx(0.2 * std::cosh(z)).epsilon(1e-14));
    CHECK_THROWS_AS(cosh_profile(0.2, 0.5, 0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(cosh_profile(0.0, 0.5, 1e-4, 0.5), std::invalid_argument);
}

TEST_CASE("a single hot cell is reported as a spike of width dx") {
    const int n = 200, k = 77;
    FieldState s = make_state(make_grid(1.0, n));
    s.at(0, k) = 10.0;
    const SpikeReport rep = detect_spike(s);
    REQUIRE(rep.found);
    CHECK(rep.location == doctest::Approx(s.grid.center(k)).epsilon(1e-13));
    CHECK(rep.peak_pos == 10.0);
    CHECK(rep.net_mass == doctest::Approx(10.0 / n).epsilon(1e-12));
    CHECK(rep.width == doctest::Approx(1.0 / n).epsilon(1e-12));
    CHECK(rep.window_lo <= rep.location);
}

TEST_CASE("a smooth sine is not a spike") {
    CHECK(!detect_spike(sine_state(400)).found);
    CHECK(!detect_spike(sine_state(400, 0.1)).found);
}

TEST_CASE("spike riding a sine is found against the median background") {
    const int n = 400;
    FieldState s = sine_state(n);
    s.at(0, 123) += 25.0;
    const SpikeReport rep = detect_spike(s);
    REQUIRE(rep.found);
    CHECK(rep.location == doctest::Approx(s.grid.center(123)).epsilon(1e-12));
    CHECK(rep.peak_pos >= 24.0);
}

TEST_CASE("spike window can straddle the periodic seam") {
    const int n = 200;
    FieldState s = make_state(make_grid(1.0, n));
    s.at(0, n - 1) = 8.0;
    s.at(0, 0) = 9.0;
    s.at(0, 1) = 7.5;
    const SpikeReport rep = detect_spike(s);
    REQUIRE(rep.found);
    CHECK(rep.location == doctest::Approx(s.grid.center(0)).epsilon(1e-12));
    CHECK(rep.width > 0.0);
    CHECK(rep.width <= 4.0 / n);
    CHECK(rep.net_mass == doctest::Approx(24.5 / n).epsilon(1e-10));
}

TEST_CASE("detect_spike validates the threshold") {
    CHECK_THROWS_AS(detect_spike(sine_state(64), nullptr, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(detect_spike(sine_state(64), nullptr, -1.0), std::invalid_argument);
}

TEST_CASE("ramp background subtracts before detection") {
    AsymptoticProfile prof;
    prof.slope_b = 2.0;
    prof.crossing_up = 0.2;
    prof.crossing_down = 0.9;
    prof.origin = 0.0;
    prof.length = 1.0;

    CHECK(prof.eval_linear(0.2) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(prof.eval_linear(0.5) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(prof.eval_linear(0.95) == doctest::Approx(-0.5).epsilon(1e-14));

    const int n = 500;
    FieldState s = make_state(make_grid(1.0, n));
    for (int i = 0; i < n; ++i) s.at(0, i) = prof.eval_linear(s.grid.center(i));
    CHECK(!detect_spike(s, &prof).found);

    s.at(0, 300) += 5.0;
    const SpikeReport rep = detect_spike(s, &prof);
    REQUIRE(rep.found);
    CHECK(rep.location == doctest::Approx(s.grid.center(300)).epsilon(1e-12));
}

TEST_CASE("asymptotic profile reproduces the ramp-plus-cap construction") {
    const int n = 2000;
    const double eps = 1e-5, t = 1.0;
    const FieldState s = sine_state(n, 0.1);
    const AsymptoticProfile prof = asymptotic_profile(s, eps, t);

    const double down = 0.5 + std::asin(0.1) / (2.0 * M_PI);
    const double up = 1.0 - std::asin(0.1) / (2.0 * M_PI);
    CHECK(std::abs(prof.crossing_down - down) <= 1e-4);
    CHECK(std::abs(prof.crossing_up - up) <= 1e-4);

    const double s0 = 2.0 * M_PI * std::sqrt(1.0 - 0.01);
    CHECK(prof.slope_b == doctest::Approx(slope_ode_solve(s0, eps, t)).epsilon(5e-3));
    CHECK(prof.slope_b > 0.0);
    CHECK(prof.slope_b < s0);

    REQUIRE(prof.spikes.size() == 1);
    const AsymptoticSpike& spike = prof.spikes.front();
    const double W = prof.crossing_down + 1.0 - prof.crossing_up;
    CHECK(spike.alpha == doctest::Approx(prof.slope_b * W).epsilon(1e-12));
    CHECK(spike.mass > 0.0);
    CHECK(spike.cut == doctest::Approx(down).epsilon(1e-3));
    CHECK(spike.beta < down);
    CHECK(spike.beta > down - 0.05);

    // The cap was placed so its excess over the ramp holds exactly the
    // defect mass; integrate the construction back numerically.
    const double cut = prof.crossing_down + 1.0;
    double beta = spike.beta;
    if (beta <= prof.crossing_down) beta += 1.0;
    const int m = 20000;
    const double h = (cut - beta) / m;
    double integral = 0.0;
    for (int i = 0; i < m; ++i) {
        const double x = beta + (i + 0.5) * h;
        integral += prof.eval(x) - prof.eval_linear(x);
    }
    integral *= h;
    CHECK(integral == doctest::Approx(spike.mass).epsilon(1e-3));
}

TEST_CASE("asymptotic profile at t = 0 keeps the initial slope") {
    const FieldState s = sine_state(1000, 0.1);
    const AsymptoticProfile prof = asymptotic_profile(s, 1e-4, 0.0);
    const double s0 = 2.0 * M_PI * std::sqrt(1.0 - 0.01);
    CHECK(prof.slope_b == doctest::Approx(s0).epsilon(1e-3));
}

TEST_CASE("asymptotic profile validates its inputs") {
    const FieldState s = sine_state(200, 0.1);
    CHECK_THROWS_AS(asymptotic_profile(s, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_profile(s, 1e-4, -1.0), std::invalid_argument);
    const FieldState flat = sample(make_grid(1.0, 64), [](double) { return 1.0; });
    CHECK_THROWS_AS(asymptotic_profile(flat, 1e-4, 1.0), std::invalid_argument);
    const FieldState two = sample(make_grid(1.0, 256), [](double x) {
        return std::sin(4.0 * M_PI * x) + 0.1;
    });
    CHECK_THROWS_AS(asymptotic_profile(two, 1e-4, 1.0), std::invalid_argument);
}

TEST_CASE("running extrema track each frame") {
    Trajectory traj;
    traj.frames.push_back(sine_state(100));
    traj.frames.push_back(sine_state(100, 0.5));
    const auto ex = running_extrema(traj);
    REQUIRE(ex.size() == 2);
    CHECK(ex[0].first == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(ex[0].second == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(ex[1].first == doctest::Approx(1.5).epsilon(1e-3));
}
