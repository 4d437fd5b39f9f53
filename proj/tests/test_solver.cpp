#include "deltashock/solver.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace deltashock;

namespace {

FieldState random_state(int n, unsigned seed, double amp = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-amp, amp);
    FieldState s = make_state(make_grid(1.0, n));
    for (int i = 0; i < n; ++i) s.at(0, i) = dist(rng);
    return s;
}

FieldState sine_state(int n, double offset = 0.0) {
    return sample(make_grid(1.0, n),
                  [offset](double x) { return std::sin(2.0 * M_PI * x) + offset; });
}

}  // namespace

TEST_CASE("numerical flux takes the upwind side") {
    const FluxSpec hopf = make_flux(FluxFamily::hopf);
    const IrregularizationSpec off = make_irregularization(IrregFamily::none, 0.0);
    // Positive mean advects from the left, negative from the right.
    CHECK(numerical_flux(3.0, 1.0, 0.01, hopf, off) == doctest::Approx(4.5).epsilon(1e-15));
    CHECK(numerical_flux(-1.0, -3.0, 0.01, hopf, off) == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("numerical flux quenches on the face slope") {
    const FluxSpec hopf = make_flux(FluxFamily::hopf);
    const IrregularizationSpec irr = make_irregularization(IrregFamily::rational, 1e-4);
    // s = -100, eps s^2 = 1, so F(1)/2 = 0.25.
    CHECK(numerical_flux(1.0, 0.0, 0.01, hopf, irr) == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("numerical flux averages the candidates on an exact tie") {
    const FluxSpec hopf = make_flux(FluxFamily::hopf);
    const IrregularizationSpec irr = make_irregularization(IrregFamily::rational, 1e-4);
    const double dx = 0.01;
    const double s = (2.0 - (-2.0)) / dx;
    const double expected = 2.0 * irregularization_factor(irr, s);  // both candidates F = 2
    CHECK(numerical_flux(-2.0, 2.0, dx, hopf, irr) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("numerical flux rejects non-finite input") {
    const FluxSpec hopf = make_flux(FluxFamily::hopf);
    const IrregularizationSpec off = make_irregularization(IrregFamily::none, 0.0);
    CHECK_THROWS_AS(numerical_flux(std::nan(""), 0.0, 0.01, hopf, off), NonFiniteError);
}

TEST_CASE("spatial rhs telescopes: cell sums cancel") {
    const FluxSpec hopf = make_flux(FluxFamily::hopf);
    const IrregularizationSpec irr = make_irregularization(IrregFamily::rational, 1e-3);
    const FieldState s = random_state(128, 99);
    std::vector<double> rhs;
    spatial_rhs(s, hopf, irr, rhs);
    CHECK(std::abs(compensated_sum(rhs)) <= 1e-10);
}

TEST_CASE("spatial rhs of a constant state is exactly zero") {
    const FluxSpec hopf = make_flux(FluxFamily::hopf);
    const IrregularizationSpec off = make_irregularization(IrregFamily::none, 0.0);
    const FieldState s = sample(make_grid(1.0, 64), [](double) { return 0.7; });
    std::vector<double> rhs;
    spatial_rhs(s, hopf, off, rhs);
    for (double r : rhs) CHECK(r == 0.0);
}

TEST_CASE("one SSP-RK3 step conserves mass to round-off") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::rational, 1e-4));
    const FieldState s = sine_state(256, 0.1);
    const double m0 = total_mass(s)[0];
    const SchemeConfig scheme;
    const FieldState next = step(s, op, nullptr, scheme, 1e-3);
    CHECK(std::abs(total_mass(next)[0] - m0) <= 1e-13 * (1.0 + std::abs(m0)));
    CHECK(next.time == doctest::Approx(1e-3).epsilon(1e-15));
}

TEST_CASE("step validates dt") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    const FieldState s = sine_state(32);
    const SchemeConfig scheme;
    CHECK_THROWS_AS(step(s, op, nullptr, scheme, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(step(s, op, nullptr, scheme, -1e-3), std::invalid_argument);
}

TEST_CASE("cfl_dt follows max speed with a floor") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    SchemeConfig scheme;
    scheme.cfl = 0.4;
    const FieldState s = sample(make_grid(1.0, 100), [](double) { return 2.0; });
    CHECK(cfl_dt(s, op, scheme) == doctest::Approx(0.4 * 0.01 / 2.0).epsilon(1e-14));

    const FieldState zero = make_state(make_grid(1.0, 100));
    CHECK(cfl_dt(zero, op, scheme) >= 1e6);  // floored speed, huge dt
}

TEST_CASE("heat filter damps one Fourier mode by the exact factor") {
    const int n = 128;
    const double eta = 1e-3, dt = 0.01;
    const Grid1D grid = make_grid(1.0, n);
    FieldState s = sample(grid, [](double x) { return 3.0 + std::sin(2.0 * M_PI * x); });
    const SpectralFilter filter(grid, make_regularization(eta, 2));
    filter.apply(s, dt);
    const double damp = std::exp(-eta * 4.0 * M_PI * M_PI * dt);
    for (int i = 0; i < n; ++i) {
        const double want = 3.0 + damp * std::sin(2.0 * M_PI * grid.center(i));
        CHECK(s.at(0, i) == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("hyperdiffusion filter uses the fourth-power decay") {
    const int n = 64;
    const double eta = 1e-6, dt = 0.01;
    const Grid1D grid = make_grid(1.0, n);
    FieldState s = sample(grid, [](double x) { return std::cos(2.0 * M_PI * x); });
    const SpectralFilter filter(grid, make_regularization(eta, 4));
    filter.apply(s, dt);
    const double k = 2.0 * M_PI;
    const double damp = std::exp(-eta * k * k * k * k * dt);
    for (int i = 0; i < n; ++i)
        CHECK(s.at(0, i) == doctest::Approx(damp * std::cos(k * grid.center(i))).epsilon(1e-11));
}

TEST_CASE("dispersive filter advances the exact phase of u_t = eta u_xxx") {
    const int n = 128;
    const double eta = 1e-2, dt = 0.05;
    const Grid1D grid = make_grid(1.0, n);
    FieldState s = sample(grid, [](double x) { return std::sin(2.0 * M_PI * x); });
    const SpectralFilter filter(grid, make_regularization(eta, 3));
    filter.apply(s, dt);
    const double k = 2.0 * M_PI;
    const double theta = eta * k * k * k * dt;
    for (int i = 0; i < n; ++i)
        CHECK(s.at(0, i) ==
              doctest::Approx(std::sin(k * grid.center(i) - theta)).epsilon(1e-11));
}

TEST_CASE("dispersive filter preserves the L2 norm and the mean") {
    const int n = 200;
    const Grid1D grid = make_grid(1.0, n);
    FieldState s = random_state(n, 5);
    s.grid = grid;
    double l2 = 0.0;
    for (double v : s.component(0)) l2 += v * v;
    const double m0 = total_mass(s)[0];

    const SpectralFilter filter(grid, make_regularization(1e-4, 3));
    filter.apply(s, 0.1);

    double l2_after = 0.0;
    for (double v : s.component(0)) l2_after += v * v;
    CHECK(l2_after == doctest::Approx(l2).epsilon(1e-12));
    CHECK(total_mass(s)[0] == doctest::Approx(m0).epsilon(1e-13));
}

TEST_CASE("filter preserves mass for every order") {
    for (int k : {2, 3, 4}) {
        FieldState s = random_state(96, 17 + k);
        const double m0 = total_mass(s)[0];
        const SpectralFilter filter(s.grid, make_regularization(1e-3, k));
        filter.apply(s, 0.02);
        CHECK(std::abs(total_mass(s)[0] - m0) <= 1e-13 * (1.0 + std::abs(m0)));
    }
}

TEST_CASE("inactive filter is the identity") {
    FieldState s = random_state(64, 3);
    const FieldState before = s;
    const SpectralFilter filter(s.grid, make_regularization(0.0, 2));
    CHECK(!filter.active());
    filter.apply(s, 0.01);
    CHECK(s.values == before.values);
}

TEST_CASE("filter with dt = 0 is the identity") {
    FieldState s = random_state(64, 4);
    const FieldState before = s;
    const SpectralFilter filter(s.grid, make_regularization(1e-3, 2));
    filter.apply(s, 0.0);
    CHECK(s.values == before.values);
}

TEST_CASE("filter honors the component mask") {
    const Grid1D grid = make_grid(1.0, 64);
    FieldState s = sample2(
        grid, [](double x) { return std::sin(2.0 * M_PI * x); },
        [](double x) { return std::cos(2.0 * M_PI * x); });
    const FieldState before = s;
    const SpectralFilter filter(grid, make_regularization(1e-2, 2), 0x1);
    filter.apply(s, 0.1);
    CHECK(s.component(1)[10] == before.component(1)[10]);
    for (int i = 0; i < 64; ++i) CHECK(s.at(1, i) == before.at(1, i));
    CHECK(std::abs(s.at(0, 16) - before.at(0, 16)) > 1e-3);  // u actually smoothed
}

TEST_CASE("run reaches t_end and records first and last frames") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    const FieldState s = sine_state(128);
    const SchemeConfig scheme;
    const Trajectory traj = run(s, op, nullptr, scheme, 0.05, 10);
    CHECK(!traj.aborted);
    CHECK(traj.frames.front().time == 0.0);
    CHECK(traj.last().time == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(traj.series.time.size() == traj.steps + 1);
    CHECK(traj.frame_steps.front() == 0);
    CHECK(traj.frame_steps.back() == traj.steps);
    for (size_t k = 1; k < traj.frame_steps.size(); ++k)
        CHECK(traj.frame_steps[k] > traj.frame_steps[k - 1]);
}

TEST_CASE("fixed dt policy clamps the last step onto t_end") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    const FieldState s = sine_state(32);
    SchemeConfig scheme;
    scheme.dt_policy = SchemeConfig::DtPolicy::fixed;
    scheme.fixed_dt = 1e-3;
    const Trajectory traj = run(s, op, nullptr, scheme, 0.0105, 0);
    CHECK(traj.steps == 11);
    CHECK(traj.last().time == doctest::Approx(0.0105).epsilon(1e-12));
}

TEST_CASE("run conserves mass across many steps") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::rational, 1e-4));
    const FieldState s = sine_state(200, 0.1);
    const double m0 = total_mass(s)[0];
    const SpectralFilter filter(s.grid, make_regularization(1e-6, 2));
    const SchemeConfig scheme;
    const Trajectory traj = run(s, op, &filter, scheme, 0.2, 0);
    CHECK(!traj.aborted);
    CHECK(std::abs(total_mass(traj.last())[0] - m0) <= 1e-12 * (1.0 + std::abs(m0)));
}

TEST_CASE("a blow-up aborts the run and keeps the last finite state") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    const FieldState s = sample(make_grid(1.0, 64),
                                [](double x) { return 1e154 * std::sin(2.0 * M_PI * x); });
    const SchemeConfig scheme;
    const Trajectory traj = run(s, op, nullptr, scheme, 1.0, 0);
    CHECK(traj.aborted);
    CHECK(!traj.abort_reason.empty());
    CHECK(all_finite(traj.last()));
}

TEST_CASE("observers fire on each recorded frame") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    const FieldState s = sine_state(64);
    const SchemeConfig scheme;
    std::vector<size_t> seen;
    const Observer obs = [&seen](const FieldState&, size_t step_idx) { seen.push_back(step_idx); };
    const Trajectory traj = run(s, op, nullptr, scheme, 0.02, 5, {obs});
    CHECK(seen.size() == traj.frames.size());
    for (size_t k = 0; k < seen.size(); ++k) CHECK(seen[k] == traj.frame_steps[k]);
}

TEST_CASE("run validates its inputs") {
    const RhsOperator op = scalar_upwind_operator(make_flux(FluxFamily::hopf),
                                                  make_irregularization(IrregFamily::none, 0.0));
    const FieldState s = sine_state(32);
    SchemeConfig scheme;
    CHECK_THROWS_AS(run(s, op, nullptr, scheme, -1.0, 0), std::invalid_argument);

    scheme.cfl = 0.0;
    CHECK_THROWS_AS(run(s, op, nullptr, scheme, 1.0, 0), std::invalid_argument);

    SchemeConfig fixed;
    fixed.dt_policy = SchemeConfig::DtPolicy::fixed;
    CHECK_THROWS_AS(run(s, op, nullptr, fixed, 1.0, 0), std::invalid_argument);

    const FieldState two = make_state(make_grid(1.0, 32), 2);
    CHECK_THROWS_AS(run(two, op, nullptr, SchemeConfig{}, 1.0, 0), std::invalid_argument);
}
