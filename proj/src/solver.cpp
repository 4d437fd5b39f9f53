#include "deltashock/solver.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace deltashock {

namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

double max_abs(std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, std::abs(x));
    return m;
}

double max_face_gradient(const FieldState& s) {
    const auto u = s.component(0);
    int n = s.size();
    double inv_dx = 1.0 / s.grid.dx();
    double g = 0.0;
    for (int i = 0; i + 1 < n; ++i) g = std::max(g, std::abs(u[i + 1] - u[i]) * inv_dx);
    g = std::max(g, std::abs(u[0] - u[n - 1]) * inv_dx);
    return g;
}

}  // namespace

double numerical_flux(double u_i, double u_ip1, double dx,
                      const FluxSpec& flux, const IrregularizationSpec& irr) {
    if (!std::isfinite(u_i) || !std::isfinite(u_ip1))
        throw NonFiniteError("numerical_flux: non-finite input state");
    double f = irregularization_factor(irr, (u_ip1 - u_i) / dx);
    double sum = u_i + u_ip1;
    if (sum > 0.0) return flux(u_i) * f;
    if (sum < 0.0) return flux(u_ip1) * f;
    return 0.5 * (flux(u_i) + flux(u_ip1)) * f;
}

void spatial_rhs(const FieldState& state, const FluxSpec& flux,
                 const IrregularizationSpec& irr, std::vector<double>& out) {
    if (state.components != 1)
        throw std::invalid_argument("spatial_rhs: scalar operator needs a 1-component state");
    const auto u = state.component(0);
    int n = state.size();
    double dx = state.grid.dx();
    double inv_dx = 1.0 / dx;

    thread_local std::vector<double> faces;
    faces.resize(n);
    for (int i = 0; i + 1 < n; ++i) faces[i] = numerical_flux(u[i], u[i + 1], dx, flux, irr);
    faces[n - 1] = numerical_flux(u[n - 1], u[0], dx, flux, irr);

    out.resize(n);
    out[0] = -(faces[0] - faces[n - 1]) * inv_dx;
    for (int i = 1; i < n; ++i) out[i] = -(faces[i] - faces[i - 1]) * inv_dx;
}

RhsOperator scalar_upwind_operator(FluxSpec flux, IrregularizationSpec irr) {
    RhsOperator op;
    op.components = 1;
    op.eval = [flux, irr](const FieldState& s, std::vector<double>& out) {
        spatial_rhs(s, flux, irr, out);
    };
    op.max_speed = [](const FieldState& s) { return max_abs(s.component(0)); };
    return op;
}

struct SpectralFilter::Impl {
    int n = 0;
    double* real = nullptr;
    fftw_complex* spec = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    std::vector<double> kappa;  // 2 pi q / L, q = 0..n/2
};

SpectralFilter::SpectralFilter(const Grid1D& grid, const RegularizationSpec& reg,
                               uint32_t component_mask)
    : grid_(grid), reg_(reg), mask_(component_mask) {
    if (!reg_.active()) return;
    if (reg_.order != 2 && reg_.order != 3 && reg_.order != 4)
        throw std::invalid_argument("SpectralFilter: order must be 2, 3 or 4");
    impl_ = new Impl;
    impl_->n = grid.cells;
    impl_->real = fftw_alloc_real(grid.cells);
    impl_->spec = fftw_alloc_complex(grid.cells / 2 + 1);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->fwd = fftw_plan_dft_r2c_1d(grid.cells, impl_->real, impl_->spec, FFTW_ESTIMATE);
        impl_->inv = fftw_plan_dft_c2r_1d(grid.cells, impl_->spec, impl_->real, FFTW_ESTIMATE);
    }
    double two_pi = 2.0 * std::acos(-1.0);
    impl_->kappa.resize(grid.cells / 2 + 1);
    for (size_t q = 0; q < impl_->kappa.size(); ++q)
        impl_->kappa[q] = two_pi * static_cast<double>(q) / grid.length;
}

SpectralFilter::~SpectralFilter() {
    if (!impl_) return;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(impl_->fwd);
        fftw_destroy_plan(impl_->inv);
    }
    fftw_free(impl_->real);
    fftw_free(impl_->spec);
    delete impl_;
}

void SpectralFilter::apply(FieldState& state, double dt) const {
    if (!reg_.active()) return;
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("SpectralFilter::apply: dt must be finite and >= 0");
    if (dt == 0.0) return;
    if (state.grid.cells != grid_.cells)
        throw std::invalid_argument("SpectralFilter::apply: state does not match filter grid");

    int n = impl_->n;
    size_t nk = impl_->kappa.size();
    bool nyquist = (n % 2 == 0);
    for (int c = 0; c < state.components; ++c) {
        if (!(mask_ & (1u << c))) continue;
        auto comp = state.component(c);
        std::copy(comp.begin(), comp.end(), impl_->real);
        double sum_before = compensated_sum(comp);

        fftw_execute(impl_->fwd);
        if (reg_.order == 3) {
            for (size_t q = 1; q < nk; ++q) {
                if (nyquist && q == nk - 1) break;  // undirected mode, leave it alone
                double k = impl_->kappa[q];
                double theta = reg_.eta * k * k * k * dt;
                double cth = std::cos(theta), sth = std::sin(theta);
                double re = impl_->spec[q][0], im = impl_->spec[q][1];
                impl_->spec[q][0] = re * cth + im * sth;
                impl_->spec[q][1] = im * cth - re * sth;
            }
        } else {
            for (size_t q = 1; q < nk; ++q) {
                double k = impl_->kappa[q];
                double kk = (reg_.order == 2) ? k * k : k * k * k * k;
                double damp = std::exp(-reg_.eta * kk * dt);
                impl_->spec[q][0] *= damp;
                impl_->spec[q][1] *= damp;
            }
        }
        fftw_execute(impl_->inv);

        double scale = 1.0 / n;
        for (int i = 0; i < n; ++i) impl_->real[i] *= scale;
        // Pin the zero mode: remove the round-off drift of the mean.
        double sum_after = compensated_sum(std::span<const double>(impl_->real, n));
        double shift = (sum_before - sum_after) / n;
        for (int i = 0; i < n; ++i) comp[i] = impl_->real[i] + shift;
    }
}

double cfl_dt(const FieldState& state, const RhsOperator& rhs, const SchemeConfig& scheme) {
    double speed = std::max(rhs.max_speed(state), SchemeConfig::speed_floor);
    return scheme.cfl * state.grid.dx() / speed;
}

namespace {

struct StepBuffers {
    std::vector<double> k1, k2, k3;
    FieldState stage;
};

// SSP-RK3 in incremental form: the final combination only ever adds
// dt-weighted right sides to the original state, which keeps the telescoping
// flux sums (and hence the mass) intact to round-off.
void step_into(FieldState& u, const RhsOperator& rhs, const SpectralFilter* filter,
               const SchemeConfig& scheme, double dt, StepBuffers& b) {
    size_t total = u.values.size();
    rhs.eval(u, b.k1);
    b.stage = u;
    for (size_t j = 0; j < total; ++j) b.stage.values[j] = u.values[j] + dt * b.k1[j];
    b.stage.time = u.time + dt;

    rhs.eval(b.stage, b.k2);
    for (size_t j = 0; j < total; ++j)
        b.stage.values[j] = u.values[j] + 0.25 * dt * (b.k1[j] + b.k2[j]);
    b.stage.time = u.time + 0.5 * dt;

    rhs.eval(b.stage, b.k3);
    for (size_t j = 0; j < total; ++j)
        u.values[j] += dt * (b.k1[j] + b.k2[j] + 4.0 * b.k3[j]) / 6.0;
    u.time += dt;

    if (filter) filter->apply(u, dt);
    if (scheme.abort_on_nonfinite && !all_finite(u))
        throw NonFiniteError("non-finite state at t = " + std::to_string(u.time));
}

void push_series(StepSeries& s, const FieldState& state, double dt) {
    s.time.push_back(state.time);
    s.dt.push_back(dt);
    s.max_u.push_back(*std::max_element(state.component(0).begin(), state.component(0).end()));
    s.min_u.push_back(*std::min_element(state.component(0).begin(), state.component(0).end()));
    s.max_grad.push_back(max_face_gradient(state));
}

}  // namespace

FieldState step(const FieldState& state, const RhsOperator& rhs,
                const SpectralFilter* filter, const SchemeConfig& scheme, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("step: dt must be finite and positive");
    FieldState u = state;
    StepBuffers b;
    step_into(u, rhs, filter, scheme, dt, b);
    return u;
}

Trajectory run(const FieldState& initial, const RhsOperator& rhs,
               const SpectralFilter* filter, const SchemeConfig& scheme,
               double t_end, int frame_stride, const std::vector<Observer>& observers) {
    if (!std::isfinite(t_end) || t_end < initial.time)
        throw std::invalid_argument("run: t_end must be finite and >= initial time");
    if (initial.components != rhs.components)
        throw std::invalid_argument("run: state/operator component mismatch");
    if (scheme.dt_policy == SchemeConfig::DtPolicy::fixed && !(scheme.fixed_dt > 0.0))
        throw std::invalid_argument("run: fixed dt policy requires fixed_dt > 0");
    if (!(scheme.cfl > 0.0))
        throw std::invalid_argument("run: cfl must be positive");

    Trajectory traj;
    FieldState u = initial;
    StepBuffers bufs;
    std::vector<double> last_good;

    auto record = [&](const FieldState& s, size_t step_idx) {
        traj.frames.push_back(s);
        traj.frame_steps.push_back(step_idx);
        for (const auto& obs : observers) obs(s, step_idx);
    };

    push_series(traj.series, u, 0.0);
    record(u, 0);

    const double t_tol = 1e-14 * std::max(1.0, std::abs(t_end));
    while (u.time < t_end - t_tol) {
        double dt = (scheme.dt_policy == SchemeConfig::DtPolicy::fixed)
                        ? scheme.fixed_dt
                        : cfl_dt(u, rhs, scheme);
        dt = std::min(dt, t_end - u.time);
        last_good = u.values;
        double t_before = u.time;
        try {
            step_into(u, rhs, filter, scheme, dt, bufs);
        } catch (const NonFiniteError& e) {
            u.values = last_good;
            u.time = t_before;
            traj.aborted = true;
            traj.abort_reason = e.what();
            break;
        }
        ++traj.steps;
        push_series(traj.series, u, dt);
        if (frame_stride > 0 && traj.steps % static_cast<size_t>(frame_stride) == 0 &&
            u.time < t_end - t_tol)
            record(u, traj.steps);
    }
    record(u, traj.steps);
    return traj;
}

}  // namespace deltashock
