#include "deltashock/systems.hpp"

#include <cmath>

namespace deltashock {

SystemSpec make_tans_system() {
    SystemSpec s;
    s.kind = SystemKind::tans;
    return s;
}

SystemSpec make_tans_viscous_system(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("make_tans_viscous_system: eta must be positive");
    SystemSpec s;
    s.kind = SystemKind::tans_viscous;
    s.eta = eta;
    return s;
}

SystemSpec make_keyfitz_system() {
    SystemSpec s;
    s.kind = SystemKind::keyfitz;
    return s;
}

SystemSpec make_transport_system(FluxSpec conv, std::function<double(double)> g,
                                 std::function<double(double)> speed) {
    if (!g || !speed)
        throw std::invalid_argument("make_transport_system: g and speed are required");
    SystemSpec s;
    s.kind = SystemKind::transport;
    s.conv = std::move(conv);
    s.g = std::move(g);
    s.speed = std::move(speed);
    return s;
}

SystemSpec make_hopf_transport_system(double eta) {
    SystemSpec s = make_transport_system(
        make_flux(FluxFamily::hopf), [](double u) { return u; },
        [](double u) { return std::abs(u); });
    if (eta > 0.0) s.eta = eta;
    return s;
}

namespace {

// Upwind flux for the scalar component, no quenching.
inline double upwind_flux(double ul, double ur, const FluxSpec& flux) {
    double sum = ul + ur;
    if (sum > 0.0) return flux(ul);
    if (sum < 0.0) return flux(ur);
    return 0.5 * (flux(ul) + flux(ur));
}

// v carried at speed g(u), upwinded on the face-averaged sign of g.
inline double transport_flux(double gl, double gr, double vl, double vr) {
    double sum = gl + gr;
    if (sum > 0.0) return gl * vl;
    if (sum < 0.0) return gr * vr;
    return 0.5 * (gl * vl + gr * vr);
}

}  // namespace

void system_rhs(const FieldState& state, const SystemSpec& spec, std::vector<double>& out) {
    if (state.components != 2)
        throw std::invalid_argument("system_rhs: expected a 2-component state");
    const auto u = state.component(0);
    const auto v = state.component(1);
    int n = state.size();
    double inv_dx = 1.0 / state.grid.dx();

    thread_local std::vector<double> fu, fv;
    fu.resize(n);
    fv.resize(n);

    auto face = [&](int i, int r) {
        switch (spec.kind) {
            case SystemKind::tans:
            case SystemKind::tans_viscous: {
                fu[i] = upwind_flux(u[i], u[r], FluxSpec{FluxFamily::square, {}});
                fv[i] = transport_flux(u[i], u[r], v[i], v[r]);
                break;
            }
            case SystemKind::keyfitz: {
                double a = std::max(2.0 * std::abs(u[i]), 2.0 * std::abs(u[r])) + 1.0;
                double ful = u[i] * u[i] - v[i], fur = u[r] * u[r] - v[r];
                double fvl = u[i] * u[i] * u[i] / 3.0 - u[i];
                double fvr = u[r] * u[r] * u[r] / 3.0 - u[r];
                fu[i] = 0.5 * (ful + fur) - 0.5 * a * (u[r] - u[i]);
                fv[i] = 0.5 * (fvl + fvr) - 0.5 * a * (v[r] - v[i]);
                break;
            }
            case SystemKind::transport: {
                fu[i] = upwind_flux(u[i], u[r], spec.conv);
                fv[i] = transport_flux(spec.g(u[i]), spec.g(u[r]), v[i], v[r]);
                break;
            }
        }
    };
    for (int i = 0; i + 1 < n; ++i) face(i, i + 1);
    face(n - 1, 0);

    out.resize(2 * static_cast<size_t>(n));
    out[0] = -(fu[0] - fu[n - 1]) * inv_dx;
    out[n] = -(fv[0] - fv[n - 1]) * inv_dx;
    for (int i = 1; i < n; ++i) {
        out[i] = -(fu[i] - fu[i - 1]) * inv_dx;
        out[n + i] = -(fv[i] - fv[i - 1]) * inv_dx;
    }
}

RhsOperator system_operator(const SystemSpec& spec) {
    RhsOperator op;
    op.components = 2;
    op.eval = [spec](const FieldState& s, std::vector<double>& out) { system_rhs(s, spec, out); };
    op.max_speed = [spec](const FieldState& s) {
        const auto u = s.component(0);
        double m = 0.0;
        switch (spec.kind) {
            case SystemKind::tans:
            case SystemKind::tans_viscous:
                for (double x : u) m = std::max(m, 2.0 * std::abs(x));
                break;
            case SystemKind::keyfitz:
                for (double x : u) m = std::max(m, 2.0 * std::abs(x) + 1.0);
                break;
            case SystemKind::transport:
                for (double x : u) m = std::max(m, std::max(spec.speed(x), std::abs(spec.g(x))));
                break;
        }
        return m;
    };
    return op;
}

std::unique_ptr<SpectralFilter> system_filter(const Grid1D& grid, const SystemSpec& spec) {
    if (!(spec.eta > 0.0)) return nullptr;
    return std::make_unique<SpectralFilter>(grid, make_regularization(spec.eta, 2), 0x1u);
}

std::vector<double> central_derivative(const FieldState& state, int comp) {
    const auto u = state.component(comp);
    int n = state.size();
    double half_inv_dx = 0.5 / state.grid.dx();
    std::vector<double> d(n);
    for (int i = 0; i < n; ++i) {
        int l = (i == 0) ? n - 1 : i - 1;
        int r = (i == n - 1) ? 0 : i + 1;
        d[i] = (u[r] - u[l]) * half_inv_dx;
    }
    return d;
}

std::vector<double> derivative_consistency(const Trajectory& traj) {
    std::vector<double> dev;
    dev.reserve(traj.frames.size());
    for (const auto& frame : traj.frames) {
        if (frame.components != 2)
            throw std::invalid_argument("derivative_consistency: expected 2-component frames");
        std::vector<double> du = central_derivative(frame, 0);
        const auto v = frame.component(1);
        double num = 0.0, den = 0.0;
        for (size_t i = 0; i < du.size(); ++i) {
            num += std::abs(v[i] - du[i]);
            den += std::abs(du[i]);
        }
        dev.push_back(den > 0.0 ? num / den : 0.0);
    }
    return dev;
}

}  // namespace deltashock
