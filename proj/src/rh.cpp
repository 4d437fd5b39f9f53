#include "deltashock/rh.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace deltashock {

namespace {

void check_data(const RiemannData& data, size_t need) {
    if (data.left.size() != need || data.right.size() != need)
        throw std::invalid_argument("riemann data has wrong component count");
    for (size_t c = 0; c < need; ++c)
        if (!std::isfinite(data.left[c]) || !std::isfinite(data.right[c]))
            throw std::invalid_argument("riemann data must be finite");
}

}  // namespace

VectorFlux scalar_vector_flux(FluxSpec flux) {
    return [flux](const std::vector<double>& u) { return std::vector<double>{flux(u[0])}; };
}

VectorFlux tans_vector_flux() {
    return [](const std::vector<double>& u) {
        return std::vector<double>{u[0] * u[0], u[0] * u[1]};
    };
}

VectorFlux keyfitz_vector_flux() {
    return [](const std::vector<double>& u) {
        return std::vector<double>{u[0] * u[0] - u[1], u[0] * u[0] * u[0] / 3.0 - u[0]};
    };
}

VectorFlux transport_vector_flux(FluxSpec flux, std::function<double(double)> g) {
    return [flux, g](const std::vector<double>& u) {
        return std::vector<double>{flux(u[0]), g(u[0]) * u[1]};
    };
}

ShockSpeedResult classical_shock_speed(const VectorFlux& flux, const RiemannData& data,
                                       double rel_tol) {
    size_t m = data.left.size();
    check_data(data, m);
    std::vector<double> fl = flux(data.left);
    std::vector<double> fr = flux(data.right);
    if (fl.size() != m || fr.size() != m)
        throw std::invalid_argument("flux component count does not match data");

    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ShockSpeedResult res;
    res.component_speeds.assign(m, nan);

    double scale = 0.0;
    for (size_t c = 0; c < m; ++c) {
        scale = std::max({scale, std::abs(data.left[c]), std::abs(data.right[c]),
                          std::abs(fl[c]), std::abs(fr[c])});
    }
    double jump_tol = rel_tol * std::max(scale, 1.0);

    bool have_vote = false;
    bool inconsistent = false;
    double sigma = 0.0, sigma_scale = 0.0;
    for (size_t c = 0; c < m; ++c) {
        double du = data.left[c] - data.right[c];
        double df = fl[c] - fr[c];
        if (std::abs(du) <= jump_tol) {
            // 0 == sigma * 0 holds for any sigma, but a flux jump over a zero
            // state jump cannot be balanced by any speed.
            if (std::abs(df) > jump_tol) inconsistent = true;
            continue;
        }
        double s = df / du;
        res.component_speeds[c] = s;
        if (!have_vote) {
            sigma = s;
            sigma_scale = std::abs(s);
            have_vote = true;
        } else {
            if (std::abs(s - sigma) > rel_tol * std::max({sigma_scale, std::abs(s), 1.0}))
                inconsistent = true;
        }
    }
    if (!have_vote && !inconsistent)
        throw std::invalid_argument("classical_shock_speed: left and right states coincide");
    res.overdetermined = inconsistent;
    res.speed = inconsistent ? nan : sigma;
    return res;
}

std::vector<double> delta_mass_rate(const VectorFlux& flux, const RiemannData& data, double sigma) {
    size_t m = data.left.size();
    check_data(data, m);
    if (!std::isfinite(sigma)) throw std::invalid_argument("delta_mass_rate: sigma must be finite");
    std::vector<double> fl = flux(data.left);
    std::vector<double> fr = flux(data.right);
    std::vector<double> rate(m);
    for (size_t c = 0; c < m; ++c)
        rate[c] = fl[c] - fr[c] - sigma * (data.left[c] - data.right[c]);
    return rate;
}

bool tans_degeneracy(const RiemannData& data, double rel_tol) {
    check_data(data, 2);
    double a = data.left[0] * data.right[1];
    double b = data.right[0] * data.left[1];
    return std::abs(a - b) <= rel_tol * std::max(std::abs(a), std::abs(b));
}

AtomicMeasure1D stationary_riemann_solution(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("stationary_riemann_solution: t must be finite and >= 0");
    AtomicMeasure1D sol;
    sol.regular.position = 0.0;
    sol.regular.left = {1.0};
    sol.regular.right = {0.0};
    sol.atoms.push_back(PointAtom{0.0, {t / 2.0}});
    return sol;
}

}  // namespace deltashock
