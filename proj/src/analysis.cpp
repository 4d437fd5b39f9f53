#include "deltashock/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace deltashock {

namespace {

double wrap_position(double x, double origin, double length) {
    double y = std::fmod(x - origin, length);
    if (y < 0.0) y += length;
    return origin + y;
}

struct FaceCrossing {
    double position = 0.0;
    CrossingDirection direction = CrossingDirection::upward;
    int left_cell = 0;   // last nonzero cell before the crossing
    int right_cell = 0;  // first nonzero cell after it
    double slope = 0.0;  // (u_r - u_l) / (x_r - x_l) across the crossing
};

std::vector<FaceCrossing> face_crossings(const FieldState& state, int comp) {
    const auto u = state.component(comp);
    int n = state.size();
    double dx = state.grid.dx();
    double origin = state.grid.origin;
    double length = state.grid.length;

    std::vector<FaceCrossing> out;
    int first_nonzero = -1;
    for (int i = 0; i < n; ++i)
        if (u[i] != 0.0) { first_nonzero = i; break; }
    if (first_nonzero < 0) return out;  // identically zero

    int prev = first_nonzero;
    for (int k = 1; k <= n; ++k) {
        int i = (first_nonzero + k) % n;
        if (u[i] == 0.0) continue;
        if (u[prev] * u[i] < 0.0) {
            double xl = origin + (prev + 0.5) * dx;
            double gap = static_cast<double>((i - prev + n - 1) % n + 1) * dx;
            double pos = xl + gap * u[prev] / (u[prev] - u[i]);
            FaceCrossing c;
            c.position = wrap_position(pos, origin, length);
            c.direction = (u[prev] > 0.0) ? CrossingDirection::downward : CrossingDirection::upward;
            c.left_cell = prev;
            c.right_cell = i;
            c.slope = (u[i] - u[prev]) / gap;
            out.push_back(c);
        }
        prev = i;
    }
    std::sort(out.begin(), out.end(),
              [](const FaceCrossing& a, const FaceCrossing& b) { return a.position < b.position; });
    return out;
}

}  // namespace

std::vector<ZeroCrossing> zero_crossings(const FieldState& state, int comp) {
    std::vector<ZeroCrossing> out;
    for (const auto& c : face_crossings(state, comp))
        out.push_back(ZeroCrossing{c.position, c.direction});
    return out;
}

double mass_between(const FieldState& state, double a, double b, int comp) {
    const double origin = state.grid.origin;
    const double length = state.grid.length;
    const double tol = 1e-12 * length;
    if (!(a <= b))
        throw std::invalid_argument("mass_between: need a <= b");
    if (a < origin - tol || b > origin + length + tol)
        throw std::invalid_argument("mass_between: interval outside the domain");
    a = std::max(a, origin);
    b = std::min(b, origin + length);

    const auto u = state.component(comp);
    double dx = state.grid.dx();
    int n = state.size();
    int ia = std::clamp(static_cast<int>((a - origin) / dx), 0, n - 1);
    int ib = std::clamp(static_cast<int>((b - origin) / dx), 0, n - 1);
    double sum = 0.0, c = 0.0;
    for (int i = ia; i <= ib; ++i) {
        double lo = origin + i * dx, hi = lo + dx;
        double overlap = std::min(b, hi) - std::max(a, lo);
        if (overlap <= 0.0) continue;
        double y = u[i] * overlap - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double mass_between_periodic(const FieldState& state, double a, double b, int comp) {
    const double origin = state.grid.origin;
    const double length = state.grid.length;
    a = wrap_position(a, origin, length);
    b = wrap_position(b, origin, length);
    if (a <= b) return mass_between(state, a, b, comp);
    return mass_between(state, a, origin + length, comp) + mass_between(state, origin, b, comp);
}

double AsymptoticProfile::eval_linear(double x) const {
    double y = wrap_position(x, origin, length);
    if (y <= crossing_down) y += length;  // branch cut at the discontinuity
    double up = crossing_up;
    if (up <= crossing_down) up += length;
    return slope_b * (y - up);
}

double AsymptoticProfile::eval(double x) const {
    double lin = eval_linear(x);
    if (spikes.empty()) return lin;
    const AsymptoticSpike& s = spikes.front();
    double y = wrap_position(x, origin, length);
    if (y <= crossing_down) y += length;
    double cut = crossing_down + length;
    double beta = s.beta;
    if (beta <= crossing_down) beta += length;
    if (y >= beta && y <= cut && s.mass > 0.0)
        return cosh_profile(s.alpha, beta, s.epsilon, y);
    return lin;
}

SpikeReport detect_spike(const FieldState& state, const AsymptoticProfile* background,
                         double threshold, int comp) {
    if (!(threshold > 0.0)) throw std::invalid_argument("detect_spike: threshold must be positive");
    const auto u = state.component(comp);
    int n = state.size();
    double dx = state.grid.dx();
    double origin = state.grid.origin;
    double length = state.grid.length;

    std::vector<double> excess(n);
    if (background) {
        for (int i = 0; i < n; ++i) excess[i] = u[i] - background->eval_linear(state.grid.center(i));
    } else {
        std::vector<double> sorted(u.begin(), u.end());
        std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
        double median = sorted[n / 2];
        for (int i = 0; i < n; ++i) excess[i] = u[i] - median;
    }

    std::vector<double> mag(n);
    for (int i = 0; i < n; ++i) mag[i] = std::abs(excess[i]);
    int peak = static_cast<int>(std::max_element(mag.begin(), mag.end()) - mag.begin());
    double big = mag[peak];

    std::vector<double> sorted_mag = mag;
    size_t q = static_cast<size_t>(0.9 * (n - 1));
    std::nth_element(sorted_mag.begin(), sorted_mag.begin() + q, sorted_mag.end());
    double scale = sorted_mag[q];

    SpikeReport rep;
    if (big <= 0.0 || big <= threshold * scale) return rep;

    // Smallest arc holding every flagged cell: drop the largest circular gap.
    double cutoff = threshold * scale;
    std::vector<int> flagged;
    for (int i = 0; i < n; ++i)
        if (mag[i] > cutoff) flagged.push_back(i);
    int lo = flagged.front(), hi = flagged.back();
    if (flagged.size() > 1) {
        int biggest_gap = n - (flagged.back() - flagged.front());
        for (size_t k = 1; k < flagged.size(); ++k) {
            int gap = flagged[k] - flagged[k - 1];
            if (gap > biggest_gap) {
                biggest_gap = gap;
                lo = flagged[k];
                hi = flagged[k - 1];
            }
        }
    }
    int span = (hi - lo + n) % n + 1;

    rep.found = true;
    rep.location = state.grid.center(peak);
    rep.window_lo = origin + lo * dx;
    rep.window_hi = wrap_position(origin + (hi + 1) * dx, origin, length);
    double pos = u[lo], neg = pos, net = 0.0;
    for (int k = 0; k < span; ++k) {
        int i = (lo + k) % n;
        pos = std::max(pos, u[i]);
        neg = std::min(neg, u[i]);
        net += excess[i];
    }
    rep.peak_pos = pos;
    rep.peak_neg = neg;
    rep.net_mass = net * dx;

    // Full width at half max of |u - background|, outermost crossings inside
    // the window (one margin cell each side so the edges interpolate too).
    double half = 0.5 * big;
    double left_x = origin + (lo + 0.5) * dx, right_x = origin + (lo + span - 0.5) * dx;
    for (int k = -1; k < span; ++k) {
        int i = (lo + k + n) % n, j = (lo + k + 1 + n) % n;
        if (mag[i] < half && mag[j] >= half) {
            double frac = (half - mag[i]) / (mag[j] - mag[i]);
            left_x = origin + (lo + k + 0.5 + frac) * dx;
            break;
        }
    }
    for (int k = span; k >= 1; --k) {
        int i = (lo + k - 1 + n) % n, j = (lo + k + n) % n;
        if (mag[i] >= half && mag[j] < half) {
            double frac = (mag[i] - half) / (mag[i] - mag[j]);
            right_x = origin + (lo + k - 1 + 0.5 + frac) * dx;
            break;
        }
    }
    rep.width = right_x - left_x;
    rep.location = wrap_position(rep.location, origin, length);

    if (background && !background->spikes.empty()) {
        rep.cosh_alpha = background->spikes.front().alpha;
        rep.cosh_beta = background->spikes.front().beta;
    }
    return rep;
}

double cosh_profile(double alpha, double beta, double epsilon, double x) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("cosh_profile: epsilon must be positive");
    if (alpha == 0.0 || !std::isfinite(alpha))
        throw std::invalid_argument("cosh_profile: alpha must be nonzero and finite");
    return alpha * std::cosh((x - beta) / (alpha * std::sqrt(epsilon)));
}

double slope_ode_solve(double s0, double epsilon, double t) {
    if (!(s0 > 0.0) || !std::isfinite(s0))
        throw std::invalid_argument("slope_ode_solve: s0 must be positive");
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("slope_ode_solve: epsilon must be >= 0");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("slope_ode_solve: t must be >= 0");
    if (t == 0.0) return s0;
    if (epsilon == 0.0) return s0 / (1.0 + s0 * t);

    auto phi = [epsilon](double s) { return 1.0 / s - epsilon * s; };
    double target = t + phi(s0);
    double hi = s0;           // phi(hi) <= target
    double lo = s0;           // shrink until phi(lo) >= target
    while (phi(lo) < target) lo *= 0.5;
    for (int iter = 0; iter < 200 && lo < hi; ++iter) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

AsymptoticProfile asymptotic_profile(const FieldState& initial, double epsilon, double t) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("asymptotic_profile: epsilon must be positive");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("asymptotic_profile: t must be >= 0");

    auto crossings = face_crossings(initial, 0);
    const FaceCrossing* up = nullptr;
    const FaceCrossing* down = nullptr;
    int n_up = 0, n_down = 0;
    for (const auto& c : crossings) {
        if (c.direction == CrossingDirection::upward) { up = &c; ++n_up; }
        else { down = &c; ++n_down; }
    }
    if (n_up != 1 || n_down != 1)
        throw std::invalid_argument(
            "asymptotic_profile: need exactly one upward and one downward crossing");

    double origin = initial.grid.origin;
    double length = initial.grid.length;
    double x_up = up->position;
    double x_dn = down->position;
    double s0 = up->slope;
    if (!(s0 > 0.0)) throw std::invalid_argument("asymptotic_profile: degenerate upward slope");

    double b = slope_ode_solve(s0, epsilon, t);

    // Window from the upward to the downward crossing, walked rightward.
    double W = x_dn - x_up;
    if (W <= 0.0) W += length;
    double m_init = mass_between_periodic(initial, x_up, x_dn);
    double m = std::max(0.0, m_init - 0.5 * b * W * W);

    double alpha = b * W;
    double root_eps = std::sqrt(epsilon);

    AsymptoticProfile prof;
    prof.slope_b = b;
    prof.intercept_a = -b * x_up;
    prof.crossing_up = x_up;
    prof.crossing_down = x_dn;
    prof.origin = origin;
    prof.length = length;

    // Unwrapped coordinates with the branch cut at x_dn.
    double ux = x_up <= x_dn ? x_up + length : x_up;
    double cut = x_dn + length;

    double beta = cut;
    if (m > 0.0) {
        auto cap_excess = [&](double bta) {
            double cap = alpha * alpha * root_eps * std::sinh((cut - bta) / (alpha * root_eps));
            double ramp = 0.5 * b * ((cut - ux) * (cut - ux) - (bta - ux) * (bta - ux));
            return cap - ramp;
        };
        double lo = cut - 10.0 * root_eps * alpha;
        int guard = 0;
        while (cap_excess(lo) < m && ++guard < 64) lo -= root_eps * alpha;
        if (guard >= 64)
            throw std::runtime_error("asymptotic_profile: cap mass bracket failed");
        double hi = cut;  // cap_excess(hi) = 0 <= m
        for (int iter = 0; iter < 200; ++iter) {
            double mid = 0.5 * (lo + hi);
            if (cap_excess(mid) >= m)
                lo = mid;
            else
                hi = mid;
        }
        beta = 0.5 * (lo + hi);
    }

    AsymptoticSpike spike;
    spike.alpha = alpha;
    spike.beta = wrap_position(beta, origin, length);
    spike.epsilon = epsilon;
    spike.mass = m;
    spike.cut = x_dn;
    prof.spikes.push_back(spike);
    return prof;
}

std::vector<std::pair<double, double>> running_extrema(const Trajectory& traj) {
    std::vector<std::pair<double, double>> out;
    out.reserve(traj.frames.size());
    for (const auto& f : traj.frames) {
        const auto u = f.component(0);
        auto [mn, mx] = std::minmax_element(u.begin(), u.end());
        out.emplace_back(*mx, *mn);
    }
    return out;
}

}  // namespace deltashock
