#include "deltashock/core.hpp"

#include <cmath>

namespace deltashock {

Grid1D make_grid(double length, int cells, bool periodic, double origin) {
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("make_grid: length must be positive and finite");
    if (cells < 4)
        throw std::invalid_argument("make_grid: need at least 4 cells");
    if (!std::isfinite(origin))
        throw std::invalid_argument("make_grid: origin must be finite");
    return Grid1D{origin, length, cells, periodic};
}

FieldState make_state(const Grid1D& grid, int components, double time) {
    if (grid.cells < 4) throw std::invalid_argument("make_state: grid not initialized");
    if (components < 1 || components > 2)
        throw std::invalid_argument("make_state: components must be 1 or 2");
    FieldState s;
    s.grid = grid;
    s.components = components;
    s.time = time;
    s.values.assign(static_cast<size_t>(components) * grid.cells, 0.0);
    return s;
}

FieldState sample(const Grid1D& grid, const std::function<double(double)>& profile, double time) {
    FieldState s = make_state(grid, 1, time);
    for (int i = 0; i < grid.cells; ++i) {
        double v = profile(grid.center(i));
        if (!std::isfinite(v)) throw std::invalid_argument("sample: profile returned non-finite value");
        s.at(0, i) = v;
    }
    return s;
}

FieldState sample2(const Grid1D& grid,
                   const std::function<double(double)>& u_profile,
                   const std::function<double(double)>& v_profile,
                   double time) {
    FieldState s = make_state(grid, 2, time);
    for (int i = 0; i < grid.cells; ++i) {
        double x = grid.center(i);
        double u = u_profile(x);
        double v = v_profile(x);
        if (!std::isfinite(u) || !std::isfinite(v))
            throw std::invalid_argument("sample2: profile returned non-finite value");
        s.at(0, i) = u;
        s.at(1, i) = v;
    }
    return s;
}

double compensated_sum(std::span<const double> xs) {
    // Neumaier's variant: unlike plain Kahan it also recovers the low bits
    // when a term exceeds the running sum, e.g. {1e16, 1, -1e16} -> 1.
    double sum = 0.0, c = 0.0;
    for (double x : xs) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            c += (sum - t) + x;
        else
            c += (x - t) + sum;
        sum = t;
    }
    return sum + c;
}

std::vector<double> total_mass(const FieldState& state) {
    std::vector<double> m(state.components);
    for (int c = 0; c < state.components; ++c)
        m[c] = state.grid.dx() * compensated_sum(state.component(c));
    return m;
}

bool all_finite(const FieldState& state) {
    for (double v : state.values)
        if (!std::isfinite(v)) return false;
    return true;
}

}  // namespace deltashock
