// Uniform periodic 1D grid and multi-component cell data.
#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace deltashock {

// Raised when a state picks up NaN/Inf mid-run.
struct NonFiniteError : std::runtime_error {
    explicit NonFiniteError(const std::string& what) : std::runtime_error(what) {}
};

struct Grid1D {
    double origin = 0.0;
    double length = 1.0;
    int cells = 0;
    bool periodic = true;

    double dx() const { return length / cells; }
    double center(int i) const { return origin + (i + 0.5) * dx(); }
};

Grid1D make_grid(double length, int cells, bool periodic = true, double origin = 0.0);

// Cell-centered values, component-major layout (values[c*cells + i]).
struct FieldState {
    Grid1D grid;
    int components = 1;
    double time = 0.0;
    std::vector<double> values;

    double& at(int c, int i) { return values[static_cast<size_t>(c) * grid.cells + i]; }
    double at(int c, int i) const { return values[static_cast<size_t>(c) * grid.cells + i]; }
    std::span<double> component(int c) {
        return {values.data() + static_cast<size_t>(c) * grid.cells, static_cast<size_t>(grid.cells)};
    }
    std::span<const double> component(int c) const {
        return {values.data() + static_cast<size_t>(c) * grid.cells, static_cast<size_t>(grid.cells)};
    }
    int size() const { return grid.cells; }
};

FieldState make_state(const Grid1D& grid, int components = 1, double time = 0.0);

// Evaluate a profile at cell centers. Rejects non-finite sample values.
FieldState sample(const Grid1D& grid, const std::function<double(double)>& profile, double time = 0.0);
FieldState sample2(const Grid1D& grid,
                   const std::function<double(double)>& u_profile,
                   const std::function<double(double)>& v_profile,
                   double time = 0.0);

// dx * sum of cell values per component, compensated summation.
std::vector<double> total_mass(const FieldState& state);

double compensated_sum(std::span<const double> xs);
bool all_finite(const FieldState& state);

}  // namespace deltashock
