// Conservative upwind discretization with quenched fluxes, an exact
// per-mode spectral step for the linear term, and an SSP-RK3 driver.
#pragma once

#include "deltashock/core.hpp"
#include "deltashock/flux.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace deltashock {

struct SchemeConfig {
    enum class DtPolicy { cfl_adaptive, fixed };

    double cfl = 0.4;
    DtPolicy dt_policy = DtPolicy::cfl_adaptive;
    double fixed_dt = 0.0;
    bool abort_on_nonfinite = true;

    static constexpr double speed_floor = 1e-12;
};

// Flux through the face between cells i and i+1. Upwind side picked by the
// sign of u_i + u_{i+1}; an exact tie averages the two candidate fluxes.
// The quench factor sees the one-sided slope (u_{i+1} - u_i)/dx either way.
double numerical_flux(double u_i, double u_ip1, double dx,
                      const FluxSpec& flux, const IrregularizationSpec& irr);

// out_i = -(F_i - F_{i-1})/dx with circular face indexing.
void spatial_rhs(const FieldState& state, const FluxSpec& flux,
                 const IrregularizationSpec& irr, std::vector<double>& out);

// Semi-discrete right side plus the wave speed bound used for CFL.
struct RhsOperator {
    int components = 1;
    std::function<void(const FieldState&, std::vector<double>&)> eval;
    std::function<double(const FieldState&)> max_speed;
};

RhsOperator scalar_upwind_operator(FluxSpec flux, IrregularizationSpec irr);

// Exact integrating factor per Fourier mode for u_t = eta d^k u/dx^k over one
// dt: exp(-eta q^k dt) for even k, unit-modulus exp(-i eta q^3 dt) for k = 3.
// The zero mode is untouched, so the mean is preserved; component_mask picks
// which components are filtered.
class SpectralFilter {
  public:
    SpectralFilter(const Grid1D& grid, const RegularizationSpec& reg,
                   uint32_t component_mask = ~0u);
    ~SpectralFilter();
    SpectralFilter(const SpectralFilter&) = delete;
    SpectralFilter& operator=(const SpectralFilter&) = delete;

    void apply(FieldState& state, double dt) const;
    bool active() const { return reg_.active(); }
    const RegularizationSpec& reg() const { return reg_; }

  private:
    Grid1D grid_;
    RegularizationSpec reg_;
    uint32_t mask_;
    struct Impl;
    Impl* impl_ = nullptr;
};

struct StepSeries {
    std::vector<double> time;
    std::vector<double> dt;        // 0 for the initial entry
    std::vector<double> max_u;     // component 0
    std::vector<double> min_u;
    std::vector<double> max_grad;  // max |u_{i+1}-u_i|/dx, component 0
};

struct Trajectory {
    std::vector<FieldState> frames;
    std::vector<size_t> frame_steps;  // step index of each frame
    StepSeries series;
    size_t steps = 0;
    bool aborted = false;
    std::string abort_reason;

    const FieldState& last() const { return frames.back(); }
};

using Observer = std::function<void(const FieldState&, size_t step)>;

// One SSP-RK3 step of size dt followed by the spectral sub-step over the
// same dt. filter may be null.
FieldState step(const FieldState& state, const RhsOperator& rhs,
                const SpectralFilter* filter, const SchemeConfig& scheme, double dt);

double cfl_dt(const FieldState& state, const RhsOperator& rhs, const SchemeConfig& scheme);

// Advance to t_end. Frames are recorded every frame_stride steps (plus the
// first and last states); observers run on each recorded frame. A non-finite
// state stops the run and leaves the last good frame in place.
Trajectory run(const FieldState& initial, const RhsOperator& rhs,
               const SpectralFilter* filter, const SchemeConfig& scheme,
               double t_end, int frame_stride = 0,
               const std::vector<Observer>& observers = {});

}  // namespace deltashock
