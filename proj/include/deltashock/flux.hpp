// Convective fluxes, gradient quenching factors, and linear regularization terms.
#pragma once

#include <functional>
#include <stdexcept>

namespace deltashock {

enum class IrregFamily { none, rational, exponential };

// Gradient-dependent flux attenuation: 1 at zero slope, -> 0 as |slope| -> inf.
struct IrregularizationSpec {
    IrregFamily family = IrregFamily::none;
    double epsilon = 0.0;
};

IrregularizationSpec make_irregularization(IrregFamily family, double epsilon);

// f(eps, s). Even in s; identically 1 when eps == 0 or family == none.
double irregularization_factor(const IrregularizationSpec& irr, double s);

enum class FluxFamily { hopf, square, custom };

struct FluxSpec {
    FluxFamily family = FluxFamily::hopf;
    std::function<double(double)> fn;  // used when family == custom

    double operator()(double u) const {
        switch (family) {
            case FluxFamily::hopf: return 0.5 * u * u;
            case FluxFamily::square: return u * u;
            default: return fn(u);
        }
    }
};

FluxSpec make_flux(FluxFamily family, std::function<double(double)> fn = {});

// F(u) * f(eps, s) with s the local gradient.
double modified_flux(const FluxSpec& flux, const IrregularizationSpec& irr, double u, double s);

// Linear term eta * d^order u / dx^order, applied spectrally by the solver.
struct RegularizationSpec {
    double eta = 0.0;
    int order = 0;

    bool active() const { return eta > 0.0 && order > 0; }
};

RegularizationSpec make_regularization(double eta, int order);

}  // namespace deltashock
