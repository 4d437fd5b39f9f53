#include "deltashock/flux.hpp"

#include <cmath>

namespace deltashock {

IrregularizationSpec make_irregularization(IrregFamily family, double epsilon) {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
        throw std::invalid_argument("make_irregularization: epsilon must be finite and >= 0");
    if (family == IrregFamily::none && epsilon != 0.0)
        throw std::invalid_argument("make_irregularization: family none requires epsilon == 0");
    return IrregularizationSpec{family, epsilon};
}

double irregularization_factor(const IrregularizationSpec& irr, double s) {
    if (irr.family == IrregFamily::none || irr.epsilon == 0.0) return 1.0;
    double q = irr.epsilon * s * s;
    switch (irr.family) {
        case IrregFamily::rational: return 1.0 / (1.0 + q);
        case IrregFamily::exponential: return std::exp(-q);
        default: return 1.0;
    }
}

FluxSpec make_flux(FluxFamily family, std::function<double(double)> fn) {
    if (family == FluxFamily::custom && !fn)
        throw std::invalid_argument("make_flux: custom family requires a callable");
    FluxSpec f;
    f.family = family;
    f.fn = std::move(fn);
    return f;
}

double modified_flux(const FluxSpec& flux, const IrregularizationSpec& irr, double u, double s) {
    return flux(u) * irregularization_factor(irr, s);
}

RegularizationSpec make_regularization(double eta, int order) {
    if (!(eta >= 0.0) || !std::isfinite(eta))
        throw std::invalid_argument("make_regularization: eta must be finite and >= 0");
    if (order != 0 && order != 2 && order != 3 && order != 4)
        throw std::invalid_argument("make_regularization: order must be 0, 2, 3 or 4");
    if (eta > 0.0 && order == 0)
        throw std::invalid_argument("make_regularization: eta > 0 requires order in {2,3,4}");
    return RegularizationSpec{eta, order};
}

}  // namespace deltashock
