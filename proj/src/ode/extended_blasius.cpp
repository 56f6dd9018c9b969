#include "blasius/ode/extended_blasius.hpp"

#include <cmath>

#include <fmt/core.h>

namespace blasius::ode {

namespace {

void require_finite(double x, const char* what) {
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::domain, fmt::format("{} is not finite", what));
    }
}

void require_exponent(double n) {
    if (!std::isfinite(n) || !(n > 0.0)) {
        throw Error(ErrorKind::domain, fmt::format("power-law exponent must be positive, got {}", n));
    }
}

} // namespace

FlowParams FlowParams::from_exponent(double n) {
    require_exponent(n);
    FlowParams p;
    p.n = n;
    if (n != 0.5) p.delta = (2.0 - n) / (1.0 - 2.0 * n);
    return p;
}

double flux_power(double w, double n) {
    const double a = std::abs(w);
    if (a < flux_underflow) return 0.0;
    const double m = std::exp(std::log(a) / n);
    return w < 0.0 ? -m : m;
}

double curvature_from_flux(double w, double n, FluxBranch branch) {
    if (branch == FluxBranch::absorbing && w <= 0.0) return 0.0;
    return flux_power(w, n);
}

double flux_from_curvature(double fpp, double n) {
    const double a = std::abs(fpp);
    if (a == 0.0) return 0.0;
    const double m = std::pow(a, n);
    return fpp < 0.0 ? -m : m;
}

FluxDerivative rhs_flux(const IvpState& state, const FlowParams& params, FluxBranch branch) {
    require_finite(state.f, "f");
    require_finite(state.fp, "f'");
    require_finite(state.w, "w");
    const double fpp = curvature_from_flux(state.w, params.n, branch);
    return {state.fp, fpp, -state.f * fpp / (params.n + 1.0)};
}

DirectDerivative rhs_direct(const DirectState& state, const FlowParams& params) {
    require_finite(state.f, "f");
    require_finite(state.fp, "f'");
    require_finite(state.fpp, "f''");
    if (state.fpp == 0.0) {
        throw Error(ErrorKind::singularity, "direct form is singular at f'' = 0");
    }
    const double n = params.n;
    const double fppp =
        -state.f * state.fpp * std::pow(std::abs(state.fpp), 1.0 - n) / (n * (n + 1.0));
    return {state.fp, state.fpp, fppp};
}

} // namespace blasius::ode
