#pragma once

// The power-law boundary-layer equation
//
//     (|f''|^{n-1} f'')' + f f'' / (n + 1) = 0
//
// written as a first-order system in (f, f', w) with the viscous flux
// w = |f''|^{n-1} f''. The direct form keeps f'' as the third component.

#include "blasius/ode/dormand_prince.hpp"

#include <optional>

namespace blasius::ode {

struct FlowParams {
    double n = 1.0;
    /// (2 - n) / (1 - 2n); empty at n == 1/2 where the scaling group does not exist.
    std::optional<double> delta;

    /// Validates n > 0 and derives delta.
    static FlowParams from_exponent(double n);
};

struct IvpState {
    double eta = 0.0;
    double f = 0.0;
    double fp = 0.0;
    double w = 0.0;
};

/// d/deta of (f, f', w).
struct FluxDerivative {
    double f = 0.0;
    double fp = 0.0;
    double w = 0.0;
};

struct DirectState {
    double eta = 0.0;
    double f = 0.0;
    double fp = 0.0;
    double fpp = 0.0;
};

/// d/deta of (f, f', f'').
struct DirectDerivative {
    double f = 0.0;
    double fp = 0.0;
    double fpp = 0.0;
};

/// How f'' is recovered from a non-positive flux.
///
/// For n > 1 the flux of the boundary-layer IVP reaches zero at a finite eta
/// and stays there. `absorbing` pins f'' = 0 once w <= 0, which is that
/// solution; `signed_flux` is the literal sign(w)|w|^{1/n} and makes explicit
/// steppers chatter around w = 0.
enum class FluxBranch { signed_flux, absorbing };

/// Fluxes with |w| below this are treated as exactly zero.
inline constexpr double flux_underflow = 1e-300;

/// sign(w) |w|^{1/n}, evaluated as exp(log|w| / n).
double flux_power(double w, double n);

/// f'' from w under the given branch.
double curvature_from_flux(double w, double n, FluxBranch branch = FluxBranch::signed_flux);

/// |f''|^{n-1} f''.
double flux_from_curvature(double fpp, double n);

/// Conservative form: (f', sign(w)|w|^{1/n}, -f sign(w)|w|^{1/n} / (n+1)).
/// Throws ErrorKind::domain on non-finite input.
FluxDerivative rhs_flux(const IvpState& state, const FlowParams& params,
                        FluxBranch branch = FluxBranch::signed_flux);

/// Chain-rule form f''' = -f f'' |f''|^{1-n} / (n (n+1)).
/// Throws ErrorKind::singularity at f'' == 0.
DirectDerivative rhs_direct(const DirectState& state, const FlowParams& params);

} // namespace blasius::ode
