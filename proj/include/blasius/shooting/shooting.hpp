#pragma once

// Iterative oracle: root-find on f''(0) until f'(eta_inf) = 1. Needs no
// scaling invariance, so it also covers n = 1/2 and n = 2.

#include "blasius/ode/solution_profile.hpp"

#include <cstddef>

namespace blasius::shooting {

struct ShootingConfig {
    double eta_inf = 10.0;
    double bracket_lo = 0.05;
    double bracket_hi = 1.5;
    double root_tol = 1e-12;
    std::size_t max_iters = 100;
    ode::IntegratorConfig integrator{};

    void validate() const;
};

struct ShootingResult {
    double fpp0 = 0.0;
    double residual = 0.0;
    std::size_t iterations = 0;
    /// Bracket actually used after any expansion.
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    ode::SolutionProfile profile;
};

/// f'(eta_inf) - 1 for the IVP with f''(0) = guess.
double shoot_residual(double n, double guess, const ShootingConfig& config);

/// Bisection with secant acceleration. The bracket is doubled outward up to
/// four times if the residual does not change sign. Throws ErrorKind::bracket
/// or ErrorKind::convergence.
ShootingResult solve_shooting(double n, const ShootingConfig& config);

} // namespace blasius::shooting
