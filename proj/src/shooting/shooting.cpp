#include "blasius/shooting/shooting.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include <fmt/core.h>

namespace blasius::shooting {

namespace {

constexpr int max_bracket_doublings = 4;

ode::SolutionProfile shoot(double n, double guess, const ShootingConfig& config) {
    if (!(guess > 0.0) || !std::isfinite(guess)) {
        throw Error(ErrorKind::domain, fmt::format("initial curvature guess must be positive, got {}", guess));
    }
    const auto params = ode::FlowParams::from_exponent(n);
    const ode::IvpState initial{0.0, 0.0, 0.0, ode::flux_from_curvature(guess, n)};
    return ode::integrate(params, initial, config.eta_inf, config.integrator,
                          ode::FluxBranch::absorbing, /*star_frame=*/false);
}

} // namespace

void ShootingConfig::validate() const {
    if (!(eta_inf > 0.0) || !std::isfinite(eta_inf)) {
        throw Error(ErrorKind::specification, fmt::format("eta_inf must be positive, got {}", eta_inf));
    }
    if (!(bracket_lo > 0.0 && bracket_lo < bracket_hi) || !std::isfinite(bracket_hi)) {
        throw Error(ErrorKind::specification,
                    fmt::format("bracket must satisfy 0 < lo < hi, got [{}, {}]", bracket_lo, bracket_hi));
    }
    if (!(root_tol > 0.0)) {
        throw Error(ErrorKind::specification, fmt::format("root_tol must be positive, got {}", root_tol));
    }
    if (max_iters < 1) throw Error(ErrorKind::specification, "max_iters must be at least 1");
    integrator.validate();
}

double shoot_residual(double n, double guess, const ShootingConfig& config) {
    config.validate();
    return shoot(n, guess, config).back().fp - 1.0;
}

ShootingResult solve_shooting(double n, const ShootingConfig& config) {
    config.validate();
    auto residual = [&](double x) { return shoot(n, x, config).back().fp - 1.0; };

    double lo = config.bracket_lo;
    double hi = config.bracket_hi;
    double r_lo = residual(lo);
    double r_hi = residual(hi);
    for (int k = 0; k < max_bracket_doublings && !(r_lo <= 0.0 && r_hi >= 0.0); ++k) {
        if (r_lo > 0.0) {
            lo *= 0.5;
            r_lo = residual(lo);
        }
        if (r_hi < 0.0) {
            hi *= 2.0;
            r_hi = residual(hi);
        }
    }
    if (!(r_lo <= 0.0 && r_hi >= 0.0)) {
        throw Error(ErrorKind::bracket,
                    fmt::format("no sign change of the shooting residual on [{}, {}] for n = {}", lo, hi, n));
    }
    const double used_lo = lo;
    const double used_hi = hi;

    auto finish = [&](double x, std::size_t iters) {
        auto profile = shoot(n, x, config);
        const double r = profile.back().fp - 1.0;
        return ShootingResult{x, r, iters, used_lo, used_hi, std::move(profile)};
    };
    if (std::abs(r_lo) <= config.root_tol) return finish(lo, 0);
    if (std::abs(r_hi) <= config.root_tol) return finish(hi, 0);

    // Most recent two evaluations drive the secant step.
    double x_prev = lo, r_prev = r_lo;
    double x_last = hi, r_last = r_hi;
    double width_before = 2.0 * (hi - lo);

    for (std::size_t it = 1; it <= config.max_iters; ++it) {
        std::optional<double> cand;
        if (r_last != r_prev) {
            const double s = x_last - r_last * (x_last - x_prev) / (r_last - r_prev);
            if (s > lo && s < hi) cand = s;
        }
        // Bisect when secant leaves the bracket or stops halving it.
        const bool stalled = (hi - lo) > 0.5 * width_before;
        const double x = (!cand || stalled) ? 0.5 * (lo + hi) : *cand;
        width_before = hi - lo;

        const double r = residual(x);
        if (std::abs(r) <= config.root_tol) return finish(x, it);
        if (r < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        x_prev = x_last;
        r_prev = r_last;
        x_last = x;
        r_last = r;
        if (!(hi > lo) || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
    }
    throw Error(ErrorKind::convergence,
                fmt::format("shooting for n = {} did not reach |residual| <= {} within {} iterations "
                            "(bracket [{}, {}])",
                            n, config.root_tol, config.max_iters, lo, hi));
}

} // namespace blasius::shooting
