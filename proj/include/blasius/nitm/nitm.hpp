#pragma once

// Non-iterative transformation method for the power-law boundary layer.
//
// The equation and the two conditions at eta = 0 are invariant under
// f* = lambda f, eta* = lambda^delta eta with delta = (2 - n) / (1 - 2n).
// One IVP in the starred variables with f*''(0) = c0 therefore fixes lambda
// through the far-field condition, and every physical quantity follows by
// rescaling.

#include "blasius/ode/solution_profile.hpp"

#include <string_view>

namespace blasius::nitm {

/// How the two exponents without a scaling group (n = 1/2, n = 2) are filled in.
enum class ExclusionScheme {
    /// Linear interpolation between n -+ h (n = 1/2) or linear extrapolation
    /// from n - h, n - 2h (n = 2). Second order in h.
    neighbour_lines,
    /// Least-squares quadratic through n -+ eps, n -+ 2eps on the admissible
    /// side(s); one-sided fits use eps, 2eps, 3eps.
    quadratic_fit,
};

struct NitmConfig {
    double eta_star_inf = 10.0;
    double c0 = 1.0;
    ode::IntegratorConfig integrator{};
    /// Offset h (neighbour_lines) or eps (quadratic_fit); in (0, 0.1].
    double exclusion_eps = 0.1;
    ExclusionScheme exclusion_scheme = ExclusionScheme::neighbour_lines;

    void validate() const;
};

enum class MethodTag { direct, extrapolated };

std::string_view to_string(MethodTag tag) noexcept;

struct NitmResult {
    double n = 0.0;
    /// For extrapolated results delta, lambda, fp_star_inf and both profiles
    /// belong to `profile_n`, the nearest exponent that was solved directly.
    double delta = 0.0;
    double lambda = 0.0;
    double fpp0 = 0.0;
    double fp_star_inf = 0.0;
    ode::SolutionProfile profile;
    ode::SolutionProfile star_profile;
    MethodTag method_tag = MethodTag::direct;
    double profile_n = 0.0;
    bool approximate_profile = false;
};

/// Exponents within this distance of 1/2 or 2 are handled by solve_excluded.
inline constexpr double exclusion_guard = 1e-6;

/// (2 - n) / (1 - 2n). Throws ErrorKind::undefined_group at n == 1/2 and
/// ErrorKind::domain for n <= 0. Returns 0 at n == 2 even though solve_nitm
/// refuses that exponent.
double scaling_exponent(double n);

[[nodiscard]] bool is_excluded(double n) noexcept;

ode::SolutionProfile solve_star_ivp(double n, const NitmConfig& config);

/// lambda = fp_star_inf^{1/(1-delta)}.
double compute_lambda(double fp_star_inf, double delta);

/// f''(0) = lambda^{2 delta - 1} c0.
double missing_initial_condition(double lambda, double delta, double c0);

/// Maps the starred profile to physical variables:
/// eta = lambda^{-delta} eta*, f = f*/lambda, f' = lambda^{delta-1} f*',
/// f'' = lambda^{2delta-1} f*'' (so w scales by lambda^{n(2delta-1)}).
ode::SolutionProfile rescale_profile(const ode::SolutionProfile& star, double lambda, double delta);

/// Throws ErrorKind::exclusion for excluded exponents.
NitmResult solve_nitm(double n, const NitmConfig& config);

/// Throws ErrorKind::exclusion unless n is (within the guard) 1/2 or 2.
NitmResult solve_excluded(double n, const NitmConfig& config);

/// Dispatches to solve_nitm or solve_excluded.
NitmResult solve(double n, const NitmConfig& config);

} // namespace blasius::nitm
