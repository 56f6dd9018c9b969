#include "blasius/nitm/nitm.hpp"

#include <array>
#include <cmath>
#include <vector>

#include <fmt/core.h>

namespace blasius::nitm {

namespace {

constexpr double excluded_half = 0.5;
constexpr double excluded_two = 2.0;

void require_positive_finite(double x, const char* what) {
    if (!std::isfinite(x) || !(x > 0.0)) {
        throw Error(ErrorKind::domain, fmt::format("{} must be positive and finite, got {}", what, x));
    }
}

// Value at x = 0 of the least-squares quadratic through (x_i, v_i).
double quadratic_at_zero(const std::vector<double>& x, const std::vector<double>& v) {
    // Normal equations for v ~ c0 + c1 x + c2 x^2.
    std::array<double, 5> s{};
    std::array<double, 3> r{};
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = 1.0;
        for (int k = 0; k < 5; ++k) {
            s[k] += p;
            if (k < 3) r[k] += p * v[i];
            p *= x[i];
        }
    }
    std::array<std::array<double, 4>, 3> m{{
        {s[0], s[1], s[2], r[0]},
        {s[1], s[2], s[3], r[1]},
        {s[2], s[3], s[4], r[2]},
    }};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(m[row][col]) > std::abs(m[piv][col])) piv = row;
        std::swap(m[col], m[piv]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int k = col; k < 4; ++k) m[row][k] -= f * m[col][k];
        }
    }
    std::array<double, 3> c{};
    for (int row = 2; row >= 0; --row) {
        double acc = m[row][3];
        for (int k = row + 1; k < 3; ++k) acc -= m[row][k] * c[k];
        c[row] = acc / m[row][row];
    }
    return c[0];
}

} // namespace

void NitmConfig::validate() const {
    if (!(eta_star_inf > 0.0) || !std::isfinite(eta_star_inf)) {
        throw Error(ErrorKind::specification,
                    fmt::format("eta_star_inf must be positive, got {}", eta_star_inf));
    }
    if (!(c0 > 0.0) || !std::isfinite(c0)) {
        throw Error(ErrorKind::specification, fmt::format("c0 must be positive, got {}", c0));
    }
    if (!(exclusion_eps > 0.0 && exclusion_eps <= 0.1)) {
        throw Error(ErrorKind::specification,
                    fmt::format("exclusion_eps must lie in (0, 0.1], got {}", exclusion_eps));
    }
    integrator.validate();
}

std::string_view to_string(MethodTag tag) noexcept {
    return tag == MethodTag::direct ? "direct" : "extrapolated";
}

double scaling_exponent(double n) {
    require_positive_finite(n, "power-law exponent");
    if (n == excluded_half) {
        throw Error(ErrorKind::undefined_group, "no scaling group exists for n = 1/2");
    }
    return (2.0 - n) / (1.0 - 2.0 * n);
}

bool is_excluded(double n) noexcept {
    return std::abs(n - excluded_half) < exclusion_guard || std::abs(n - excluded_two) < exclusion_guard;
}

ode::SolutionProfile solve_star_ivp(double n, const NitmConfig& config) {
    config.validate();
    const auto params = ode::FlowParams::from_exponent(n);
    const ode::IvpState initial{0.0, 0.0, 0.0, ode::flux_from_curvature(config.c0, n)};
    return ode::integrate(params, initial, config.eta_star_inf, config.integrator,
                          ode::FluxBranch::absorbing, /*star_frame=*/true);
}

double compute_lambda(double fp_star_inf, double delta) {
    require_positive_finite(fp_star_inf, "far-field star derivative");
    if (!std::isfinite(delta)) throw Error(ErrorKind::domain, "delta is not finite");
    if (delta == 1.0) {
        throw Error(ErrorKind::exponent_singularity, "lambda is undefined for delta = 1");
    }
    return std::pow(fp_star_inf, 1.0 / (1.0 - delta));
}

double missing_initial_condition(double lambda, double delta, double c0) {
    require_positive_finite(lambda, "lambda");
    if (!std::isfinite(delta) || !std::isfinite(c0)) {
        throw Error(ErrorKind::domain, "missing initial condition inputs must be finite");
    }
    return std::pow(lambda, 2.0 * delta - 1.0) * c0;
}

ode::SolutionProfile rescale_profile(const ode::SolutionProfile& star, double lambda, double delta) {
    require_positive_finite(lambda, "lambda");
    const double n = star.params().n;
    const double eta_scale = std::pow(lambda, -delta);
    const double f_scale = 1.0 / lambda;
    const double fp_scale = std::pow(lambda, delta - 1.0);
    const double w_scale = std::pow(lambda, n * (2.0 * delta - 1.0));
    return star.scaled(eta_scale, f_scale, fp_scale, w_scale, /*star_frame=*/false);
}

NitmResult solve_nitm(double n, const NitmConfig& config) {
    if (is_excluded(n)) {
        throw Error(ErrorKind::exclusion,
                    fmt::format("n = {} has no usable scaling group; use solve_excluded", n));
    }
    const double delta = scaling_exponent(n);
    auto star = solve_star_ivp(n, config);
    // The integrator lands exactly on eta_star_inf, so the last row is the far field.
    const double fp_star_inf = star.back().fp;
    const double lambda = compute_lambda(fp_star_inf, delta);
    const double fpp0 = missing_initial_condition(lambda, delta, config.c0);
    auto physical = rescale_profile(star, lambda, delta);
    return NitmResult{
        .n = n,
        .delta = delta,
        .lambda = lambda,
        .fpp0 = fpp0,
        .fp_star_inf = fp_star_inf,
        .profile = std::move(physical),
        .star_profile = std::move(star),
        .method_tag = MethodTag::direct,
        .profile_n = n,
        .approximate_profile = false,
    };
}

NitmResult solve_excluded(double n, const NitmConfig& config) {
    config.validate();
    double target = 0.0;
    if (std::abs(n - excluded_half) < exclusion_guard) {
        target = excluded_half;
    } else if (std::abs(n - excluded_two) < exclusion_guard) {
        target = excluded_two;
    } else {
        throw Error(ErrorKind::exclusion, fmt::format("n = {} is not an excluded exponent", n));
    }
    const double h = config.exclusion_eps;
    const bool two_sided = target == excluded_half;

    std::vector<double> offsets;
    if (config.exclusion_scheme == ExclusionScheme::neighbour_lines) {
        offsets = two_sided ? std::vector<double>{-h, h} : std::vector<double>{-h, -2.0 * h};
    } else {
        offsets = two_sided ? std::vector<double>{-2.0 * h, -h, h, 2.0 * h}
                            : std::vector<double>{-h, -2.0 * h, -3.0 * h};
    }

    std::vector<NitmResult> solved;
    std::vector<double> values;
    solved.reserve(offsets.size());
    for (double off : offsets) {
        solved.push_back(solve_nitm(target + off, config));
        values.push_back(solved.back().fpp0);
    }

    double fpp0 = 0.0;
    if (config.exclusion_scheme == ExclusionScheme::neighbour_lines) {
        fpp0 = two_sided ? 0.5 * (values[0] + values[1]) : 2.0 * values[0] - values[1];
    } else {
        fpp0 = quadratic_at_zero(offsets, values);
    }

    // Nearest solved exponent; ties go to the lower side.
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < offsets.size(); ++i) {
        const double a = std::abs(offsets[i]);
        const double b = std::abs(offsets[nearest]);
        if (a < b || (a == b && offsets[i] < offsets[nearest])) nearest = i;
    }
    NitmResult out = std::move(solved[nearest]);
    out.n = n;
    out.fpp0 = fpp0;
    out.method_tag = MethodTag::extrapolated;
    out.approximate_profile = true;
    return out;
}

NitmResult solve(double n, const NitmConfig& config) {
    return is_excluded(n) ? solve_excluded(n, config) : solve_nitm(n, config);
}

} // namespace blasius::nitm
