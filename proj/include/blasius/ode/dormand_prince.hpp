#pragma once

// Explicit Dormand-Prince 5(4) pair with FSAL, proportional step control and
// the 4th-order continuous extension of Hairer & Wanner (dopri5 "contd5").

#include "blasius/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <fmt/core.h>

namespace blasius::ode {

template <std::size_t N>
using Vec = std::array<double, N>;

struct IntegratorConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    double h_init = 1e-3;
    double h_min = 1e-13;
    double h_max = 0.5;
    std::size_t max_steps = 1'000'000;

    /// Throws ErrorKind::specification when an invariant is broken.
    void validate() const;
};

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

/// Accepted-step nodes plus the per-step interpolation coefficients.
template <std::size_t N>
class Trajectory {
public:
    struct Segment {
        // y(t0 + s h) = y0 + s (r2 + (1-s) (r3 + s (r4 + (1-s) r5)))
        Vec<N> r2, r3, r4, r5;
    };

    Trajectory() = default;
    Trajectory(double t0, const Vec<N>& y0) : times_{t0}, states_{y0} {}

    [[nodiscard]] std::size_t size() const noexcept { return times_.size(); }
    [[nodiscard]] bool empty() const noexcept { return times_.empty(); }
    [[nodiscard]] double t(std::size_t i) const { return times_[i]; }
    [[nodiscard]] const Vec<N>& y(std::size_t i) const { return states_[i]; }
    [[nodiscard]] std::span<const double> times() const noexcept { return times_; }
    [[nodiscard]] double t_begin() const { return times_.front(); }
    [[nodiscard]] double t_end() const { return times_.back(); }

    IntegrationStats stats;

    void append(double t, const Vec<N>& y, const Segment& seg) {
        times_.push_back(t);
        states_.push_back(y);
        segments_.push_back(seg);
    }

    /// Dense evaluation. Exact (bitwise) at stored nodes.
    [[nodiscard]] Vec<N> evaluate(double t) const {
        if (empty() || !(t >= times_.front() && t <= times_.back())) {
            throw Error(ErrorKind::domain,
                        fmt::format("evaluation point {} outside trajectory range", t));
        }
        if (t == times_.back()) return states_.back();
        auto it = std::upper_bound(times_.begin(), times_.end(), t);
        const auto i = static_cast<std::size_t>(it - times_.begin()) - 1;
        const double t0 = times_[i];
        if (t == t0) return states_[i];
        const double s = (t - t0) / (times_[i + 1] - t0);
        const double s1 = 1.0 - s;
        const auto& g = segments_[i];
        Vec<N> out;
        for (std::size_t k = 0; k < N; ++k) {
            out[k] = states_[i][k] +
                     s * (g.r2[k] + s1 * (g.r3[k] + s * (g.r4[k] + s1 * g.r5[k])));
        }
        return out;
    }

    /// Linear change of variables t -> a t, y_k -> b_k y_k applied to nodes
    /// and interpolation coefficients alike. Requires a > 0.
    [[nodiscard]] Trajectory scaled(double a, const Vec<N>& b) const {
        Trajectory out = *this;
        for (auto& t : out.times_) t *= a;
        for (auto& y : out.states_)
            for (std::size_t k = 0; k < N; ++k) y[k] *= b[k];
        for (auto& g : out.segments_) {
            for (std::size_t k = 0; k < N; ++k) {
                g.r2[k] *= b[k];
                g.r3[k] *= b[k];
                g.r4[k] *= b[k];
                g.r5[k] *= b[k];
            }
        }
        return out;
    }

private:
    std::vector<double> times_;
    std::vector<Vec<N>> states_;
    std::vector<Segment> segments_;
};

namespace detail {

struct Dopri5 {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                            a75 = -2187.0 / 6784, a76 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
    static constexpr double d1 = -12715105075.0 / 11282082432.0,
                            d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0,
                            d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0,
                            d7 = 69997945.0 / 29380423.0;

    static constexpr double safety = 0.9;
    static constexpr double fac_min = 0.2;
    static constexpr double fac_max = 5.0;
};

template <std::size_t N>
bool all_finite(const Vec<N>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

} // namespace detail

/// Integrates y' = rhs(t, y) from (t0, y0) to t_end (t_end > t0). The last
/// node lands exactly on t_end.
template <std::size_t N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, double t0, const Vec<N>& y0, double t_end,
                        const IntegratorConfig& cfg) {
    using C = detail::Dopri5;
    cfg.validate();
    if (!std::isfinite(t0) || !std::isfinite(t_end) || !(t_end > t0)) {
        throw Error(ErrorKind::domain,
                    fmt::format("integration interval [{}, {}] is empty or non-finite", t0, t_end));
    }
    if (!detail::all_finite(y0)) {
        throw Error(ErrorKind::domain, "initial state is not finite");
    }

    Trajectory<N> traj(t0, y0);
    auto& stats = traj.stats;

    double t = t0;
    Vec<N> y = y0;
    Vec<N> k1 = rhs(t, y);
    ++stats.rhs_evals;
    if (!detail::all_finite(k1)) {
        throw Error(ErrorKind::divergence, "right-hand side not finite at the initial state");
    }

    double h = std::min(cfg.h_init, cfg.h_max);
    bool rejected_last = false;
    Vec<N> k2, k3, k4, k5, k6, k7, tmp, y_new;

    while (t < t_end) {
        if (stats.accepted + stats.rejected >= cfg.max_steps) {
            throw Error(ErrorKind::budget,
                        fmt::format("step budget of {} exhausted at t = {}", cfg.max_steps, t));
        }
        if (h < cfg.h_min) {
            throw Error(ErrorKind::stiffness,
                        fmt::format("step size {} fell below h_min = {} at t = {}", h, cfg.h_min, t));
        }
        bool last = false;
        double step = h;
        if (t + step >= t_end) {
            step = t_end - t;
            last = true;
        }
        if (t + step == t) {
            throw Error(ErrorKind::stiffness, fmt::format("step size underflow at t = {}", t));
        }

        for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + step * C::a21 * k1[i];
        k2 = rhs(t + C::c2 * step, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + step * (C::a31 * k1[i] + C::a32 * k2[i]);
        k3 = rhs(t + C::c3 * step, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + step * (C::a41 * k1[i] + C::a42 * k2[i] + C::a43 * k3[i]);
        k4 = rhs(t + C::c4 * step, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + step * (C::a51 * k1[i] + C::a52 * k2[i] + C::a53 * k3[i] +
                                    C::a54 * k4[i]);
        k5 = rhs(t + C::c5 * step, tmp);
        for (std::size_t i = 0; i < N; ++i)
            tmp[i] = y[i] + step * (C::a61 * k1[i] + C::a62 * k2[i] + C::a63 * k3[i] +
                                    C::a64 * k4[i] + C::a65 * k5[i]);
        const double t_new = last ? t_end : t + step;
        k6 = rhs(t_new, tmp);
        for (std::size_t i = 0; i < N; ++i)
            y_new[i] = y[i] + step * (C::a71 * k1[i] + C::a73 * k3[i] + C::a74 * k4[i] +
                                      C::a75 * k5[i] + C::a76 * k6[i]);
        k7 = rhs(t_new, y_new);
        stats.rhs_evals += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double e = step * (C::e1 * k1[i] + C::e3 * k3[i] + C::e4 * k4[i] +
                                     C::e5 * k5[i] + C::e6 * k6[i] + C::e7 * k7[i]);
            const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / static_cast<double>(N));

        if (!std::isfinite(err) || !detail::all_finite(y_new)) {
            throw Error(ErrorKind::divergence, fmt::format("state became non-finite near t = {}", t));
        }

        double fac = err > 0.0 ? C::safety * std::pow(err, -0.2) : C::fac_max;
        fac = std::clamp(fac, C::fac_min, C::fac_max);

        if (err <= 1.0) {
            typename Trajectory<N>::Segment seg;
            for (std::size_t i = 0; i < N; ++i) {
                const double ydiff = y_new[i] - y[i];
                const double bspl = step * k1[i] - ydiff;
                seg.r2[i] = ydiff;
                seg.r3[i] = bspl;
                seg.r4[i] = ydiff - step * k7[i] - bspl;
                seg.r5[i] = step * (C::d1 * k1[i] + C::d3 * k3[i] + C::d4 * k4[i] +
                                    C::d5 * k5[i] + C::d6 * k6[i] + C::d7 * k7[i]);
            }
            traj.append(t_new, y_new, seg);
            ++stats.accepted;
            t = t_new;
            y = y_new;
            k1 = k7;
            if (rejected_last) fac = std::min(fac, 1.0);
            rejected_last = false;
            // A clipped final step says nothing about the natural step length.
            if (!last) h = std::min(step * fac, cfg.h_max);
        } else {
            ++stats.rejected;
            rejected_last = true;
            h = step * std::min(fac, 1.0);
        }
    }
    return traj;
}

} // namespace blasius::ode
