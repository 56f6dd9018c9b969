#include "blasius/ode/solution_profile.hpp"

#include <cmath>
#include <utility>

#include <fmt/core.h>

namespace blasius::ode {

void IntegratorConfig::validate() const {
    const bool ok = std::isfinite(rel_tol) && rel_tol > 0.0 && std::isfinite(abs_tol) &&
                    abs_tol > 0.0 && h_min > 0.0 && h_min <= h_init && h_init <= h_max &&
                    std::isfinite(h_max) && max_steps >= 1;
    if (!ok) {
        throw Error(ErrorKind::specification,
                    fmt::format("invalid integrator config (rel_tol={}, abs_tol={}, h_min={}, "
                                "h_init={}, h_max={}, max_steps={})",
                                rel_tol, abs_tol, h_min, h_init, h_max, max_steps));
    }
}

SolutionProfile::SolutionProfile(Trajectory<3> trajectory, FlowParams params,
                                 IntegratorConfig config, bool star_frame, FluxBranch branch)
    : traj_(std::move(trajectory)),
      params_(params),
      config_(config),
      star_frame_(star_frame),
      branch_(branch) {}

IvpState SolutionProfile::row(std::size_t i) const {
    const auto& y = traj_.y(i);
    return {traj_.t(i), y[0], y[1], y[2]};
}

std::vector<IvpState> SolutionProfile::rows() const {
    std::vector<IvpState> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) out.push_back(row(i));
    return out;
}

double SolutionProfile::fpp(std::size_t i) const { return fpp_of(row(i)); }

double SolutionProfile::fpp_of(const IvpState& s) const {
    return curvature_from_flux(s.w, params_.n, branch_);
}

IvpState SolutionProfile::evaluate(double eta) const {
    const auto y = traj_.evaluate(eta);
    return {eta, y[0], y[1], y[2]};
}

SolutionProfile SolutionProfile::scaled(double a, double bf, double bfp, double bw,
                                        bool star_frame) const {
    return {traj_.scaled(a, {bf, bfp, bw}), params_, config_, star_frame, branch_};
}

SolutionProfile integrate(const FlowParams& params, const IvpState& initial, double eta_end,
                          const IntegratorConfig& config, FluxBranch branch, bool star_frame) {
    if (initial.eta != 0.0) {
        throw Error(ErrorKind::domain, "profiles start at eta = 0");
    }
    if (!(eta_end > 0.0) || !std::isfinite(eta_end)) {
        throw Error(ErrorKind::domain, fmt::format("eta_end must be positive, got {}", eta_end));
    }
    auto rhs = [&](double, const Vec<3>& y) -> Vec<3> {
        const auto d = rhs_flux({0.0, y[0], y[1], y[2]}, params, branch);
        return {d.f, d.fp, d.w};
    };
    auto traj = ode::integrate<3>(rhs, 0.0, Vec<3>{initial.f, initial.fp, initial.w}, eta_end,
                                  config);
    return {std::move(traj), params, config, star_frame, branch};
}

Trajectory<3> integrate_direct(const FlowParams& params, const DirectState& initial,
                               double eta_end, const IntegratorConfig& config) {
    auto rhs = [&](double, const Vec<3>& y) -> Vec<3> {
        const auto d = rhs_direct({0.0, y[0], y[1], y[2]}, params);
        return {d.f, d.fp, d.fpp};
    };
    return ode::integrate<3>(rhs, initial.eta, Vec<3>{initial.f, initial.fp, initial.fpp},
                             eta_end, config);
}

} // namespace blasius::ode
