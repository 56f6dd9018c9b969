#pragma once

#include "blasius/ode/dormand_prince.hpp"
#include "blasius/ode/extended_blasius.hpp"

#include <cstddef>
#include <vector>

namespace blasius::ode {

/// Integrated (f, f', w) rows over [0, eta_end] together with the dense
/// interpolant of the producing integrator.
class SolutionProfile {
public:
    SolutionProfile(Trajectory<3> trajectory, FlowParams params, IntegratorConfig config,
                    bool star_frame, FluxBranch branch);

    [[nodiscard]] std::size_t size() const noexcept { return traj_.size(); }
    [[nodiscard]] IvpState row(std::size_t i) const;
    [[nodiscard]] IvpState front() const { return row(0); }
    [[nodiscard]] IvpState back() const { return row(size() - 1); }
    [[nodiscard]] std::vector<IvpState> rows() const;

    /// f'' at row i, recovered from the stored flux.
    [[nodiscard]] double fpp(std::size_t i) const;
    [[nodiscard]] double fpp_of(const IvpState& s) const;

    /// Interpolated state at eta in [0, eta_end]; exact at stored nodes.
    [[nodiscard]] IvpState evaluate(double eta) const;

    [[nodiscard]] double eta_end() const { return traj_.t_end(); }
    [[nodiscard]] const FlowParams& params() const noexcept { return params_; }
    [[nodiscard]] const IntegratorConfig& config() const noexcept { return config_; }
    [[nodiscard]] bool star_frame() const noexcept { return star_frame_; }
    [[nodiscard]] FluxBranch branch() const noexcept { return branch_; }
    [[nodiscard]] const Trajectory<3>& trajectory() const noexcept { return traj_; }
    [[nodiscard]] const IntegrationStats& stats() const noexcept { return traj_.stats; }

    /// Applies eta -> a eta, f -> bf f, f' -> bfp f', w -> bw w.
    [[nodiscard]] SolutionProfile scaled(double a, double bf, double bfp, double bw,
                                         bool star_frame) const;

private:
    Trajectory<3> traj_;
    FlowParams params_;
    IntegratorConfig config_;
    bool star_frame_;
    FluxBranch branch_;
};

/// Integrates the flux-form system from `initial` (which must sit at eta = 0)
/// to eta_end.
SolutionProfile integrate(const FlowParams& params, const IvpState& initial, double eta_end,
                          const IntegratorConfig& config,
                          FluxBranch branch = FluxBranch::absorbing, bool star_frame = false);

/// Direct-form counterpart, returned as a raw (f, f', f'') trajectory.
Trajectory<3> integrate_direct(const FlowParams& params, const DirectState& initial,
                               double eta_end, const IntegratorConfig& config);

} // namespace blasius::ode
