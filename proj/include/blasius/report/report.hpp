#pragma once

#include "blasius/nitm/nitm.hpp"
#include "blasius/shooting/shooting.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace blasius::report {

enum class Method { nitm, shooting, both };

std::string_view to_string(Method m) noexcept;
Method method_from_string(std::string_view s);

struct SweepSpec {
    std::vector<double> n_values;
    Method method = Method::nitm;
    nitm::NitmConfig nitm_config{};
    shooting::ShootingConfig shooting_config{};

    void validate() const;
};

/// One exponent of a sweep. A failed solve leaves the value empty and sets
/// `error`.
struct SweepRow {
    double n = 0.0;
    std::optional<double> fpp0_nitm;
    std::optional<double> fpp0_shooting;
    std::optional<double> discrepancy;
    /// "direct", "extrapolated" or "shooting".
    std::string method_tag;
    /// Physical-frame truncation: the rescaled NITM end, or the shooting eta_inf.
    double eta_inf = 0.0;
    std::optional<std::string> error;

    bool operator==(const SweepRow&) const = default;
};

/// Evenly spaced exponents from..to inclusive, snapped to 12 decimals.
std::vector<double> exponent_grid(double from, double to, double step);

/// Rows ordered by n. With Method::both the oracle shoots on the NITM's
/// physical end point so both methods see the same truncation.
std::vector<SweepRow> sweep_table(const SweepSpec& spec);

struct SensitivityPoint {
    double eta_inf = 0.0;
    std::optional<double> fpp0;
    std::optional<std::string> error;
};

/// f''(0) as a function of the starred truncated boundary.
std::vector<SensitivityPoint> boundary_sensitivity(double n, std::span<const double> eta_inf_values,
                                                   const nitm::NitmConfig& base = {});

inline constexpr std::string_view profile_columns[] = {
    "eta", "f", "fp", "fpp", "eta_star", "f_star", "fp_star", "fpp_star"};

/// CSV of the physical and starred profiles, one line per integrator node.
/// Throws ErrorKind::selection on an unknown column name.
std::string export_profile(const nitm::NitmResult& result, std::span<const std::string> columns);

/// Splits "a,b,c".
std::vector<std::string> split_columns(std::string_view list);

nlohmann::json row_to_json(const SweepRow& row);
SweepRow row_from_json(const nlohmann::json& j);

/// {"config": {...}, "rows": [...]}
nlohmann::json emit_json(std::span<const SweepRow> rows, const SweepSpec& spec);
std::vector<SweepRow> rows_from_json(const nlohmann::json& doc);

nlohmann::json config_to_json(const SweepSpec& spec);

/// Fixed-width text table, 6 decimals.
std::string render_table(std::span<const SweepRow> rows);

nlohmann::json sensitivity_to_json(double n, std::span<const SensitivityPoint> points);

nlohmann::json result_to_json(const nitm::NitmResult& result);

} // namespace blasius::report
