#include "blasius/report/report.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iterator>

#include <fmt/core.h>

namespace blasius::report {

using nlohmann::json;

std::string_view to_string(Method m) noexcept {
    switch (m) {
        case Method::nitm: return "nitm";
        case Method::shooting: return "shooting";
        case Method::both: return "both";
    }
    return "nitm";
}

Method method_from_string(std::string_view s) {
    if (s == "nitm") return Method::nitm;
    if (s == "shooting") return Method::shooting;
    if (s == "both") return Method::both;
    throw Error(ErrorKind::specification, fmt::format("unknown method '{}'", s));
}

void SweepSpec::validate() const {
    if (n_values.empty()) throw Error(ErrorKind::specification, "sweep needs at least one exponent");
    for (double n : n_values) {
        if (!std::isfinite(n) || !(n > 0.0)) {
            throw Error(ErrorKind::specification, fmt::format("sweep exponent must be positive, got {}", n));
        }
    }
    nitm_config.validate();
    shooting_config.validate();
}

std::vector<double> exponent_grid(double from, double to, double step) {
    if (!std::isfinite(from) || !std::isfinite(to) || !std::isfinite(step) || !(step > 0.0) || to < from) {
        throw Error(ErrorKind::specification,
                    fmt::format("bad exponent grid from={} to={} step={}", from, to, step));
    }
    const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double v = from + static_cast<double>(i) * step;
        out.push_back(std::round(v * 1e12) / 1e12);
    }
    return out;
}

namespace {

SweepRow sweep_one(double n, const SweepSpec& spec) {
    SweepRow row;
    row.n = n;
    std::vector<std::string> errors;

    std::optional<double> eta_phys;
    if (spec.method != Method::shooting) {
        try {
            const auto r = nitm::solve(n, spec.nitm_config);
            row.fpp0_nitm = r.fpp0;
            row.method_tag = std::string(nitm::to_string(r.method_tag));
            eta_phys = r.profile.eta_end();
            row.eta_inf = *eta_phys;
        } catch (const std::exception& e) {
            errors.push_back(fmt::format("nitm: {}", e.what()));
        }
    }
    if (spec.method != Method::nitm) {
        auto cfg = spec.shooting_config;
        if (eta_phys) cfg.eta_inf = *eta_phys;
        try {
            const auto s = shooting::solve_shooting(n, cfg);
            row.fpp0_shooting = s.fpp0;
            if (row.method_tag.empty()) row.method_tag = "shooting";
            row.eta_inf = cfg.eta_inf;
        } catch (const std::exception& e) {
            errors.push_back(fmt::format("shooting: {}", e.what()));
        }
    }
    if (row.fpp0_nitm && row.fpp0_shooting) {
        row.discrepancy = std::abs(*row.fpp0_nitm - *row.fpp0_shooting);
    }
    if (!errors.empty()) {
        std::string msg = errors.front();
        for (std::size_t i = 1; i < errors.size(); ++i) msg += "; " + errors[i];
        row.error = msg;
    }
    return row;
}

std::string format_fixed(std::optional<double> v) {
    return v ? fmt::format("{:.6f}", *v) : std::string("-");
}

} // namespace

std::vector<SweepRow> sweep_table(const SweepSpec& spec) {
    spec.validate();
    std::vector<double> ns = spec.n_values;
    std::sort(ns.begin(), ns.end());
    std::vector<SweepRow> rows;
    rows.reserve(ns.size());
    for (double n : ns) rows.push_back(sweep_one(n, spec));
    return rows;
}

std::vector<SensitivityPoint> boundary_sensitivity(double n, std::span<const double> eta_inf_values,
                                                   const nitm::NitmConfig& base) {
    if (eta_inf_values.empty()) {
        throw Error(ErrorKind::specification, "sensitivity study needs at least one boundary value");
    }
    std::vector<SensitivityPoint> out;
    out.reserve(eta_inf_values.size());
    for (double eta : eta_inf_values) {
        SensitivityPoint p;
        p.eta_inf = eta;
        try {
            auto cfg = base;
            cfg.eta_star_inf = eta;
            p.fpp0 = nitm::solve(n, cfg).fpp0;
        } catch (const std::exception& e) {
            p.error = e.what();
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<std::string> split_columns(std::string_view list) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto end = comma == std::string_view::npos ? list.size() : comma;
        out.emplace_back(list.substr(start, end - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::string export_profile(const nitm::NitmResult& result, std::span<const std::string> columns) {
    const auto& phys = result.profile;
    const auto& star = result.star_profile;
    if (columns.empty()) throw Error(ErrorKind::selection, "no columns selected");
    if (phys.star_frame() || !star.star_frame() || phys.size() != star.size()) {
        throw Error(ErrorKind::domain, "result must carry aligned physical and starred profiles");
    }

    using Getter = std::function<double(std::size_t)>;
    std::vector<Getter> getters;
    getters.reserve(columns.size());
    for (const auto& c : columns) {
        if (c == "eta") getters.emplace_back([&](std::size_t i) { return phys.row(i).eta; });
        else if (c == "f") getters.emplace_back([&](std::size_t i) { return phys.row(i).f; });
        else if (c == "fp") getters.emplace_back([&](std::size_t i) { return phys.row(i).fp; });
        else if (c == "fpp") getters.emplace_back([&](std::size_t i) { return phys.fpp(i); });
        else if (c == "eta_star") getters.emplace_back([&](std::size_t i) { return star.row(i).eta; });
        else if (c == "f_star") getters.emplace_back([&](std::size_t i) { return star.row(i).f; });
        else if (c == "fp_star") getters.emplace_back([&](std::size_t i) { return star.row(i).fp; });
        else if (c == "fpp_star") getters.emplace_back([&](std::size_t i) { return star.fpp(i); });
        else throw Error(ErrorKind::selection, fmt::format("unknown column '{}'", c));
    }

    std::string out;
    for (std::size_t k = 0; k < columns.size(); ++k) {
        if (k) out += ',';
        out += columns[k];
    }
    out += '\n';
    auto it = std::back_inserter(out);
    for (std::size_t i = 0; i < phys.size(); ++i) {
        for (std::size_t k = 0; k < getters.size(); ++k) {
            if (k) out += ',';
            // fmt's default float formatting is shortest round-trip and locale-free.
            fmt::format_to(it, "{}", getters[k](i));
        }
        out += '\n';
    }
    return out;
}

json row_to_json(const SweepRow& row) {
    json j;
    j["n"] = row.n;
    j["method_tag"] = row.method_tag;
    j["eta_inf"] = row.eta_inf;
    if (row.fpp0_nitm) j["fpp0_nitm"] = *row.fpp0_nitm;
    if (row.fpp0_shooting) j["fpp0_shooting"] = *row.fpp0_shooting;
    if (row.discrepancy) j["discrepancy"] = *row.discrepancy;
    if (row.error) j["error"] = *row.error;
    return j;
}

SweepRow row_from_json(const json& j) {
    SweepRow row;
    row.n = j.at("n").get<double>();
    row.method_tag = j.value("method_tag", std::string{});
    row.eta_inf = j.value("eta_inf", 0.0);
    if (j.contains("fpp0_nitm")) row.fpp0_nitm = j["fpp0_nitm"].get<double>();
    if (j.contains("fpp0_shooting")) row.fpp0_shooting = j["fpp0_shooting"].get<double>();
    if (j.contains("discrepancy")) row.discrepancy = j["discrepancy"].get<double>();
    if (j.contains("error")) row.error = j["error"].get<std::string>();
    return row;
}

json config_to_json(const SweepSpec& spec) {
    const auto& nc = spec.nitm_config;
    const auto& sc = spec.shooting_config;
    auto integ = [](const ode::IntegratorConfig& c) {
        return json{{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}, {"h_init", c.h_init},
                    {"h_min", c.h_min},     {"h_max", c.h_max},     {"max_steps", c.max_steps}};
    };
    return json{
        {"method", to_string(spec.method)},
        {"nitm",
         {{"eta_star_inf", nc.eta_star_inf},
          {"c0", nc.c0},
          {"exclusion_eps", nc.exclusion_eps},
          {"exclusion_scheme",
           nc.exclusion_scheme == nitm::ExclusionScheme::neighbour_lines ? "neighbour_lines" : "quadratic_fit"},
          {"integrator", integ(nc.integrator)}}},
        {"shooting",
         {{"eta_inf", sc.eta_inf},
          {"bracket_lo", sc.bracket_lo},
          {"bracket_hi", sc.bracket_hi},
          {"root_tol", sc.root_tol},
          {"max_iters", sc.max_iters},
          {"integrator", integ(sc.integrator)}}},
    };
}

json emit_json(std::span<const SweepRow> rows, const SweepSpec& spec) {
    json arr = json::array();
    for (const auto& r : rows) arr.push_back(row_to_json(r));
    return json{{"config", config_to_json(spec)}, {"rows", std::move(arr)}};
}

std::vector<SweepRow> rows_from_json(const json& doc) {
    std::vector<SweepRow> out;
    for (const auto& j : doc.at("rows")) out.push_back(row_from_json(j));
    return out;
}

std::string render_table(std::span<const SweepRow> rows) {
    std::string out = fmt::format("{:>8} {:>10} {:>10} {:>10} {:>13}  {}\n", "n", "nitm", "shooting",
                                  "eta_inf", "discrepancy", "method");
    for (const auto& r : rows) {
        out += fmt::format("{:>8} {:>10} {:>10} {:>10.4f} {:>13}  {}", fmt::format("{:g}", r.n),
                           format_fixed(r.fpp0_nitm), format_fixed(r.fpp0_shooting), r.eta_inf,
                           r.discrepancy ? fmt::format("{:.3e}", *r.discrepancy) : "-", r.method_tag);
        if (r.error) out += "  error: " + *r.error;
        out += '\n';
    }
    return out;
}

json sensitivity_to_json(double n, std::span<const SensitivityPoint> points) {
    json arr = json::array();
    for (const auto& p : points) {
        json j{{"eta_inf", p.eta_inf}};
        if (p.fpp0) j["fpp0"] = *p.fpp0;
        if (p.error) j["error"] = *p.error;
        arr.push_back(std::move(j));
    }
    return json{{"n", n}, {"points", std::move(arr)}};
}

json result_to_json(const nitm::NitmResult& r) {
    json j{
        {"n", r.n},
        {"fpp0", r.fpp0},
        {"method_tag", nitm::to_string(r.method_tag)},
        {"lambda", r.lambda},
        {"delta", r.delta},
        {"fp_star_inf", r.fp_star_inf},
        {"eta_star_inf", r.star_profile.eta_end()},
        {"eta_end", r.profile.eta_end()},
        {"fp_end", r.profile.back().fp},
        {"steps", r.star_profile.stats().accepted},
    };
    if (r.method_tag == nitm::MethodTag::extrapolated) {
        j["profile_n"] = r.profile_n;
        j["approximate_profile"] = r.approximate_profile;
    }
    return j;
}

} // namespace blasius::report
