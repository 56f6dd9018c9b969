#include "blasius/cli/cli.hpp"

#include "blasius/report/report.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

namespace blasius::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const CLI::Validator finite_number = CLI::Validator(
    [](std::string& s) -> std::string {
        try {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size() || !std::isfinite(v)) return "value must be a finite decimal: " + s;
        } catch (const std::exception&) {
            return "value must be a finite decimal: " + s;
        }
        return {};
    },
    "FINITE");

struct Options {
    std::vector<double> n;
    std::optional<double> n_from, n_to, n_step;
    std::vector<double> eta_inf;
    double c0 = 1.0;
    double rtol = 1e-12;
    double atol = 1e-12;
    std::string method = "nitm";
    double tol = 1e-6;
    std::string output;
    std::string columns = "eta,f,fp,fpp,eta_star,f_star,fp_star,fpp_star";
    std::string format = "text";
};

void add_integrator_flags(CLI::App* sub, Options& o) {
    sub->add_option("--c0", o.c0, "Starred initial curvature")->check(finite_number)->check(CLI::PositiveNumber);
    sub->add_option("--rtol", o.rtol, "Integrator relative tolerance")->check(finite_number)->check(CLI::PositiveNumber);
    sub->add_option("--atol", o.atol, "Integrator absolute tolerance")->check(finite_number)->check(CLI::PositiveNumber);
    sub->add_option("--output", o.output, "Write data here instead of standard output");
}

void add_grid_flags(CLI::App* sub, Options& o) {
    sub->add_option("--n-from", o.n_from, "First exponent of the grid")->check(finite_number);
    sub->add_option("--n-to", o.n_to, "Last exponent of the grid")->check(finite_number);
    sub->add_option("--n-step", o.n_step, "Grid spacing")->check(finite_number);
}

nitm::NitmConfig nitm_config(const Options& o, double eta_star_inf) {
    nitm::NitmConfig c;
    c.eta_star_inf = eta_star_inf;
    c.c0 = o.c0;
    c.integrator.rel_tol = o.rtol;
    c.integrator.abs_tol = o.atol;
    return c;
}

shooting::ShootingConfig shooting_config(const Options& o, double eta_inf) {
    shooting::ShootingConfig c;
    c.eta_inf = eta_inf;
    c.integrator.rel_tol = o.rtol;
    c.integrator.abs_tol = o.atol;
    return c;
}

double single_eta(const Options& o) {
    if (o.eta_inf.size() > 1) throw UsageError("--eta-inf takes a single value here");
    return o.eta_inf.empty() ? 10.0 : o.eta_inf.front();
}

std::vector<double> exponents(const Options& o, std::vector<double> fallback) {
    const bool grid = o.n_from || o.n_to || o.n_step;
    if (grid && !o.n.empty()) throw UsageError("use either --n or --n-from/--n-to/--n-step");
    if (grid) {
        if (!(o.n_from && o.n_to && o.n_step)) throw UsageError("--n-from, --n-to and --n-step go together");
        try {
            return report::exponent_grid(*o.n_from, *o.n_to, *o.n_step);
        } catch (const Error& e) {
            throw UsageError(e.what());
        }
    }
    if (!o.n.empty()) return o.n;
    if (fallback.empty()) throw UsageError("--n is required");
    return fallback;
}

report::SweepSpec make_spec(const Options& o, std::vector<double> ns, report::Method method) {
    report::SweepSpec spec;
    spec.n_values = std::move(ns);
    spec.method = method;
    const double eta = single_eta(o);
    spec.nitm_config = nitm_config(o, eta);
    spec.shooting_config = shooting_config(o, eta);
    try {
        spec.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return spec;
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

int cmd_solve(const Options& o, std::string& data) {
    if (o.n.size() != 1) throw UsageError("solve takes exactly one --n");
    const auto cfg = nitm_config(o, single_eta(o));
    const auto result = nitm::solve(o.n.front(), cfg);
    data = dump(report::result_to_json(result));
    return exit_ok;
}

int cmd_table(const Options& o, std::string& data, std::ostream& err) {
    const auto spec = make_spec(o, exponents(o, report::exponent_grid(0.1, 2.0, 0.1)),
                                report::method_from_string(o.method));
    const auto rows = report::sweep_table(spec);
    if (o.format == "json") {
        data = dump(report::emit_json(rows, spec));
    } else {
        data = report::render_table(rows);
    }
    bool failed = false;
    for (const auto& r : rows) {
        if (r.error) {
            err << fmt::format("n = {}: {}\n", r.n, *r.error);
            failed = true;
        }
    }
    return failed ? exit_numerical : exit_ok;
}

int cmd_verify(const Options& o, std::string& data, std::ostream& err) {
    if (!(o.tol >= 0.0)) throw UsageError("--tol must be non-negative");
    const auto spec = make_spec(o, exponents(o, {}), report::Method::both);
    const auto rows = report::sweep_table(spec);
    bool pass = true;
    for (const auto& r : rows) {
        if (r.error) {
            err << fmt::format("n = {}: {}\n", r.n, *r.error);
            pass = false;
        } else if (!r.discrepancy || *r.discrepancy > o.tol) {
            err << fmt::format("n = {}: discrepancy {} exceeds {}\n", r.n,
                               r.discrepancy ? fmt::format("{:.3e}", *r.discrepancy) : "-", o.tol);
            pass = false;
        }
    }
    auto doc = report::emit_json(rows, spec);
    doc["tol"] = o.tol;
    doc["pass"] = pass;
    data = dump(doc);
    return pass ? exit_ok : exit_numerical;
}

int cmd_sensitivity(const Options& o, std::string& data, std::ostream& err) {
    if (o.n.size() > 1) throw UsageError("sensitivity takes one --n");
    const double n = o.n.empty() ? 1.0 : o.n.front();
    const std::vector<double> etas =
        o.eta_inf.empty() ? std::vector<double>{6, 8, 10, 15, 20} : o.eta_inf;
    for (double e : etas) {
        if (!(e > 0.0)) throw UsageError("--eta-inf values must be positive");
    }
    const auto points = report::boundary_sensitivity(n, etas, nitm_config(o, 10.0));
    data = dump(report::sensitivity_to_json(n, points));
    bool failed = false;
    for (const auto& p : points) {
        if (p.error) {
            err << fmt::format("eta_inf = {}: {}\n", p.eta_inf, *p.error);
            failed = true;
        }
    }
    return failed ? exit_numerical : exit_ok;
}

int cmd_profile(const Options& o, std::string& data) {
    if (o.n.size() != 1) throw UsageError("profile takes exactly one --n");
    const auto columns = report::split_columns(o.columns);
    for (const auto& c : columns) {
        if (std::find(std::begin(report::profile_columns), std::end(report::profile_columns), c) ==
            std::end(report::profile_columns)) {
            throw UsageError(fmt::format("unknown column '{}'", c));
        }
    }
    const auto result = nitm::solve(o.n.front(), nitm_config(o, single_eta(o)));
    data = report::export_profile(result, columns);
    return exit_ok;
}

} // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Power-law Blasius boundary layer: non-iterative transformation method with a shooting oracle",
                 "blasius"};
    app.require_subcommand(1, 1);
    Options o;

    auto* solve = app.add_subcommand("solve", "Solve one exponent, print a JSON summary");
    solve->add_option("--n", o.n, "Power-law exponent")->check(finite_number)->check(CLI::PositiveNumber)->expected(1);
    solve->add_option("--eta-inf", o.eta_inf, "Starred truncated boundary")->check(finite_number)->expected(1);
    add_integrator_flags(solve, o);

    auto* table = app.add_subcommand("table", "Sweep a grid of exponents");
    table->add_option("--n", o.n, "Explicit exponents")->check(finite_number)->check(CLI::PositiveNumber)->delimiter(',');
    add_grid_flags(table, o);
    table->add_option("--eta-inf", o.eta_inf, "Starred truncated boundary")->check(finite_number)->expected(1);
    table->add_option("--method", o.method, "nitm, shooting or both")
        ->check(CLI::IsMember({"nitm", "shooting", "both"}));
    table->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    add_integrator_flags(table, o);

    auto* verify = app.add_subcommand("verify", "Cross-check the transformation method against shooting");
    verify->add_option("--n", o.n, "Exponents to check")->check(finite_number)->check(CLI::PositiveNumber)->delimiter(',');
    add_grid_flags(verify, o);
    verify->add_option("--eta-inf", o.eta_inf, "Starred truncated boundary")->check(finite_number)->expected(1);
    verify->add_option("--tol", o.tol, "Largest accepted discrepancy")->check(finite_number);
    add_integrator_flags(verify, o);

    auto* sens = app.add_subcommand("sensitivity", "f''(0) against the truncated boundary");
    sens->add_option("--n", o.n, "Power-law exponent")->check(finite_number)->check(CLI::PositiveNumber)->expected(1);
    sens->add_option("--eta-inf", o.eta_inf, "Boundary values (comma separated)")
        ->check(finite_number)
        ->delimiter(',');
    add_integrator_flags(sens, o);

    auto* profile = app.add_subcommand("profile", "Export solution profiles as CSV");
    profile->add_option("--n", o.n, "Power-law exponent")->check(finite_number)->check(CLI::PositiveNumber)->expected(1);
    profile->add_option("--eta-inf", o.eta_inf, "Starred truncated boundary")->check(finite_number)->expected(1);
    profile->add_option("--columns", o.columns, "Comma-separated column list");
    add_integrator_flags(profile, o);

    std::vector<std::string> argv_store{"blasius"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return exit_usage;
    }

    std::string data;
    int status = exit_ok;
    try {
        if (*solve) status = cmd_solve(o, data);
        else if (*table) status = cmd_table(o, data, err);
        else if (*verify) status = cmd_verify(o, data, err);
        else if (*sens) status = cmd_sensitivity(o, data, err);
        else status = cmd_profile(o, data);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return e.kind() == ErrorKind::specification || e.kind() == ErrorKind::selection ? exit_usage
                                                                                       : exit_numerical;
    }

    if (o.output.empty()) {
        out << data;
    } else {
        std::ofstream file(o.output, std::ios::binary);
        file << data;
        if (!file) {
            err << "error (io): cannot write " << o.output << "\n";
            return exit_numerical;
        }
    }
    return status;
}

} // namespace blasius::cli
