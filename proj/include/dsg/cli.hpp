#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsg/json_io.hpp"
#include "dsg/random.hpp"

namespace dsg {
namespace cli {

/// Options shared by subcommands that take a game instance, either as
/// inline flags or as a JSON file (mutually exclusive). Subcommands that
/// need no price (pareto, price) skip the --m flag and ignore any m found
/// in an instance file.
struct InstanceArgs {
    double r_f = 0.0, r_g = 0.0, c = 0.0, m = 0.0, gamma = 1.0;
    std::string file;
    CLI::Option* opt_file = nullptr;
    bool with_price = true;

    void attach(CLI::App& cmd, bool with_price_) {
        with_price = with_price_;
        auto* o_rf = cmd.add_option("--r-f", r_f, "Firm reward per unit of traffic");
        auto* o_rg = cmd.add_option("--r-g", r_g, "GenAI reward per unit of traffic");
        auto* o_c = cmd.add_option("--c", c, "expert cost per data unit");
        CLI::Option* o_m = nullptr;
        if (with_price) o_m = cmd.add_option("--m", m, "per-unit data price (may be negative)");
        auto* o_gamma = cmd.add_option("--gamma", gamma, "overlap parameter in (0, 1], default 1");
        opt_file = cmd.add_option("--instance", file, "instance JSON file");
        for (CLI::Option* o : {o_rf, o_rg, o_c, o_m, o_gamma})
            if (o) opt_file->excludes(o);
    }

    GameInstance instance(const CLI::App& cmd) const {
        if (opt_file->count()) return jio::load_instance(file);
        auto need = [&](const char* flag) {
            if (!cmd.count(flag))
                throw CLI::RequiredError(std::string(flag) + " (or --instance)");
        };
        need("--r-f");
        need("--r-g");
        need("--c");
        if (with_price) need("--m");
        return GameInstance(r_f, r_g, c, with_price ? m : 0.0, gamma);
    }

    GameParams params(const CLI::App& cmd) const { return instance(cmd).params(); }
};

inline std::vector<double> midpoint_grid(double lo, double hi, int points) {
    std::vector<double> xs(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        xs[i] = lo + (static_cast<double>(i) + 0.5) * (hi - lo) / points;
    return xs;
}

struct OracleCheckReport {
    int instances = 0;
    double max_alpha_err = 0.0;
    double max_u_err = 0.0;
    std::string failures_json = "[]";
    bool ok = true;
};

inline OracleCheckReport run_oracle_check(std::uint64_t seed, int n, int grid_points) {
    OracleCheckReport report;
    report.instances = n;
    const OracleConfig cfg{grid_points, true};
    cfg.validate();
    Rng rng(seed);
    std::ostringstream failures;
    failures << '[';
    bool first = true;
    for (int i = 0; i < n; ++i) {
        const GameInstance g = sample_instance(rng);
        const SpeOutcome closed = solve_spe(g);
        const SpeOutcome grid = oracle_spe(g, cfg);
        const double alpha_err = std::abs(closed.profile.alpha - grid.profile.alpha);
        const double u_err = std::abs(closed.firm_utility - grid.firm_utility);
        report.max_alpha_err = std::max(report.max_alpha_err, alpha_err);
        report.max_u_err = std::max(report.max_u_err, u_err);
        const bool fail = alpha_err > 2.0 / grid_points ||
                          u_err > 1e-6 * std::max(1.0, g.r_f);
        if (fail) {
            report.ok = false;
            if (!first) failures << ',';
            first = false;
            failures << "{\"index\":" << i << ",\"instance\":" << jio::instance_json(g)
                     << ",\"alpha_closed\":" << jio::fmt_g(closed.profile.alpha)
                     << ",\"alpha_oracle\":" << jio::fmt_g(grid.profile.alpha)
                     << ",\"U_closed\":" << jio::fmt_g(closed.firm_utility)
                     << ",\"U_oracle\":" << jio::fmt_g(grid.firm_utility) << '}';
        }
    }
    failures << ']';
    report.failures_json = failures.str();
    return report;
}

inline void write_file(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << body;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace cli

/// Runs the command line given argv-style arguments (program name
/// excluded). Returns the process exit status: 0 success, 1 solver or
/// check failure, 2 usage error. All output goes to the supplied streams.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli::InstanceArgs;

    CLI::App app{"data-sharing game solver"};
    app.require_subcommand(1);

    // solve
    CLI::App* solve_cmd = app.add_subcommand("solve", "closed-form SPE of one instance");
    InstanceArgs solve_args;
    solve_args.attach(*solve_cmd, true);

    // oracle-check
    CLI::App* oracle_cmd =
        app.add_subcommand("oracle-check", "compare closed form against the grid oracle "
                                           "on seeded random instances");
    std::uint64_t seed = 0;
    int n_instances = 100;
    int grid_points = 10001;
    oracle_cmd->add_option("--seed", seed, "RNG seed (fully determines the run)");
    oracle_cmd->add_option("--n", n_instances, "number of random instances")
        ->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--grid-points", grid_points, "oracle grid size")
        ->check(CLI::Range(2, 100000001));

    // pareto
    CLI::App* pareto_cmd =
        app.add_subcommand("pareto", "closed-form set of Pareto-improving prices");
    InstanceArgs pareto_args;
    pareto_args.attach(*pareto_cmd, false);
    std::string pareto_out;
    std::string pareto_format = "csv";
    int pareto_steps = 2001;
    pareto_cmd->add_option("--out", pareto_out, "also write a price sweep to this file");
    pareto_cmd->add_option("--format", pareto_format, "sweep file format")
        ->check(CLI::IsMember({"csv"}));
    pareto_cmd->add_option("--steps", pareto_steps, "sweep points over [-r_f, r_f]")
        ->check(CLI::Range(2, 10000001));

    // price
    CLI::App* price_cmd = app.add_subcommand("price", "optimal designer price(s)");
    InstanceArgs price_args;
    price_args.attach(*price_cmd, false);
    double lambda = 0.0;
    std::string price_out;
    std::string price_format = "csv";
    int price_steps = 2001;
    price_cmd->add_option("--lambda", lambda, "weight on expert acquisition, >= 0")
        ->required();
    price_cmd->add_option("--out", price_out, "also write an (m, objective) sweep");
    price_cmd->add_option("--format", price_format, "sweep file format")
        ->check(CLI::IsMember({"csv"}));
    price_cmd->add_option("--steps", price_steps, "sweep points over [-r_f, r_f]")
        ->check(CLI::Range(2, 10000001));

    // sweep
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "2-D parameter sweep of equilibria");
    std::string sweep_spec_path;
    std::string sweep_out;
    std::string sweep_format = "csv";
    std::string sweep_quantity;
    sweep_cmd->add_option("--spec", sweep_spec_path, "sweep spec JSON file")->required();
    sweep_cmd->add_option("--out", sweep_out, "output file (stdout when omitted)");
    sweep_cmd->add_option("--format", sweep_format, "csv or svg")
        ->check(CLI::IsMember({"csv", "svg"}));
    sweep_cmd->add_option("--quantity", sweep_quantity,
                          "quantity to render (svg; default: first in spec)");

    // curve
    CLI::App* curve_cmd =
        app.add_subcommand("curve", "leader utility vs sharing level curve");
    InstanceArgs curve_args;
    curve_args.attach(*curve_cmd, true);
    int curve_steps = 201;
    std::string curve_out;
    curve_cmd->add_option("--steps", curve_steps, "even grid size on [0, 1]")
        ->check(CLI::Range(2, 10000001));
    curve_cmd->add_option("--out", curve_out, "output CSV file (stdout when omitted)");

    std::reverse(args.begin(), args.end()); // CLI11 consumes from the back
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (*solve_cmd) {
            const GameInstance g = solve_args.instance(*solve_cmd);
            out << jio::outcome_json(solve_spe(g)) << '\n';
            return 0;
        }

        if (*oracle_cmd) {
            const cli::OracleCheckReport report =
                cli::run_oracle_check(seed, n_instances, grid_points);
            out << "{\"instances\":" << report.instances
                << ",\"max_alpha_err\":" << jio::fmt_g(report.max_alpha_err)
                << ",\"max_U_err\":" << jio::fmt_g(report.max_u_err)
                << ",\"failures\":" << report.failures_json << "}\n";
            return report.ok ? 0 : 1;
        }

        if (*pareto_cmd) {
            const GameParams p = pareto_args.params(*pareto_cmd);
            out << jio::interval_set_json(pareto_price_set(p)) << '\n';
            if (pareto_cmd->count("--out")) {
                std::ostringstream csv;
                csv << "m,is_improving,U,V,kind\n";
                for (const ParetoSample& s :
                     oracle_pareto(p, cli::midpoint_grid(-p.r_f, p.r_f, pareto_steps)))
                    csv << jio::fmt_g(s.m) << ',' << (s.is_improving ? 1 : 0) << ','
                        << jio::fmt_g(s.firm_utility) << ',' << jio::fmt_g(s.genai_utility)
                        << ',' << to_string(s.kind) << '\n';
                cli::write_file(pareto_out, csv.str());
            }
            return 0;
        }

        if (*price_cmd) {
            const GameParams p = price_args.params(*price_cmd);
            out << jio::pricing_json(solve_pricing(p, lambda)) << '\n';
            if (price_cmd->count("--out")) {
                std::ostringstream csv;
                csv << "m,objective\n";
                for (double m : cli::midpoint_grid(-p.r_f, p.r_f, price_steps))
                    csv << jio::fmt_g(m) << ','
                        << jio::fmt_g(objective(GameInstance(p, m), lambda)) << '\n';
                cli::write_file(price_out, csv.str());
            }
            return 0;
        }

        if (*sweep_cmd) {
            const SweepSpec spec = jio::load_sweep_spec(sweep_spec_path);
            const SweepGrid grid = run_sweep(spec);
            if (sweep_format == "svg") {
                const Quantity q = sweep_cmd->count("--quantity")
                                       ? parse_quantity(sweep_quantity)
                                       : spec.quantities.front();
                if (sweep_cmd->count("--out")) {
                    emit_heatmap(grid, q, sweep_out);
                } else {
                    emit_heatmap(grid, q, out);
                }
            } else {
                if (sweep_cmd->count("--out")) {
                    emit_csv(grid, sweep_out);
                } else {
                    emit_csv(grid, out);
                }
            }
            return 0;
        }

        if (*curve_cmd) {
            const GameInstance g = curve_args.instance(*curve_cmd);
            std::ostringstream csv;
            csv << "alpha,U,x_reply\n";
            for (const CurvePoint& pt : utility_curve(g, curve_steps))
                csv << jio::fmt_g(pt.alpha) << ',' << jio::fmt_g(pt.firm_utility) << ','
                    << jio::fmt_g(pt.x_reply) << '\n';
            if (curve_cmd->count("--out"))
                cli::write_file(curve_out, csv.str());
            else
                out << csv.str();
            return 0;
        }
    } catch (const CLI::Error& e) {
        err << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

} // namespace dsg
