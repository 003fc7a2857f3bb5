#include "hermite_mc/commands.hpp"

#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "hermite_mc/kernel.hpp"
#include "hermite_mc/mc_engine.hpp"
#include "hermite_mc/tractability.hpp"

namespace hermite_mc {

namespace {

std::string csv_num(double v)
{
    if (!std::isfinite(v)) {
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    return format_double(v, 12);
}

std::string csv_opt(const std::optional<double>& v) { return v ? csv_num(*v) : std::string(); }

Json json_opt(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string join_point(const std::vector<double>& p)
{
    std::string out;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += csv_num(p[i]);
    }
    return out;
}

const HermiteSpace& need_space(const ExperimentConfig& c, const char* cmd)
{
    if (!c.space) {
        throw ConfigError(std::string(cmd) + ": config needs a 'space'");
    }
    return *c.space;
}

double elapsed_ms(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---- error-study --------------------------------------------------------

Json report_json(const ErrorReport& r, bool within)
{
    return Json{{"space", r.space},
                {"family", r.family},
                {"s", r.s},
                {"n", r.n},
                {"replications", r.replications},
                {"master_seed", r.master_seed},
                {"worst_case_index", r.worst_case_index.to_dense()},
                {"worst_case_r", r.worst_case_r},
                {"theoretical_error", r.theoretical_error},
                {"alt_error_omega_a0", json_opt(r.alt_error_omega_a0)},
                {"empirical_mse", r.empirical_mse},
                {"empirical_rmse", r.empirical_rmse},
                {"empirical_stderr", r.empirical_stderr},
                {"mean_error", r.mean_error},
                {"mean_error_stderr", r.mean_error_stderr},
                {"within_3se", within}};
}

// ---- tractability -------------------------------------------------------

Json certificate_json(const TractabilityCertificate& c)
{
    return Json{{"C", json_opt(c.C)},
                {"log_C", json_opt(c.log_C)},
                {"A", json_opt(c.A)},
                {"epsilon_exponent", json_opt(c.epsilon_exponent)},
                {"partial_sum_law", c.partial_sum_law}};
}

Json verdict_json(const TractabilityVerdict& v)
{
    return Json{{"strong_polynomial", v.strong_polynomial},
                {"polynomial", v.polynomial},
                {"weak", v.weak},
                {"heuristic", v.heuristic},
                {"certificate", certificate_json(v.certificate)}};
}

} // namespace

int cmd_error_study(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                    std::ostream& log)
{
    const HermiteSpace& space = need_space(config, "error-study");
    if (config.n.empty()) {
        throw ConfigError("error-study: config needs a nonempty 'n' list");
    }
    if (!config.replications) {
        throw ConfigError("error-study: config needs 'replications'");
    }
    const std::uint64_t seed = config.seed.value_or(0);
    const bool csv = options.format == OutputFormat::Csv;
    if (csv) {
        out << "family,s,n,replications,master_seed,worst_case_index,worst_case_r,theoretical_error,"
               "alt_error_omega_a0,empirical_mse,empirical_rmse,empirical_stderr,mean_error,"
               "mean_error_stderr,within_3se\n";
        out.flush();
    }
    for (std::uint64_t n : config.n) {
        const ErrorReport r =
            empirical_randomized_error(space, n, *config.replications, seed, RunOptions{options.threads});
        const double target = r.theoretical_error * r.theoretical_error;
        const bool within = std::fabs(r.empirical_mse - target) <= 3.0 * r.empirical_stderr;
        if (csv) {
            out << r.family << ',' << r.s << ',' << r.n << ',' << r.replications << ',' << r.master_seed << ",\""
                << r.worst_case_index.to_string() << "\"," << csv_num(r.worst_case_r) << ','
                << csv_num(r.theoretical_error) << ',' << csv_opt(r.alt_error_omega_a0) << ','
                << csv_num(r.empirical_mse) << ',' << csv_num(r.empirical_rmse) << ','
                << csv_num(r.empirical_stderr) << ',' << csv_num(r.mean_error) << ','
                << csv_num(r.mean_error_stderr) << ',' << (within ? "true" : "false") << '\n';
        } else {
            out << dump_json(report_json(r, within)) << '\n';
        }
        out.flush();
        log << "error-study n=" << n << ": " << format_double(r.wall_time_ms, 6) << " ms\n";
    }
    return kExitOk;
}

int cmd_tractability(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                     std::ostream& log)
{
    const auto start = std::chrono::steady_clock::now();
    const bool csv = options.format == OutputFormat::Csv;
    Json doc = Json::object();

    std::optional<WeightSequenceSpec> gamma = config.gamma;
    if (!gamma && config.space && !config.space->is_analytic()) {
        gamma = config.space->finite().gamma();
    }

    if (gamma) {
        std::vector<std::size_t> grid = config.s_values.empty() ? dyadic_s_grid() : config.s_values;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] < 2 || (i > 0 && grid[i] < grid[i - 1])) {
                throw ConfigError("tractability: s_values must be ascending and >= 2");
            }
        }
        const TractabilityVerdict v = classify_finite(*gamma);
        const auto rows = partial_sum_diagnostic(*gamma, grid);
        doc["family"] = "finite_smoothness";
        doc["gamma"] = to_json(*gamma);
        doc["verdict"] = verdict_json(v);
        if (csv) {
            out << "s,S,S_over_log_s,S_over_s\n";
            for (const auto& r : rows) {
                out << r.s << ',' << csv_num(r.S) << ',' << csv_num(r.S_over_log_s) << ',' << csv_num(r.S_over_s)
                    << '\n';
            }
            out << "# " << dump_json(doc) << '\n';
        } else {
            Json table = Json::array();
            for (const auto& r : rows) {
                table.push_back(Json{{"s", r.s}, {"S", r.S}, {"S_over_log_s", r.S_over_log_s}, {"S_over_s", r.S_over_s}});
            }
            doc["diagnostic"] = table;
            out << dump_json(doc) << '\n';
        }
    } else if (config.space) {
        const HermiteSpace& space = *config.space;
        const TractabilityVerdict v = classify_analytic(space.analytic());
        const std::vector<std::size_t> grid =
            config.s_values.empty() ? std::vector<std::size_t>{space.dim()} : config.s_values;
        doc["family"] = "analytic";
        doc["space"] = to_json(space);
        doc["verdict"] = verdict_json(v);
        Json table = Json::array();
        if (csv) {
            out << "s,C\n";
        }
        for (std::size_t s : grid) {
            const double c = max_r_nonzero(space.with_dim(s)).value;
            if (csv) {
                out << s << ',' << csv_num(c) << '\n';
            }
            table.push_back(Json{{"s", s}, {"C", c}});
        }
        if (csv) {
            out << "# " << dump_json(doc) << '\n';
        } else {
            doc["diagnostic"] = table;
            out << dump_json(doc) << '\n';
        }
    } else {
        throw ConfigError("tractability: config needs 'gamma' or 'space'");
    }
    out.flush();
    log << "tractability: " << format_double(elapsed_ms(start), 6) << " ms\n";
    return kExitOk;
}

int cmd_nmc_table(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                  std::ostream& log)
{
    const auto start = std::chrono::steady_clock::now();
    const HermiteSpace& space = need_space(config, "nmc-table");
    if (config.eps.empty()) {
        throw ConfigError("nmc-table: config needs a nonempty 'eps' list");
    }
    const std::vector<std::size_t> grid =
        config.s_values.empty() ? std::vector<std::size_t>{space.dim()} : config.s_values;
    const bool csv = options.format == OutputFormat::Csv;
    if (csv) {
        out << "s,eps,n_mc,ratio_ecwt\n";
        out.flush();
    }
    Json fits = Json::array();
    for (std::size_t s : grid) {
        const HermiteSpace sp = space.with_dim(s);
        for (double eps : config.eps) {
            const EcWtRow row = ec_wt_diagnostic(sp, {{eps, s}}).front();
            if (csv) {
                out << s << ',' << csv_num(eps) << ',' << row.n_mc << ',' << csv_num(row.ratio) << '\n';
            } else {
                out << dump_json(Json{{"s", s}, {"eps", eps}, {"n_mc", row.n_mc}, {"ratio_ecwt", row.ratio}}) << '\n';
            }
            out.flush();
        }
        Json fit{{"s", s}};
        try {
            fit["slope"] = epsilon_exponent_fit(sp, config.eps);
        } catch (const std::invalid_argument& e) {
            fit["slope"] = nullptr;
            fit["reason"] = e.what();
        }
        fits.push_back(fit);
    }
    const Json footer{{"epsilon_exponent", fits}};
    out << (csv ? "# " : "") << dump_json(footer) << '\n';
    out.flush();
    log << "nmc-table: " << format_double(elapsed_ms(start), 6) << " ms\n";
    return kExitOk;
}

int cmd_kernel_eval(const ExperimentConfig& config, const CommandOptions& options, std::ostream& out,
                    std::ostream& log)
{
    const auto start = std::chrono::steady_clock::now();
    const HermiteSpace& space = need_space(config, "kernel-eval");
    if (config.points.empty()) {
        throw ConfigError("kernel-eval: config needs a nonempty 'points' list");
    }
    for (const auto& p : config.points) {
        if (p.x.size() != space.dim() || p.y.size() != space.dim()) {
            throw ConfigError("kernel-eval: point dimension differs from space.s");
        }
    }
    const double tol = config.tol.value_or(1e-10);
    const bool mehler = space.is_analytic() && space.analytic().all_b_one();
    const bool csv = options.format == OutputFormat::Csv;
    if (csv) {
        out << "x,y,K,tol,error_bound" << (mehler ? ",mehler" : "") << ",warning\n";
        out.flush();
    }
    bool any_warning = false;
    for (const auto& p : config.points) {
        const KernelEvaluation k = kernel_eval(space, p.x, p.y, tol);
        std::string warning;
        if (k.outside_validated_range) {
            warning = "outside_validated_range";
        }
        if (!k.tolerance_met) {
            warning += warning.empty() ? "tolerance_not_met" : "|tolerance_not_met";
        }
        any_warning = any_warning || !warning.empty();
        std::optional<double> ref;
        if (mehler) {
            ref = mehler_reference(space.analytic(), p.x, p.y);
        }
        if (csv) {
            out << join_point(p.x) << ',' << join_point(p.y) << ',' << csv_num(k.value) << ',' << csv_num(tol) << ','
                << csv_num(k.error_bound);
            if (mehler) {
                out << ',' << csv_num(*ref);
            }
            out << ',' << warning << '\n';
        } else {
            Json row{{"x", p.x}, {"y", p.y}, {"K", k.value}, {"tol", tol}, {"error_bound", k.error_bound}, {"cutoffs", k.cutoffs}};
            if (mehler) {
                row["mehler"] = *ref;
            }
            row["warning"] = warning;
            out << dump_json(row) << '\n';
        }
        out.flush();
    }
    log << "kernel-eval: " << format_double(elapsed_ms(start), 6) << " ms\n";
    return any_warning ? kExitWarnings : kExitOk;
}

bool is_command(const std::string& name)
{
    return name == "error-study" || name == "tractability" || name == "nmc-table" || name == "kernel-eval";
}

int run_command(const std::string& name, const ExperimentConfig& config, const CommandOptions& options,
                std::ostream& out, std::ostream& log)
{
    try {
        if (name == "error-study") {
            return cmd_error_study(config, options, out, log);
        }
        if (name == "tractability") {
            return cmd_tractability(config, options, out, log);
        }
        if (name == "nmc-table") {
            return cmd_nmc_table(config, options, out, log);
        }
        if (name == "kernel-eval") {
            return cmd_kernel_eval(config, options, out, log);
        }
        throw ConfigError("unknown command '" + name + "'");
    } catch (const std::invalid_argument& e) {
        out.flush();
        log << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        out.flush();
        log << "numeric failure: " << e.what() << '\n';
        return kExitNumeric;
    }
}

} // namespace hermite_mc
