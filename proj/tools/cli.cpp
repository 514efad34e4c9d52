#include "cli.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "dosimpact/analytic.hpp"
#include "example.hpp"

namespace dosimpact::cli {

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot read '{}'", path));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError(fmt::format("error while reading '{}'", path));
    }
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(fmt::format("cannot write '{}'", path));
    }
    out << content;
    out.close();
    if (!out) {
        throw IoError(fmt::format("error while writing '{}'", path));
    }
}

// results.csv + "web" -> results.web.csv
std::string per_asset_path(const std::string& path, const std::string& asset_id) {
    const std::filesystem::path p(path);
    auto name = p.stem().string() + "." + asset_id + p.extension().string();
    return (p.parent_path() / name).string();
}

std::string process_check(const std::string& text) {
    if (parse_countermeasure(text)) {
        return {};
    }
    return fmt::format("unknown process '{}'; valid kinds: {}", text, countermeasure_kinds());
}

std::string format_check(const std::string& text) {
    if (parse_output_format(text)) {
        return {};
    }
    return fmt::format("unknown format '{}'; expected csv or json", text);
}

struct RunFlags {
    std::string scenario;
    std::string results;
    std::string out;
    std::string format = "csv";
    std::optional<std::size_t> paths;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    bool no_noise = false;
    std::optional<std::string> process;
    std::optional<double> window;
    unsigned threads = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
    cmd->add_option("--paths", f.paths, "Number of Monte Carlo paths");
    cmd->add_option("--seed", f.seed, "Root seed (asset i uses seed + i)");
    cmd->add_option("--dt", f.dt, "Time step, hours");
    cmd->add_flag("--no-noise", f.no_noise, "Disable the Brownian noise");
    cmd->add_option("--process", f.process, "dissuasive, retaliation, compensation or keep_silent")
        ->check(CLI::Validator(process_check, "KIND"));
    cmd->add_option("--window", f.window, "Damage window after the first shock, hours");
    cmd->add_option("--threads", f.threads, "Worker threads (0: all cores)");
}

void print_diagnostics(std::ostream& err, const std::string& path, const ScenarioError& e) {
    for (const auto& d : e.diagnostics()) {
        err << path << ":" << (d.line != 0 ? fmt::format("{}:", d.line) : std::string()) << " "
            << (d.field.empty() ? std::string() : d.field + ": ") << d.message << "\n";
    }
}

// Scenario file plus command-line overrides, validated again after merging.
ScenarioDocument load_scenario(const RunFlags& f) {
    ScenarioDocument doc = parse_scenario(read_file(f.scenario));
    auto& c = doc.config;
    if (f.paths) {
        c.n_paths = *f.paths;
    }
    if (f.seed) {
        c.seed = *f.seed;
    }
    if (f.dt) {
        c.dt = *f.dt;
    }
    if (f.no_noise) {
        c.noise_enabled = false;
    }
    if (f.process) {
        doc.process = *parse_countermeasure(*f.process);
    }
    if (f.window) {
        doc.window = *f.window;
    }

    std::vector<Diagnostic> diags;
    for (const auto& v : validate_config(c)) {
        diags.push_back({0, v.field, v.message});
    }
    if (diags.empty()) {
        for (const auto& entry : doc.assets) {
            for (const auto& v : validate_shocks(entry.shocks, c)) {
                diags.push_back({0, fmt::format("shock[{}].{}", entry.asset.id,
                                                v.field.substr(v.field.find('.') + 1)),
                                 v.message});
            }
        }
    }
    if (doc.window && !(*doc.window > 0.0)) {
        diags.push_back({0, "window", "must be > 0"});
    }
    if (!diags.empty()) {
        throw ScenarioError(std::move(diags));
    }
    return doc;
}

std::string claim_csv(const ClaimReport& r) {
    const bool with_claim = r.claim.has_value();
    std::string out = "item,short_term_monetary,long_term_investment,degraded_value,total";
    out += with_claim ? ",claim\n" : "\n";
    auto line = [&](const std::string& item, const DamageTriple& t, const std::string& claim) {
        out += fmt::format("{},{},{},{},{}", item, t.short_term_monetary, t.long_term_investment,
                           t.degraded_value, t.total());
        out += with_claim ? "," + claim + "\n" : "\n";
    };
    for (const auto& a : r.assets) {
        line(a.asset_id, a.triple, "");
    }
    line("portfolio", r.total, with_claim ? fmt::format("{}", *r.claim) : "");
    return out;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty()) {
        out << content;
    } else {
        write_file(path, content);
    }
}

int run_simulate(const RunFlags& f, std::ostream& out) {
    const ScenarioDocument doc = load_scenario(f);
    const auto format = *parse_output_format(f.format);
    if (format == OutputFormat::csv && doc.assets.size() > 1 && f.out.empty()) {
        throw InvalidInput(fmt::format(
            "--out: the scenario has {} assets; CSV output writes one file per asset and "
            "needs --out",
            doc.assets.size()));
    }
    const ScenarioRun run = run_scenario(doc, f.threads);
    if (format == OutputFormat::json) {
        emit(out, f.out, write_json(run.meta, run.series, run.report));
    } else if (run.series.size() == 1) {
        emit(out, f.out, write_csv(run.series.front().stats));
    } else {
        for (const auto& s : run.series) {
            write_file(per_asset_path(f.out, s.asset_id), write_csv(s.stats));
        }
    }
    return exit_ok;
}

int run_report(const RunFlags& f, std::ostream& out) {
    ClaimReport report;
    if (!f.results.empty()) {
        report = read_claim_report(read_file(f.results));
        const auto process = f.process ? *parse_countermeasure(*f.process) : report.process;
        auto distribution = report.distribution;
        report = countermeasure_report(std::move(report.assets), process);
        report.distribution = std::move(distribution);
    } else {
        report = run_scenario(load_scenario(f), f.threads).report;
    }
    const auto format = *parse_output_format(f.format);
    emit(out, f.out, format == OutputFormat::json ? write_claim_report(report) : claim_csv(report));
    return exit_ok;
}

struct AnalyticFlags {
    double a = 0.0;
    double tk = 0.0;
    double r0 = 0.0;
    double r_eq = 0.0;
    double v = 1.0;
    double t = 0.0;
    double r_post = 1.0;
    double lambda = 0.2;
    double va = 0.0;
    double value = 0.0;
    double m = 0.0;
    double r = 0.0;
    double rm = 0.0;
    double dt = 1.0;
};

}  // namespace

ScenarioRun run_scenario(const ScenarioDocument& doc, unsigned threads) {
    ScenarioRun run;
    run.meta.seed = doc.config.seed;
    run.meta.dt = doc.config.dt;
    run.meta.n_paths = doc.config.n_paths;
    run.meta.scenario = echo_scenario(doc);

    std::vector<AssetDamage> damages;
    std::vector<DamageTriple> portfolio_paths(doc.config.n_paths);
    EnsembleOptions options;
    options.threads = threads;
    for (std::size_t i = 0; i < doc.assets.size(); ++i) {
        const auto& entry = doc.assets[i];
        SimulationConfig config = doc.config;
        config.seed = doc.config.seed + i;
        AssetDamage damage;
        damage.asset_id = entry.asset.id;
        if (entry.shocks.empty()) {
            // No attack on this asset: nothing anchors a damage window.
            run.series.push_back({entry.asset.id, simulate_ensemble(entry.asset, config, {}, options)});
            damage.distribution = summarize_damages(std::vector<DamageTriple>(config.n_paths));
        } else {
            auto assessment = assess_asset(entry.asset, config, entry.shocks,
                                           effective_window(doc, entry), options);
            for (std::size_t p = 0; p < config.n_paths; ++p) {
                const std::array<DamageTriple, 2> pair{portfolio_paths[p], assessment.per_path[p]};
                portfolio_paths[p] = aggregate_portfolio(pair);
            }
            damage.triple = assessment.mean;
            damage.distribution = assessment.summary;
            run.series.push_back({entry.asset.id, std::move(assessment.stats)});
        }
        damages.push_back(std::move(damage));
    }
    run.report = countermeasure_report(std::move(damages), doc.process);
    run.report.distribution = summarize_damages(portfolio_paths);
    return run;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Economic impact of denial-of-service attacks", "dosimpact"};
    app.require_subcommand(1);
    app.footer("Exit codes: 0 success, 2 usage error, 3 parse/validation error, 4 I/O error.");

    RunFlags sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a scenario and write its statistics");
    simulate->add_option("--scenario", sim.scenario, "Scenario file")->required();
    simulate->add_option("--out", sim.out, "Output file (default: stdout)");
    simulate->add_option("--format", sim.format, "csv or json")
        ->check(CLI::Validator(format_check, "FORMAT"));
    add_run_flags(simulate, sim);

    RunFlags rep;
    rep.format = "json";
    auto* report = app.add_subcommand("report", "Write the claim report for a counter-measure process");
    auto* rep_scenario = report->add_option("--scenario", rep.scenario, "Scenario file to run inline");
    auto* rep_results = report->add_option("--results", rep.results, "JSON output of simulate");
    rep_scenario->excludes(rep_results);
    report->add_option("--out", rep.out, "Output file (default: stdout)");
    report->add_option("--format", rep.format, "json or csv")
        ->check(CLI::Validator(format_check, "FORMAT"));
    add_run_flags(report, rep);

    auto* example = app.add_subcommand("example", "Reproduce the data-centre worked example");

    AnalyticFlags an;
    auto* analytic = app.add_subcommand("analytic", "Closed-form quantities");
    analytic->require_subcommand(0, 1);
    analytic->allow_extras();
    analytic->footer("Selectors: beta_k, ou_moments, g, t_half, annuity, dM");
    auto* an_beta = analytic->add_subcommand("beta_k", "Duration factor (1 - exp(-a TK)) / a");
    an_beta->add_option("--a", an.a, "Reactivity a, 1/h")->required();
    an_beta->add_option("--tk", an.tk, "Restoration time TK, h")->required();
    auto* an_ou = analytic->add_subcommand("ou_moments", "Mean and variance of r(t)");
    an_ou->add_option("--r0", an.r0, "Initial rate, 1/h")->required();
    an_ou->add_option("--a", an.a, "Reactivity a, 1/h")->required();
    an_ou->add_option("--r-eq", an.r_eq, "Equilibrium rate, 1/h")->required();
    an_ou->add_option("--v", an.v, "Volatility V")->required();
    an_ou->add_option("--t", an.t, "Time, h")->required();
    auto* an_g = analytic->add_subcommand("g", "Usability growth rate r_post + V lambda - VA/TK");
    an_g->add_option("--r-post", an.r_post, "Post-shock rate (default 1)");
    an_g->add_option("--v", an.v, "Volatility V (default 1)");
    an_g->add_option("--lambda", an.lambda, "Market risk premium (default 0.2)");
    an_g->add_option("--va", an.va, "Usability volatility VA")->required();
    an_g->add_option("--tk", an.tk, "Restoration time TK, h")->required();
    auto* an_half = analytic->add_subcommand("t_half", "Half-restoration time 0.5 / g");
    an_half->add_option("--r-post", an.r_post, "Post-shock rate (default 1)");
    an_half->add_option("--v", an.v, "Volatility V (default 1)");
    an_half->add_option("--lambda", an.lambda, "Market risk premium (default 0.2)");
    an_half->add_option("--va", an.va, "Usability volatility VA")->required();
    an_half->add_option("--tk", an.tk, "Restoration time TK, h")->required();
    auto* an_annuity = analytic->add_subcommand("annuity", "Hourly annuity of a capability value");
    an_annuity->add_option("--value", an.value, "Total capability value, EUR")->required();
    an_annuity->add_option("--tk", an.tk, "Restoration time TK, h")->required();
    auto* an_dm = analytic->add_subcommand("dM", "Short-term monetary increment M (r + rM) dt");
    an_dm->add_option("--m", an.m, "M before the step, EUR")->required();
    an_dm->add_option("--r", an.r, "Time preference during the step, 1/h")->required();
    an_dm->add_option("--rm", an.rm, "Monetary rate rM, 1/h")->required();
    an_dm->add_option("--dt", an.dt, "Step, h (default 1)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    std::string where;
    try {
        if (simulate->parsed()) {
            where = sim.scenario;
            return run_simulate(sim, out);
        }
        if (report->parsed()) {
            if (rep.scenario.empty() && rep.results.empty()) {
                err << "report: one of --scenario or --results is required\n";
                return exit_usage;
            }
            where = rep.scenario.empty() ? rep.results : rep.scenario;
            return run_report(rep, out);
        }
        if (example->parsed()) {
            out << format_example(run_example());
            return exit_ok;
        }
        if (analytic->parsed() && analytic->get_subcommands().empty()) {
            const auto extras = analytic->remaining();
            err << fmt::format("analytic: {} selector{}; expected one of: beta_k, ou_moments, g, "
                               "t_half, annuity, dM\n",
                               extras.empty() ? "missing" : "unknown",
                               extras.empty() ? "" : " '" + extras.front() + "'");
            return exit_usage;
        }
        if (an_beta->parsed()) {
            out << fmt::format("beta_k = {:.6g} h\n", beta_k(an.a, an.tk));
        } else if (an_ou->parsed()) {
            const auto m = ou_moments(an.r0, {an.a, an.r_eq, an.v, 0.0}, an.t);
            out << fmt::format("mean = {:.6g} /h\nvariance = {:.6g} /h^2\n", m.mean, m.variance);
        } else if (an_g->parsed()) {
            out << fmt::format("g = {:.6g} /h\n",
                               recovery_growth_rate(an.r_post, an.v, an.lambda, an.va, an.tk));
        } else if (an_half->parsed()) {
            const double g = recovery_growth_rate(an.r_post, an.v, an.lambda, an.va, an.tk);
            if (const auto t = half_restoration_time(g)) {
                out << fmt::format("t_half = {:.6g} h\n", *t);
            } else {
                out << fmt::format("t_half = never (g = {:.6g} /h <= 0)\n", g);
            }
        } else if (an_annuity->parsed()) {
            out << fmt::format("annuity = {:.2f} EUR/h\n", hourly_annuity(an.value, an.tk));
        } else if (an_dm->parsed()) {
            out << fmt::format("dM = {:.2f} EUR\n", deterministic_dM(an.m, an.r, an.rm, an.dt));
        }
        return exit_ok;
    } catch (const ScenarioError& e) {
        print_diagnostics(err, where, e);
        return exit_invalid;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return exit_io;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::runtime_error& e) {
        // Malformed results file given to `report --results`.
        err << "error: " << where << ": " << e.what() << "\n";
        return exit_invalid;
    }
}

}  // namespace dosimpact::cli
