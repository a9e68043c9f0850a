// pamg: simulation and verification CLI for preferential-attachment
// multigraph processes. Subcommands read JSON plans / multigraph text
// files and write plot-ready CSV + JSON under --out.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "pamg/error.hpp"
#include "pamg/harness.hpp"

namespace fs = std::filesystem;
using namespace pamg;

namespace {

Multigraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open graph file " + path);
    return Multigraph::deserialize(in);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path);
    out << content;
}

std::vector<std::int64_t> default_assumption_checkpoints(const GrowthSpec& spec,
                                                         std::int64_t horizon) {
    std::vector<std::int64_t> cps;
    std::int64_t t = std::max<std::int64_t>(spec.v_prime, 4);
    while (t <= horizon) {
        cps.push_back(t);
        t *= 2;
    }
    return cps;
}

struct CommonPlanArgs {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed_override;
};

ExperimentPlan load_plan(const CommonPlanArgs& args) {
    ExperimentPlan plan = plan_from_json_file(args.config_path);
    if (args.seed_override) {
        plan.master_seed = *args.seed_override;
        plan.process.rng_seed = *args.seed_override;
    }
    return plan;
}

int cmd_simulate(const CommonPlanArgs& args) {
    ExperimentPlan plan = load_plan(args);
    auto table = std::make_shared<const GrowthTable>(plan.process.growth, plan.process.horizon);
    plan.finalize(*table);
    ProcessConfig cfg = plan.process;
    cfg.rng_seed = Rng::stream_seed(plan.master_seed, 0);
    Trajectory traj = run(cfg, table);
    export_single_run(traj, plan, args.out_dir);
    std::cout << "simulate: T=" << traj.final_time << " edges=" << traj.final_total_edges
              << " -> " << args.out_dir << "\n";
    return 0;
}

int cmd_ensemble(const CommonPlanArgs& args, unsigned workers) {
    ExperimentPlan plan = load_plan(args);
    EnsembleResult result = run_ensemble(plan, workers);
    export_result(result, plan, args.out_dir);
    std::cout << "ensemble: " << result.runs << " runs, " << result.checkpoints.size()
              << " checkpoints -> " << args.out_dir << "\n";
    return 0;
}

int cmd_martingale(const CommonPlanArgs& args) {
    ExperimentPlan plan = load_plan(args);
    auto table = std::make_shared<const GrowthTable>(plan.process.growth, plan.process.horizon);
    plan.finalize(*table);
    NormalizerTable normalizer(*table);
    fs::create_directories(args.out_dir);
    std::ostringstream csv;
    write_normalizer_csv(*table, normalizer, plan.checkpoints, csv);
    write_text((fs::path(args.out_dir) / "martingale.csv").string(), csv.str());
    std::cout << "martingale: " << plan.checkpoints.size() << " checkpoints -> " << args.out_dir
              << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"preferential-attachment multigraph simulator and Rado-multigraph harness"};
    app.require_subcommand(1);

    CommonPlanArgs plan_args;
    unsigned workers = 0;

    auto add_plan_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", plan_args.config_path, "experiment plan (JSON)")->required();
        cmd->add_option("--out", plan_args.out_dir, "output directory")->required();
        cmd->add_option("--seed", plan_args.seed_override, "override the master seed");
    };

    auto* simulate = app.add_subcommand("simulate", "single run: trajectory.csv + meta.json");
    add_plan_flags(simulate);

    auto* ensemble = app.add_subcommand("ensemble", "N runs: result.json, curves.csv, martingale.csv");
    add_plan_flags(ensemble);
    ensemble->add_option("--workers", workers, "worker threads (default: hardware)");

    auto* martingale = app.add_subcommand("martingale", "normalizer table A(t), F(t), A/sqrt(F)");
    add_plan_flags(martingale);

    std::string in_path, out_path, g1_path, g2_path;
    std::uint32_t nmax = 2, mmax = 2, cap = 64;
    std::int64_t samples = 100, steps = 6, nodes = 0, horizon = 10000;
    std::uint64_t seed = 0;
    double p = 0.5;
    std::string plist, profile, growth_config, c_value = "1", alpha_value = "1", checkpoints_arg;
    double s1_floor = 0.1, s2_tol = 0.01;

    auto* axioms = app.add_subcommand("axioms", "axiom checks + witness coverage of a graph file");
    axioms->add_option("--in", in_path, "multigraph text file")->required();
    axioms->add_option("--out", out_path, "report JSON (default: stdout)");
    axioms->add_option("--nmax", nmax, "max request size");
    axioms->add_option("--mmax", mmax, "max multiplicity per pair");
    axioms->add_option("--samples", samples, "sampled witness requests");
    axioms->add_option("--seed", seed, "rng seed");

    auto* ergen = app.add_subcommand("ergen", "Erdos-Renyi-style multigraph generator");
    ergen->add_option("--nodes", nodes, "node count")->required();
    ergen->add_option("--p", p, "constant level-survival probability");
    ergen->add_option("--plist", plist, "comma-separated p_0,p_1,... (last repeats)");
    ergen->add_option("--cap", cap, "multiplicity cap");
    ergen->add_option("--seed", seed, "rng seed");
    ergen->add_option("--out", out_path, "output .mg file")->required();

    auto* backforth = app.add_subcommand("backforth", "back-and-forth extension between two graphs");
    backforth->add_option("--g1", g1_path, "first multigraph file")->required();
    backforth->add_option("--g2", g2_path, "second multigraph file")->required();
    backforth->add_option("--steps", steps, "extension steps");
    backforth->add_option("--out", out_path, "result JSON (default: stdout)");

    auto* assumptions = app.add_subcommand("assumptions", "S1/S2 partial sums and doubling increments");
    assumptions->add_option("--profile", profile, "linear | constant | spike | power");
    assumptions->add_option("--config", growth_config, "growth spec JSON file");
    assumptions->add_option("--horizon", horizon, "table horizon");
    assumptions->add_option("--c", c_value, "coefficient (rational string)");
    assumptions->add_option("--alpha", alpha_value, "power exponent (rational string)");
    assumptions->add_option("--checkpoints", checkpoints_arg, "comma-separated checkpoint list");
    assumptions->add_option("--s1-floor", s1_floor, "S1 diverging-hint floor");
    assumptions->add_option("--s2-tol", s2_tol, "S2 converging-hint tolerance");
    assumptions->add_option("--out", out_path, "also write the table as CSV");

    try {
        app.parse(argc, argv);

        if (simulate->parsed())
            return cmd_simulate(plan_args);
        if (ensemble->parsed())
            return cmd_ensemble(plan_args, workers);
        if (martingale->parsed())
            return cmd_martingale(plan_args);

        if (axioms->parsed()) {
            const Multigraph g = load_graph(in_path);
            AxiomReport report = check_basic_axioms(g);
            Rng rng(seed);
            report.a4_coverage = witness_coverage(g, nmax, mmax, samples, rng);
            const std::string text = axiom_report_to_json(report);
            if (out_path.empty())
                std::cout << text;
            else
                write_text(out_path, text);
            return 0;
        }

        if (ergen->parsed()) {
            ERConfig cfg;
            cfg.nodes = static_cast<NodeId>(nodes);
            cfg.multiplicity_cap = cap;
            if (!plist.empty()) {
                std::stringstream ss(plist);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    cfg.p_levels.push_back(std::stod(tok));
            } else {
                cfg.p_levels = {p};
            }
            Rng rng(seed);
            const Multigraph g = er_generate(cfg, rng);
            std::ostringstream mg;
            g.serialize(mg);
            write_text(out_path, mg.str());
            std::cout << "ergen: " << g.node_count() << " nodes, " << g.total_edges()
                      << " edges -> " << out_path << "\n";
            return 0;
        }

        if (backforth->parsed()) {
            const Multigraph g1 = load_graph(g1_path);
            const Multigraph g2 = load_graph(g2_path);
            const BackForthResult result = back_and_forth_extend(g1, g2, PartialIso{}, steps);
            const std::string text = partial_iso_to_json(result);
            if (out_path.empty())
                std::cout << text;
            else
                write_text(out_path, text);
            if (!result.success)
                std::cout << "backforth: stuck at step " << result.failed_step << "\n";
            return 0;
        }

        if (assumptions->parsed()) {
            GrowthSpec spec;
            if (!growth_config.empty()) {
                std::ifstream in(growth_config);
                if (!in)
                    throw ConfigError("cannot open " + growth_config);
                std::stringstream buf;
                buf << in.rdbuf();
                spec = growth_spec_from_json_text(buf.str());
            } else if (profile == "linear") {
                spec = GrowthSpec::linear_floor(parse_rational(c_value));
            } else if (profile == "constant") {
                spec = GrowthSpec::constant(parse_rational(c_value).num);
            } else if (profile == "spike") {
                spec = GrowthSpec::power_of_two_spike();
            } else if (profile == "power") {
                spec = GrowthSpec::power_floor(parse_rational(c_value), parse_rational(alpha_value));
            } else {
                throw ConfigError("assumptions: need --profile or --config");
            }
            const GrowthTable table(spec, horizon);
            std::vector<std::int64_t> cps;
            if (!checkpoints_arg.empty()) {
                std::stringstream ss(checkpoints_arg);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    cps.push_back(std::stoll(tok));
            } else {
                cps = default_assumption_checkpoints(spec, horizon);
            }
            const AssumptionReport report = assumption_report(table, cps, s1_floor, s2_tol);
            print_assumption_report(report, std::cout);
            if (!out_path.empty()) {
                std::ostringstream csv;
                write_assumption_csv(report, csv);
                write_text(out_path, csv.str());
            }
            return 0;
        }

        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
