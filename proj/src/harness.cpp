#include "pamg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "pamg/error.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace pamg {

static constexpr const char* kToolVersion = "0.1.0";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::int64_t> CheckpointSpec::materialize(std::int64_t t_start,
                                                      std::int64_t horizon) const {
    std::vector<std::int64_t> out;
    if (kind == Kind::Explicit) {
        out = explicit_list;
    } else {
        double t = base > 0.0 ? base : static_cast<double>(t_start + 1);
        if (ratio <= 1.0)
            throw ConfigError("checkpoints: geometric ratio must be > 1");
        while (true) {
            const auto tick = static_cast<std::int64_t>(std::ceil(t));
            if (tick > horizon)
                break;
            out.push_back(tick);
            t *= ratio;
        }
    }
    out.push_back(horizon);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    for (const auto cp : out)
        if (cp < t_start || cp > horizon)
            throw ConfigError("checkpoints: " + std::to_string(cp) + " outside [start, horizon]");
    return out;
}

void ExperimentPlan::finalize(const GrowthTable& table) {
    process.validate(table);
    if (run_count < 1)
        throw ConfigError("plan: runs must be >= 1");
    checkpoints = checkpoint_spec.materialize(table.spec().v_prime, process.horizon);
    for (auto& req : witness_requests) {
        req.validate();
        for (const auto& [u, m] : req.pairs) {
            (void)m;
            if (static_cast<std::int64_t>(u) > process.horizon)
                throw ConfigError("plan: witness request node " + std::to_string(u) +
                                  " never exists before the horizon");
        }
    }
    const bool needs_full = analyses.witness_curve || analyses.axiom_coverage;
    if (needs_full && process.storage != StorageMode::Full)
        throw ConfigError("plan: witness_curve/axiom_coverage need full storage");
    const bool needs_tracked = analyses.martingale || analyses.l2 || analyses.sh;
    if (needs_tracked && process.tracked_nodes.empty())
        throw ConfigError("plan: martingale/l2/sh analyses need tracked nodes");
    if (analyses.sh && !(alpha > 0.5 && alpha < 1.0))
        throw ConfigError("plan: alpha must lie in (1/2, 1)");
    if (analyses.witness_curve && witness_requests.empty())
        throw ConfigError("plan: witness_curve analysis without witness requests");
}

namespace {

struct RunOutcome {
    std::uint64_t seed = 0;
    std::vector<std::int64_t> satisfied_at;     // per request; -1 = not yet
    std::vector<std::vector<double>> x_at;      // [tracked][checkpoint], NaN before birth
    std::vector<double> x_hat;                  // [tracked]
    std::vector<std::int64_t> sh_violations;    // [tracked]
    std::vector<double> l2_final, l2_partial;   // [tracked]
    std::vector<WitnessCoverageClass> coverage; // final-graph axiom coverage
};

RunOutcome execute_run(const ExperimentPlan& plan, const std::shared_ptr<const GrowthTable>& table,
                       const NormalizerTable* normalizer, std::int64_t run_index) {
    RunOutcome out;
    out.seed = Rng::stream_seed(plan.master_seed, static_cast<std::uint64_t>(run_index));

    ProcessConfig cfg = plan.process;
    cfg.rng_seed = out.seed;
    ProcessState state(cfg, table);

    const std::size_t n_tracked = plan.process.tracked_nodes.size();
    const std::size_t n_cp = plan.checkpoints.size();
    out.satisfied_at.assign(plan.witness_requests.size(), -1);
    out.x_at.assign(n_tracked, std::vector<double>(n_cp, std::numeric_limits<double>::quiet_NaN()));

    for (std::size_t ci = 0; ci < n_cp; ++ci) {
        const std::int64_t cp = plan.checkpoints[ci];
        state.run_to(cp);

        if (plan.analyses.witness_curve) {
            for (std::size_t r = 0; r < plan.witness_requests.size(); ++r) {
                if (out.satisfied_at[r] >= 0)
                    continue; // latched: W[t] => W[t'] for t' >= t
                const auto& req = plan.witness_requests[r];
                bool active = true;
                for (const auto& [u, m] : req.pairs) {
                    (void)m;
                    if (u > state.graph().node_count())
                        active = false;
                }
                if (active && state.graph().witness_satisfied(req))
                    out.satisfied_at[r] = cp;
            }
        }
        if (plan.analyses.martingale && normalizer) {
            for (std::size_t ui = 0; ui < n_tracked; ++ui) {
                const NodeId u = plan.process.tracked_nodes[ui];
                if (static_cast<std::int64_t>(u) <= cp)
                    out.x_at[ui][ci] = x_value(static_cast<double>(state.graph().degree(u)),
                                               normalizer->A(cp));
            }
        }
    }

    if (plan.analyses.axiom_coverage) {
        Rng cov_rng(Rng::stream_seed(out.seed, 0x436f7665u)); // independent sub-stream
        out.coverage = witness_coverage(state.graph(), plan.axiom_params.n_max,
                                        plan.axiom_params.m_max, plan.axiom_params.samples,
                                        cov_rng);
    }

    const Trajectory traj = state.finish();
    if (normalizer) {
        for (std::size_t ui = 0; ui < n_tracked; ++ui)
            out.x_hat.push_back(x_hat(traj, ui, *normalizer));
    }
    if (plan.analyses.l2 && normalizer) {
        for (std::size_t ui = 0; ui < n_tracked; ++ui) {
            const auto series = l2_accumulate(traj, ui, *normalizer, *table);
            out.l2_final.push_back(series.empty() ? 0.0 : series.back());
            out.l2_partial.push_back(l2_value_at(traj, series, plan.process.horizon / 10));
        }
    }
    if (plan.analyses.sh) {
        for (std::size_t ui = 0; ui < n_tracked; ++ui)
            out.sh_violations.push_back(
                count_sh_violations(traj, ui, plan.alpha, plan.sh_t_min, plan.process.horizon));
    }
    return out;
}

} // namespace

EnsembleResult run_ensemble(const ExperimentPlan& plan, unsigned workers) {
    auto table = std::make_shared<const GrowthTable>(plan.process.growth, plan.process.horizon);
    ExperimentPlan local = plan;
    local.finalize(*table);

    const bool needs_normalizer =
        local.analyses.martingale || local.analyses.l2 || !local.process.tracked_nodes.empty();
    std::unique_ptr<NormalizerTable> normalizer;
    if (needs_normalizer)
        normalizer = std::make_unique<NormalizerTable>(*table);

    const auto n_runs = static_cast<std::size_t>(local.run_count);
    std::vector<RunOutcome> outcomes(n_runs);
    std::vector<std::string> failures(n_runs);

    unsigned n_workers = workers != 0 ? workers : std::thread::hardware_concurrency();
    n_workers = std::max(1u, std::min<unsigned>(n_workers, static_cast<unsigned>(n_runs)));

    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_runs)
                return;
            try {
                outcomes[i] = execute_run(local, table, normalizer.get(),
                                          static_cast<std::int64_t>(i));
            } catch (const std::exception& e) {
                failures[i] = e.what();
            }
        }
    };
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }
    for (std::size_t i = 0; i < n_runs; ++i)
        if (!failures[i].empty())
            throw Error("ensemble: run " + std::to_string(i) + " failed: " + failures[i]);

    // Sequential fold in run-index order.
    EnsembleResult res;
    res.runs = local.run_count;
    res.checkpoints = local.checkpoints;
    res.tracked = local.process.tracked_nodes;

    const std::size_t n_cp = local.checkpoints.size();
    const std::size_t n_tracked = res.tracked.size();

    for (std::size_t ci = 0; ci < n_cp; ++ci) {
        const std::int64_t cp = local.checkpoints[ci];
        const double a = normalizer ? normalizer->A(cp) : 0.0;
        const auto F = table->F(cp);
        res.a_values.push_back(a);
        res.F_values.push_back(F);
        res.a_over_sqrt_F.push_back(F > 0 ? a / std::sqrt(static_cast<double>(F)) : 0.0);
    }

    res.witness_satisfied_counts.assign(local.witness_requests.size(),
                                        std::vector<std::int64_t>(n_cp, 0));
    for (std::size_t r = 0; r < local.witness_requests.size(); ++r)
        for (std::size_t ci = 0; ci < n_cp; ++ci) {
            std::int64_t count = 0;
            for (const auto& o : outcomes)
                if (o.satisfied_at[r] >= 0 && o.satisfied_at[r] <= local.checkpoints[ci])
                    ++count;
            res.witness_satisfied_counts[r][ci] = count;
        }

    res.x_stats.assign(n_tracked, std::vector<NodeCheckpointStats>(n_cp));
    if (local.analyses.martingale) {
        for (std::size_t ui = 0; ui < n_tracked; ++ui)
            for (std::size_t ci = 0; ci < n_cp; ++ci) {
                double sum = 0.0, sum2 = 0.0;
                double lo = std::numeric_limits<double>::infinity(), hi = -lo;
                std::int64_t n = 0;
                for (const auto& o : outcomes) {
                    const double x = o.x_at[ui][ci];
                    if (std::isnan(x))
                        continue;
                    sum += x;
                    sum2 += x * x;
                    lo = std::min(lo, x);
                    hi = std::max(hi, x);
                    ++n;
                }
                auto& st = res.x_stats[ui][ci];
                if (n > 0) {
                    st.mean = sum / static_cast<double>(n);
                    st.min = lo;
                    st.max = hi;
                    if (n > 1) {
                        const double var =
                            (sum2 - sum * sum / static_cast<double>(n)) / static_cast<double>(n - 1);
                        st.stddev = var > 0.0 ? std::sqrt(var) : 0.0;
                    }
                }
            }
    }

    res.sh_violations.assign(n_tracked, 0);
    res.x_hat_samples.assign(n_tracked, {});
    res.l2_final.assign(n_tracked, {});
    res.l2_partial.assign(n_tracked, {});
    for (const auto& o : outcomes) {
        res.run_seeds.push_back(o.seed);
        for (std::size_t ui = 0; ui < n_tracked; ++ui) {
            if (!o.x_hat.empty())
                res.x_hat_samples[ui].push_back(o.x_hat[ui]);
            if (!o.l2_final.empty()) {
                res.l2_final[ui].push_back(o.l2_final[ui]);
                res.l2_partial[ui].push_back(o.l2_partial[ui]);
            }
            if (!o.sh_violations.empty())
                res.sh_violations[ui] += o.sh_violations[ui];
        }
    }

    if (local.analyses.axiom_coverage) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, WitnessCoverageClass> merged;
        for (const auto& o : outcomes)
            for (const auto& cls : o.coverage) {
                auto& agg = merged[{cls.request_size, cls.total_multiplicity}];
                agg.request_size = cls.request_size;
                agg.total_multiplicity = cls.total_multiplicity;
                agg.sampled += cls.sampled;
                agg.satisfied += cls.satisfied;
            }
        for (auto& [key, cls] : merged) {
            (void)key;
            res.axiom_coverage.push_back(cls);
        }
    }
    return res;
}

std::vector<double> witness_satisfaction_curve(const EnsembleResult& result,
                                               std::size_t request_index) {
    if (request_index >= result.witness_satisfied_counts.size())
        throw DomainError("witness_satisfaction_curve: unknown request index");
    std::vector<double> out;
    out.reserve(result.checkpoints.size());
    for (const auto count : result.witness_satisfied_counts[request_index])
        out.push_back(static_cast<double>(count) / static_cast<double>(result.runs));
    return out;
}

void write_normalizer_csv(const GrowthTable& table, const NormalizerTable& normalizer,
                          const std::vector<std::int64_t>& checkpoints, std::ostream& out) {
    out << "t,A,F,A_over_sqrtF\n";
    for (const auto t : checkpoints) {
        const double a = normalizer.A(t);
        const auto F = table.F(t);
        const double ratio = F > 0 ? a / std::sqrt(static_cast<double>(F)) : 0.0;
        out << t << "," << fmt_double(a) << "," << F << "," << fmt_double(ratio) << "\n";
    }
}

void print_assumption_report(const AssumptionReport& report, std::ostream& out) {
    out << "T,S1,S2,S1_doubling,S2_doubling\n";
    for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
        out << report.checkpoints[i] << "," << fmt_double(report.s1_partial[i]) << ","
            << fmt_double(report.s2_partial[i]);
        const auto it = std::find(report.doubling_T.begin(), report.doubling_T.end(),
                                  report.checkpoints[i]);
        if (it != report.doubling_T.end()) {
            const auto di = static_cast<std::size_t>(it - report.doubling_T.begin());
            out << "," << fmt_double(report.s1_doubling[di]) << ","
                << fmt_double(report.s2_doubling[di]);
        } else {
            out << ",,";
        }
        out << "\n";
    }
    out << "# S1 hint: "
        << (report.s1_hint == S1Hint::Diverging ? "diverging" : "inconclusive")
        << " (last doubling increment vs floor " << fmt_double(report.s1_floor) << ")\n";
    out << "# S2 hint: "
        << (report.s2_hint == S2Hint::Converging ? "converging" : "inconclusive")
        << " (last doubling increment vs tolerance " << fmt_double(report.s2_tol) << ")\n";
    out << "# hints are heuristics, not proofs: the assumptions concern infinite sums\n";
}

void write_assumption_csv(const AssumptionReport& report, std::ostream& out) {
    print_assumption_report(report, out);
}

// --- JSON config surface ---

namespace {

Rational rational_from_json(const json& j, const char* field) {
    if (j.is_string())
        return parse_rational(j.get<std::string>());
    if (j.is_number_integer())
        return Rational::from_int(j.get<std::int64_t>());
    throw ConfigError(std::string("config: ") + field +
                      " must be an integer or an exact decimal/ratio string");
}

double alpha_from_json(const json& j) {
    if (j.is_string())
        return parse_rational(j.get<std::string>()).to_double();
    if (j.is_number())
        return j.get<double>();
    throw ConfigError("config: alpha must be a number or rational string");
}

GrowthSpec growth_from_json(const json& g, std::int64_t default_horizon) {
    const std::string kind = g.at("kind").get<std::string>();
    const auto e_prime = g.value("e_prime", std::int64_t{1});
    const auto v_prime = g.value("v_prime", std::int64_t{2});
    if (kind == "constant")
        return GrowthSpec::constant(g.at("c").get<std::int64_t>(), e_prime, v_prime);
    if (kind == "linear_floor")
        return GrowthSpec::linear_floor(rational_from_json(g.at("c"), "c"), e_prime, v_prime);
    if (kind == "power_floor")
        return GrowthSpec::power_floor(rational_from_json(g.at("c"), "c"),
                                       rational_from_json(g.at("alpha"), "alpha"), e_prime,
                                       v_prime);
    if (kind == "power_of_two_spike")
        return GrowthSpec::power_of_two_spike(e_prime, v_prime);
    if (kind == "table")
        return GrowthSpec::from_table(g.at("values").get<std::vector<std::int64_t>>(),
                                      g.value("v_prime", std::int64_t{1}));
    if (kind == "xi_product") {
        std::vector<Rational> xi;
        for (const auto& x : g.at("xi"))
            xi.push_back(rational_from_json(x, "xi"));
        const auto horizon = g.value("horizon", default_horizon);
        if (horizon < 0)
            throw ConfigError("config: xi_product needs a horizon");
        return xi_build(xi, horizon);
    }
    throw ConfigError("config: unknown growth kind '" + kind + "'");
}

Multigraph seed_from_json(const json& s, std::int64_t v_prime, const std::string& base_dir) {
    if (s.contains("path")) {
        fs::path p = s.at("path").get<std::string>();
        if (p.is_relative() && !base_dir.empty())
            p = fs::path(base_dir) / p;
        std::ifstream in(p);
        if (!in)
            throw ConfigError("config: cannot open seed graph file " + p.string());
        return Multigraph::deserialize(in);
    }
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (const auto& e : s.at("edges"))
        edges.emplace_back(e.at(0).get<NodeId>(), e.at(1).get<NodeId>());
    const auto n = s.value("v_prime", v_prime);
    return Multigraph::seed(edges, static_cast<NodeId>(n));
}

} // namespace

GrowthSpec growth_spec_from_json_text(const std::string& text) {
    return growth_from_json(json::parse(text), -1);
}

ExperimentPlan plan_from_json_text(const std::string& text, const std::string& base_dir) {
    const json j = json::parse(text);
    ExperimentPlan plan;

    const std::string variant = j.value("variant", std::string("mpa"));
    if (variant == "mpa")
        plan.process.variant = Variant::MPA;
    else if (variant == "gpa")
        plan.process.variant = Variant::GPA;
    else
        throw ConfigError("config: variant must be 'mpa' or 'gpa'");

    plan.process.horizon = j.at("horizon").get<std::int64_t>();
    plan.process.growth = growth_from_json(j.at("growth"), plan.process.horizon);
    plan.process.seed_graph =
        seed_from_json(j.at("seed_graph"), plan.process.growth.v_prime, base_dir);
    plan.process.rng_seed = j.value("seed", std::uint64_t{0});
    plan.master_seed = plan.process.rng_seed;
    plan.process.tracked_nodes = j.value("tracked_nodes", std::vector<NodeId>{});
    plan.process.keep_final_graph = j.value("keep_final_graph", false);

    const std::string storage = j.value("storage", std::string("degrees_only"));
    if (storage == "full")
        plan.process.storage = StorageMode::Full;
    else if (storage == "degrees_only")
        plan.process.storage = StorageMode::DegreesOnly;
    else
        throw ConfigError("config: storage must be 'full' or 'degrees_only'");

    plan.run_count = j.value("runs", std::int64_t{1});

    if (j.contains("checkpoints")) {
        const auto& c = j.at("checkpoints");
        if (c.is_array()) {
            plan.checkpoint_spec.kind = CheckpointSpec::Kind::Explicit;
            plan.checkpoint_spec.explicit_list = c.get<std::vector<std::int64_t>>();
        } else {
            const std::string kind = c.value("kind", std::string("geometric"));
            if (kind == "geometric") {
                plan.checkpoint_spec.kind = CheckpointSpec::Kind::Geometric;
                plan.checkpoint_spec.base = c.value("base", 0.0);
                plan.checkpoint_spec.ratio = c.value("ratio", 1.3);
            } else if (kind == "explicit") {
                plan.checkpoint_spec.kind = CheckpointSpec::Kind::Explicit;
                plan.checkpoint_spec.explicit_list = c.at("list").get<std::vector<std::int64_t>>();
            } else {
                throw ConfigError("config: checkpoint kind must be geometric or explicit");
            }
        }
    }

    if (j.contains("witnesses")) {
        for (const auto& w : j.at("witnesses")) {
            WitnessRequest req;
            for (const auto& pair : w)
                req.pairs.emplace_back(pair.at(0).get<NodeId>(), pair.at(1).get<std::uint32_t>());
            plan.witness_requests.push_back(std::move(req));
        }
    }

    if (j.contains("analyses")) {
        for (const auto& a : j.at("analyses")) {
            const std::string name = a.get<std::string>();
            if (name == "martingale")
                plan.analyses.martingale = true;
            else if (name == "l2")
                plan.analyses.l2 = true;
            else if (name == "sh")
                plan.analyses.sh = true;
            else if (name == "witness_curve")
                plan.analyses.witness_curve = true;
            else if (name == "axiom_coverage")
                plan.analyses.axiom_coverage = true;
            else
                throw ConfigError("config: unknown analysis '" + name + "'");
        }
    }

    if (j.contains("alpha"))
        plan.alpha = alpha_from_json(j.at("alpha"));
    plan.sh_t_min = j.value("sh_t_min", std::int64_t{1000});
    if (j.contains("axiom_coverage")) {
        const auto& ac = j.at("axiom_coverage");
        plan.axiom_params.n_max = ac.value("n_max", 2u);
        plan.axiom_params.m_max = ac.value("m_max", 2u);
        plan.axiom_params.samples = ac.value("samples", std::int64_t{50});
    }
    return plan;
}

ExperimentPlan plan_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config: cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return plan_from_json_text(buf.str(), fs::path(path).parent_path().string());
}

namespace {

json growth_to_json(const GrowthSpec& g) {
    json j;
    j["kind"] = g.kind_name();
    j["e_prime"] = g.e_prime;
    j["v_prime"] = g.v_prime;
    switch (g.kind) {
    case GrowthKind::Constant:
        j["c"] = g.constant_c;
        break;
    case GrowthKind::LinearFloor:
        j["c"] = to_string(g.coeff);
        break;
    case GrowthKind::PowerFloor:
        j["c"] = to_string(g.coeff);
        j["alpha"] = to_string(g.power);
        break;
    case GrowthKind::PowerOfTwoSpike:
        break;
    case GrowthKind::Table:
        j["values"] = g.table;
        break;
    }
    return j;
}

json plan_to_json_impl(const ExperimentPlan& plan) {
    json j;
    j["variant"] = plan.process.variant == Variant::MPA ? "mpa" : "gpa";
    j["growth"] = growth_to_json(plan.process.growth);
    j["seed_graph"] = {{"nodes", plan.process.seed_graph.node_count()},
                       {"edges", plan.process.seed_graph.total_edges()}};
    j["horizon"] = plan.process.horizon;
    j["runs"] = plan.run_count;
    j["storage"] = plan.process.storage == StorageMode::Full ? "full" : "degrees_only";
    j["tracked_nodes"] = plan.process.tracked_nodes;
    j["checkpoints"] = plan.checkpoints;
    auto witnesses = json::array();
    for (const auto& req : plan.witness_requests) {
        auto pairs = json::array();
        for (const auto& [u, m] : req.pairs)
            pairs.push_back({u, m});
        witnesses.push_back(pairs);
    }
    j["witnesses"] = witnesses;
    auto analyses = json::array();
    if (plan.analyses.martingale)
        analyses.push_back("martingale");
    if (plan.analyses.l2)
        analyses.push_back("l2");
    if (plan.analyses.sh)
        analyses.push_back("sh");
    if (plan.analyses.witness_curve)
        analyses.push_back("witness_curve");
    if (plan.analyses.axiom_coverage)
        analyses.push_back("axiom_coverage");
    j["analyses"] = analyses;
    j["alpha"] = plan.alpha;
    j["sh_t_min"] = plan.sh_t_min;
    j["seed"] = plan.master_seed;
    return j;
}

json meta_json(const ExperimentPlan& plan) {
    json meta;
    meta["tool"] = "pamg";
    meta["version"] = kToolVersion;
    meta["generator"] = Rng::generator_name;
    meta["seed_split"] = "splitmix64(splitmix64(master) ^ (run_index+1)*phi64)";
    meta["master_seed"] = plan.master_seed;
    meta["plan"] = plan_to_json_impl(plan);
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&now));
    meta["generated_at"] = buf; // the only nondeterministic byte in any output
    return meta;
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("cannot write " + path.string());
    out << content;
}

} // namespace

std::string plan_to_json(const ExperimentPlan& plan) {
    return plan_to_json_impl(plan).dump(2) + "\n";
}

void export_result(const EnsembleResult& result, const ExperimentPlan& plan,
                   const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);

    json j;
    j["runs"] = result.runs;
    j["checkpoints"] = result.checkpoints;
    j["tracked_nodes"] = result.tracked;
    {
        auto requests = json::array();
        for (std::size_t r = 0; r < result.witness_satisfied_counts.size(); ++r) {
            json req;
            auto pairs = json::array();
            for (const auto& [u, m] : plan.witness_requests[r].pairs)
                pairs.push_back({u, m});
            req["request"] = pairs;
            req["satisfied_counts"] = result.witness_satisfied_counts[r];
            auto fractions = json::array();
            for (const auto c : result.witness_satisfied_counts[r])
                fractions.push_back(static_cast<double>(c) / static_cast<double>(result.runs));
            req["fractions"] = fractions;
            requests.push_back(req);
        }
        j["witnesses"] = requests;
    }
    {
        auto nodes = json::array();
        for (std::size_t ui = 0; ui < result.tracked.size(); ++ui) {
            json node;
            node["node"] = result.tracked[ui];
            auto stats = json::array();
            for (const auto& st : result.x_stats[ui])
                stats.push_back({{"mean", st.mean},
                                 {"stddev", st.stddev},
                                 {"min", st.min},
                                 {"max", st.max}});
            node["x_stats"] = stats;
            if (!result.x_hat_samples[ui].empty()) {
                const auto summary = summarize_x_samples(result.x_hat_samples[ui]);
                node["x_hat"] = {{"min", summary.min},
                                 {"max", summary.max},
                                 {"mean", summary.mean},
                                 {"q001", summary.quantile(0.001)},
                                 {"q01", summary.quantile(0.01)},
                                 {"q05", summary.quantile(0.05)},
                                 {"median", summary.quantile(0.5)}};
                node["x_hat_samples"] = result.x_hat_samples[ui];
            }
            if (!result.l2_final[ui].empty()) {
                node["l2_final"] = result.l2_final[ui];
                node["l2_partial"] = result.l2_partial[ui];
            }
            if (!result.sh_violations.empty())
                node["sh_violations"] = result.sh_violations[ui];
            nodes.push_back(node);
        }
        j["nodes"] = nodes;
    }
    j["A"] = result.a_values;
    j["F"] = result.F_values;
    j["A_over_sqrtF"] = result.a_over_sqrt_F;
    if (!result.axiom_coverage.empty()) {
        auto coverage = json::array();
        for (const auto& cls : result.axiom_coverage)
            coverage.push_back({{"request_size", cls.request_size},
                                {"total_multiplicity", cls.total_multiplicity},
                                {"sampled", cls.sampled},
                                {"satisfied", cls.satisfied}});
        j["axiom_coverage"] = coverage;
    }
    j["run_seeds"] = result.run_seeds;
    write_file(dir / "result.json", j.dump(2) + "\n");

    std::ostringstream curves;
    curves << "t,request_id,fraction\n";
    for (std::size_t r = 0; r < result.witness_satisfied_counts.size(); ++r)
        for (std::size_t ci = 0; ci < result.checkpoints.size(); ++ci)
            curves << result.checkpoints[ci] << "," << r << ","
                   << fmt_double(static_cast<double>(result.witness_satisfied_counts[r][ci]) /
                                 static_cast<double>(result.runs))
                   << "\n";
    write_file(dir / "curves.csv", curves.str());

    std::ostringstream mart;
    mart << "t,A,F,A_over_sqrtF,node,x_mean,x_stddev,x_min,x_max\n";
    for (std::size_t ci = 0; ci < result.checkpoints.size(); ++ci) {
        if (result.tracked.empty()) {
            mart << result.checkpoints[ci] << "," << fmt_double(result.a_values[ci]) << ","
                 << result.F_values[ci] << "," << fmt_double(result.a_over_sqrt_F[ci])
                 << ",,,,,\n";
            continue;
        }
        for (std::size_t ui = 0; ui < result.tracked.size(); ++ui) {
            const auto& st = result.x_stats[ui][ci];
            mart << result.checkpoints[ci] << "," << fmt_double(result.a_values[ci]) << ","
                 << result.F_values[ci] << "," << fmt_double(result.a_over_sqrt_F[ci]) << ","
                 << result.tracked[ui] << "," << fmt_double(st.mean) << ","
                 << fmt_double(st.stddev) << "," << fmt_double(st.min) << ","
                 << fmt_double(st.max) << "\n";
        }
    }
    write_file(dir / "martingale.csv", mart.str());

    write_file(dir / "meta.json", meta_json(plan).dump(2) + "\n");
}

void export_single_run(const Trajectory& traj, const ExperimentPlan& plan,
                       const std::string& out_dir) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    std::ostringstream csv;
    traj.to_csv(csv);
    write_file(dir / "trajectory.csv", csv.str());
    write_file(dir / "meta.json", meta_json(plan).dump(2) + "\n");
    if (traj.final_graph) {
        std::ostringstream mg;
        traj.final_graph->serialize(mg);
        write_file(dir / "graph.mg", mg.str());
    }
}

} // namespace pamg
