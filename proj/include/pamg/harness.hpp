#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pamg/martingale.hpp"
#include "pamg/multigraph.hpp"
#include "pamg/pa_engine.hpp"
#include "pamg/rado.hpp"

namespace pamg {

struct CheckpointSpec {
    enum class Kind { Geometric, Explicit };
    Kind kind = Kind::Geometric;
    double base = 0.0; // 0 => start at v' + 1
    double ratio = 1.3;
    std::vector<std::int64_t> explicit_list;

    /// Sorted distinct times in (t_start, horizon], horizon always included.
    std::vector<std::int64_t> materialize(std::int64_t t_start, std::int64_t horizon) const;
};

struct AnalysisFlags {
    bool martingale = false;
    bool l2 = false;
    bool sh = false;
    bool witness_curve = false;
    bool axiom_coverage = false;
};

struct AxiomCoverageParams {
    std::uint32_t n_max = 2;
    std::uint32_t m_max = 2;
    std::int64_t samples = 50;
};

struct ExperimentPlan {
    ProcessConfig process;
    std::int64_t run_count = 1;
    CheckpointSpec checkpoint_spec;
    std::vector<std::int64_t> checkpoints; // filled by finalize()
    std::vector<WitnessRequest> witness_requests;
    AnalysisFlags analyses;
    double alpha = 0.75;              // sh tail exponent, in (1/2, 1)
    std::int64_t sh_t_min = 1000;     // sh violations counted for t in [sh_t_min, horizon]
    AxiomCoverageParams axiom_params;
    std::uint64_t master_seed = 0;

    /// Materializes checkpoints and validates cross-field constraints
    /// (Full storage for witness analyses, tracked nodes for martingale
    /// statistics, alpha range). Throws ConfigError.
    void finalize(const GrowthTable& table);
};

struct NodeCheckpointStats {
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
};

struct EnsembleResult {
    std::int64_t runs = 0;
    std::vector<std::int64_t> checkpoints;
    std::vector<NodeId> tracked;

    // per request x checkpoint: number of runs with W[t] (latched, monotone)
    std::vector<std::vector<std::int64_t>> witness_satisfied_counts;
    // per tracked node x checkpoint
    std::vector<std::vector<NodeCheckpointStats>> x_stats;
    // deterministic per checkpoint: A(t), F(t), A/sqrt(F)
    std::vector<double> a_values;
    std::vector<std::int64_t> F_values;
    std::vector<double> a_over_sqrt_F;
    // per tracked node: total sh violations across runs in [sh_t_min, horizon]
    std::vector<std::int64_t> sh_violations;
    // per tracked node x run
    std::vector<std::vector<double>> x_hat_samples;
    std::vector<std::vector<double>> l2_final;   // l2 series value at T
    std::vector<std::vector<double>> l2_partial; // l2 series value at T/10
    // axiom coverage aggregated over runs' final graphs
    std::vector<WitnessCoverageClass> axiom_coverage;

    std::vector<std::uint64_t> run_seeds;
};

/// Executes run_count independent runs (seeds split from the master seed)
/// on a bounded worker pool; aggregation is a sequential fold in run-index
/// order, so scheduling cannot perturb any output byte. A failed run
/// poisons the whole ensemble with a named error.
EnsembleResult run_ensemble(const ExperimentPlan& plan, unsigned workers = 0);

/// Satisfaction fraction per checkpoint for one configured request;
/// nondecreasing by latching. Throws DomainError for an unknown index.
std::vector<double> witness_satisfaction_curve(const EnsembleResult& result,
                                               std::size_t request_index);

/// Writes result.json, curves.csv, martingale.csv, meta.json under out_dir.
/// Every byte except meta.json's generated_at is determined by (plan, seed).
void export_result(const EnsembleResult& result, const ExperimentPlan& plan,
                   const std::string& out_dir);

/// trajectory.csv + meta.json (+ graph.mg with keep_final_graph) for a
/// single run.
void export_single_run(const Trajectory& traj, const ExperimentPlan& plan,
                       const std::string& out_dir);

/// Normalizer table at the plan's checkpoints: t, A, F, A/sqrt(F).
void write_normalizer_csv(const GrowthTable& table, const NormalizerTable& normalizer,
                          const std::vector<std::int64_t>& checkpoints, std::ostream& out);

/// Plain-text assumption report (the CLI `assumptions` output).
void print_assumption_report(const AssumptionReport& report, std::ostream& out);
void write_assumption_csv(const AssumptionReport& report, std::ostream& out);

// --- config file surface (JSON) ---

ExperimentPlan plan_from_json_text(const std::string& text, const std::string& base_dir);
ExperimentPlan plan_from_json_file(const std::string& path);
GrowthSpec growth_spec_from_json_text(const std::string& text);
std::string plan_to_json(const ExperimentPlan& plan);

/// %.17g, enough digits to round-trip a double.
std::string fmt_double(double v);

} // namespace pamg
