#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "pamg/fenwick.hpp"
#include "pamg/growth.hpp"
#include "pamg/multigraph.hpp"
#include "pamg/rng.hpp"

namespace pamg {

/// MPA: endpoints drawn with replacement (multigraph limit).
/// GPA: endpoints drawn without replacement (simple graph), viable only
/// while f(t) <= t.
enum class Variant { MPA, GPA };

struct ProcessConfig {
    Variant variant = Variant::MPA;
    GrowthSpec growth;
    Multigraph seed_graph = Multigraph::empty(0, StorageMode::Full);
    std::int64_t horizon = 0; // T: run steps t = v'..T-1, ending with T nodes
    std::uint64_t rng_seed = 0;
    std::vector<NodeId> tracked_nodes;
    StorageMode storage = StorageMode::DegreesOnly;
    bool keep_final_graph = false;

    /// Seed graph must have v' nodes and e' edges; GPA needs f(t) <= t on
    /// the whole run. Throws ConfigError.
    void validate(const GrowthTable& table) const;
};

/// One row per executed step: state of the tracked nodes at time t plus
/// the increments U(t+1) they received. degree_before is -1 until the
/// node exists (node u is part of G(t) iff u <= t).
struct StepRecord {
    std::int64_t t = 0;
    std::int64_t f_t = 0;
    std::int64_t F_t = 0;
    std::vector<std::int64_t> degree_before;
    std::vector<std::int64_t> gained;
};

struct Trajectory {
    std::vector<NodeId> tracked;
    std::vector<StepRecord> records;
    std::int64_t start_time = 0;
    std::int64_t final_time = 0;
    std::int64_t final_total_edges = 0;
    std::vector<std::int64_t> final_degrees; // tracked nodes at final_time
    std::optional<Multigraph> final_graph;

    /// Columns: t, f_t, F_t, then d_<u>, U_<u> per tracked node.
    void to_csv(std::ostream& out) const;
};

/// k independent draws, each node u with probability d_u/2F (degrees
/// frozen for the whole batch; the tree is not modified).
std::vector<NodeId> sample_endpoints_with_replacement(const FenwickTree& sampler, std::size_t k,
                                                      Rng& rng);

/// k distinct nodes via successive sampling: each draw proportional to
/// degree among not-yet-chosen nodes (weights temporarily zeroed, restored
/// before returning). Throws DomainError when k exceeds node_count.
std::vector<NodeId> sample_endpoints_without_replacement(FenwickTree& sampler, std::size_t k,
                                                         std::size_t node_count, Rng& rng);

/// The evolving process. One instance is strictly sequential; run
/// separate instances in parallel for ensembles.
class ProcessState {
public:
    ProcessState(const ProcessConfig& cfg, std::shared_ptr<const GrowthTable> table);

    /// Resumes from an arbitrary graph state G(t0) with t0 = g.node_count();
    /// the continuation draws from a fresh RNG stream.
    ProcessState(std::shared_ptr<const GrowthTable> table, Variant variant, const Multigraph& g,
                 std::int64_t horizon, std::uint64_t rng_seed, std::vector<NodeId> tracked,
                 bool keep_final_graph = false);

    /// Executes stage t -> t+1: samples f(t) endpoints per variant, appends
    /// node t+1, updates the degree tree, records tracked increments, and
    /// asserts sum(degrees) == 2 F(t+1).
    void step();

    void run_to(std::int64_t t);

    std::int64_t time() const { return t_; }
    std::int64_t horizon() const { return horizon_; }
    const Multigraph& graph() const { return graph_; }
    const GrowthTable& table() const { return *table_; }

    /// Finalizes and moves the trajectory out; the state is spent afterwards.
    Trajectory finish();

private:
    void init_sampler();

    std::shared_ptr<const GrowthTable> table_;
    Variant variant_ = Variant::MPA;
    std::int64_t horizon_ = 0;
    std::int64_t t_ = 0;
    Multigraph graph_ = Multigraph::empty(0, StorageMode::Full);
    FenwickTree sampler_{0};
    Rng rng_{0};
    bool keep_final_graph_ = false;
    Trajectory traj_;
    std::vector<NodeId> endpoint_buf_;
};

/// Whole run: steps from t = v' to T. Deterministic given (config, seed).
Trajectory run(const ProcessConfig& cfg);
Trajectory run(const ProcessConfig& cfg, std::shared_ptr<const GrowthTable> table,
               std::optional<std::uint64_t> seed_override = std::nullopt);

/// Exact multinomial probability that tracked nodes with degrees d receive
/// exactly m new edges in one MPA stage with f draws and cumulative edge
/// count F:
///   P(U = m) = f!/(m_1!..m_n!(f-s)!) * q^(f-s) * prod p_i^(m_i),
/// p_i = d_i/2F, q = 1 - sum p_i, s = sum m_i. Exact rational arithmetic
/// for f <= 64, log-gamma otherwise (relative error < 1e-9).
/// sum m_i > f returns 0; sum d_i > 2F is an invariant violation.
double step_distribution_exact(std::span<const std::int64_t> degrees, std::int64_t f,
                               std::int64_t F, std::span<const std::int64_t> m);

} // namespace pamg
