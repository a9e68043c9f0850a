#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pamg/multigraph.hpp"
#include "pamg/rng.hpp"

namespace pamg {

/// Erdos-Renyi-style multigraph process: for each unordered pair the
/// multiplicity climbs through levels, surviving level k with probability
/// p_k, so P(mult >= k) = prod_{j<k} p_j. A list shorter than the levels
/// reached repeats its last entry. The cap aborts pathological climbs.
struct ERConfig {
    NodeId nodes = 0;
    std::vector<double> p_levels; // all strictly inside (0,1)
    std::uint32_t multiplicity_cap = 64;

    void validate() const;
    double p_at(std::uint32_t level) const;
};

Multigraph er_generate(const ERConfig& config, Rng& rng);

struct WitnessCoverageClass {
    std::uint32_t request_size = 0;       // number of (u_i, m_i) pairs
    std::uint32_t total_multiplicity = 0; // sum of m_i
    std::int64_t sampled = 0;
    std::int64_t satisfied = 0;
};

/// A finite graph can only approximate (A4), so coverage is reported as
/// satisfied fractions per request class, never as a boolean.
struct AxiomReport {
    bool a1_ok = true; // irreflexive + symmetric storage
    bool a2_ok = true; // multiplicity encoding well-formed (stored k >= 1)
    bool a3_ok = true; // finitary; trivially true on finite data
    bool degrees_consistent = true;
    std::uint32_t max_multiplicity = 0;
    std::vector<std::string> violations;
    std::vector<WitnessCoverageClass> a4_coverage;
};

/// Structural axioms (A0)-(A3). Failures land in report fields, not
/// exceptions; (A0) has no content under the multiplicity encoding.
AxiomReport check_basic_axioms(const Multigraph& g);

/// Samples witness requests with n in 1..n_max distinct nodes and
/// multiplicities in 0..m_max, grouping satisfaction by (n, sum m).
std::vector<WitnessCoverageClass> witness_coverage(const Multigraph& g, std::uint32_t n_max,
                                                   std::uint32_t m_max, std::int64_t sample_count,
                                                   Rng& rng);

/// Injective pair list (a_i -> b_i) that matches induced multiplicities:
/// mult_g1(a_i, a_j) == mult_g2(b_i, b_j) for all i, j.
struct PartialIso {
    std::vector<std::pair<NodeId, NodeId>> pairs;
};

bool verify_partial_iso(const Multigraph& g1, const Multigraph& g2, const PartialIso& iso);

struct BackForthResult {
    bool success = false;
    PartialIso iso; // extended as far as the walk got
    std::int64_t failed_step = -1;
    bool failed_forward = true;
    NodeId unmatched_node = 0;
    std::vector<std::uint32_t> unmatched_vector;
};

/// Alternating extension: even steps take the least-index unmapped node of
/// g1, compute its multiplicity vector against the mapped tuple, and match
/// the smallest node of g2 with the same vector against the image tuple;
/// odd steps swap roles. Deterministic (smallest-index witness).
BackForthResult back_and_forth_extend(const Multigraph& g1, const Multigraph& g2, PartialIso start,
                                      std::int64_t steps);

/// Induced-multiplicity-preserving injection pattern -> host found by
/// randomized backtracking. Every candidate assignment tried costs one unit
/// of budget; nullopt means "not found within budget", never "nonexistent".
/// Pattern is bounded to 8 nodes.
std::optional<std::vector<NodeId>> embed_multigraph(const Multigraph& host,
                                                    const Multigraph& pattern, Rng& rng,
                                                    std::int64_t attempt_budget);

/// Checks an embedding returned by embed_multigraph (exact induced match).
bool verify_embedding(const Multigraph& host, const Multigraph& pattern,
                      const std::vector<NodeId>& mapping);

std::string axiom_report_to_json(const AxiomReport& report);
std::string partial_iso_to_json(const BackForthResult& result);

} // namespace pamg
