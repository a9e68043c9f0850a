#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace pamg {

using NodeId = std::uint32_t;

/// (u_i, m_i) pairs: ask for a node joined to each u_i by exactly m_i
/// parallel edges (m_i = 0 means not adjacent to u_i).
struct WitnessRequest {
    std::vector<std::pair<NodeId, std::uint32_t>> pairs;

    /// Distinct u_i, all >= 1. Throws ConfigError.
    void validate() const;
};

enum class StorageMode { Full, DegreesOnly };

/// Finite loopless multigraph over nodes 1..n. Multiplicities are stored
/// per unordered pair (mirrored in both endpoint lists), never as per-edge
/// objects: edge identity and direction play no role in the model.
///
/// DegreesOnly drops the adjacency: with f(t) = Theta(t) the edge multiset
/// is Theta(t^2), infeasible to keep at t = 1e5, and the martingale
/// statistics need only degrees. Witness and multiplicity queries then
/// throw UnsupportedError.
class Multigraph {
public:
    /// Seed graph G' for a process run: nodes 1..v', the given edge
    /// multiset, no loops, no isolated nodes.
    static Multigraph seed(const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId v_prime);

    /// n isolated nodes (building block for generators and deserialize).
    static Multigraph empty(NodeId n, StorageMode mode);

    NodeId node_count() const { return n_; }
    std::int64_t total_edges() const { return total_edges_; }
    StorageMode storage_mode() const { return mode_; }
    std::int64_t degree(NodeId u) const;
    std::span<const std::int64_t> degrees() const { return {degrees_.data() + 1, n_}; }

    /// Number of parallel edges between distinct u, v; symmetric.
    std::uint32_t multiplicity(NodeId u, NodeId v) const;

    /// Appends node n+1 joined to the given endpoints (repeats raise the
    /// multiplicity). Returns the new id. Endpoints must be existing nodes.
    NodeId add_node_with_endpoints(std::span<const NodeId> endpoints);

    /// Adds k parallel edges between existing distinct nodes u, v.
    void add_edge_bundle(NodeId u, NodeId v, std::uint32_t k);

    /// Smallest node v outside {u_i} with multiplicity(v, u_i) = m_i for
    /// every i, or nullopt.
    std::optional<NodeId> witness_satisfied(const WitnessRequest& w) const;

    /// All witnesses, ascending.
    std::vector<NodeId> witnesses_all(const WitnessRequest& w) const;

    /// Sorted neighbor list of u: (neighbor, multiplicity).
    std::span<const std::pair<NodeId, std::uint32_t>> neighbors(NodeId u) const;

    std::uint32_t max_multiplicity() const;

    /// Text format: "nodes N" then "u v k" lines (u < v, k >= 1) in
    /// lexicographic order. The interchange format between CLI subcommands.
    void serialize(std::ostream& out) const;
    static Multigraph deserialize(std::istream& in);

    /// Drops adjacency, keeping degrees (Full -> DegreesOnly only).
    Multigraph to_degrees_only() const;

    /// Writes one directed half-entry without touching the mirror or the
    /// degree bookkeeping. Exists so tests can inject storage corruption
    /// that check_basic_axioms must detect. Never called by library code.
    void unsafe_set_half_entry(NodeId u, NodeId v, std::uint32_t k);

    bool operator==(const Multigraph& other) const;

private:
    Multigraph() = default;
    void require_full(const char* op) const;
    void check_node(NodeId u) const;

    StorageMode mode_ = StorageMode::Full;
    NodeId n_ = 0;
    std::int64_t total_edges_ = 0;
    std::vector<std::int64_t> degrees_; // index 1..n ([0] unused)
    // adj_[u] sorted by neighbor id; empty vector when DegreesOnly.
    std::vector<std::vector<std::pair<NodeId, std::uint32_t>>> adj_;
};

} // namespace pamg
