#include "pamg/multigraph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pamg/error.hpp"

namespace pamg {

void WitnessRequest::validate() const {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first < 1)
            throw ConfigError("witness request: node ids start at 1");
        for (std::size_t j = i + 1; j < pairs.size(); ++j)
            if (pairs[i].first == pairs[j].first)
                throw ConfigError("witness request: duplicate node " +
                                  std::to_string(pairs[i].first));
    }
}

Multigraph Multigraph::empty(NodeId n, StorageMode mode) {
    Multigraph g;
    g.mode_ = mode;
    g.n_ = n;
    g.degrees_.assign(static_cast<std::size_t>(n) + 1, 0);
    if (mode == StorageMode::Full)
        g.adj_.resize(static_cast<std::size_t>(n) + 1);
    return g;
}

Multigraph Multigraph::seed(const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId v_prime) {
    if (v_prime < 1)
        throw ConfigError("seed: v_prime must be >= 1");
    Multigraph g = empty(v_prime, StorageMode::Full);
    for (const auto& [u, v] : edges) {
        if (u == v)
            throw ConfigError("seed: loop edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
        if (u < 1 || v < 1 || u > v_prime || v > v_prime)
            throw ConfigError("seed: edge endpoint outside 1..v'");
        g.add_edge_bundle(u, v, 1);
    }
    for (NodeId u = 1; u <= v_prime; ++u)
        if (g.degrees_[u] == 0)
            throw ConfigError("seed: node " + std::to_string(u) + " is isolated");
    return g;
}

void Multigraph::check_node(NodeId u) const {
    if (u < 1 || u > n_)
        throw DomainError("node " + std::to_string(u) + " out of range 1.." + std::to_string(n_));
}

void Multigraph::require_full(const char* op) const {
    if (mode_ != StorageMode::Full)
        throw UnsupportedError(std::string(op) + " unavailable in DegreesOnly mode");
}

std::int64_t Multigraph::degree(NodeId u) const {
    check_node(u);
    return degrees_[u];
}

std::uint32_t Multigraph::multiplicity(NodeId u, NodeId v) const {
    require_full("multiplicity");
    if (u == v)
        throw DomainError("multiplicity: loop query (" + std::to_string(u) + ")");
    check_node(u);
    check_node(v);
    const auto& row = adj_[u];
    const auto it = std::lower_bound(row.begin(), row.end(), v,
                                     [](const auto& e, NodeId key) { return e.first < key; });
    return (it != row.end() && it->first == v) ? it->second : 0;
}

NodeId Multigraph::add_node_with_endpoints(std::span<const NodeId> endpoints) {
    for (const NodeId u : endpoints)
        check_node(u);
    const NodeId w = ++n_;
    degrees_.push_back(static_cast<std::int64_t>(endpoints.size()));
    total_edges_ += static_cast<std::int64_t>(endpoints.size());

    if (mode_ == StorageMode::Full) {
        adj_.emplace_back();
        auto& row = adj_[w];
        std::vector<NodeId> sorted(endpoints.begin(), endpoints.end());
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size();) {
            std::size_t j = i;
            while (j < sorted.size() && sorted[j] == sorted[i])
                ++j;
            const auto mult = static_cast<std::uint32_t>(j - i);
            row.emplace_back(sorted[i], mult);
            // w exceeds every prior node id, so push_back keeps u's row sorted
            adj_[sorted[i]].emplace_back(w, mult);
            degrees_[sorted[i]] += mult;
            i = j;
        }
    } else {
        for (const NodeId u : endpoints)
            degrees_[u] += 1;
    }
    return w;
}

void Multigraph::add_edge_bundle(NodeId u, NodeId v, std::uint32_t k) {
    require_full("add_edge_bundle");
    if (u == v)
        throw DomainError("add_edge_bundle: loop edge");
    check_node(u);
    check_node(v);
    if (k == 0)
        return;
    const auto bump = [&](NodeId a, NodeId b) {
        auto& row = adj_[a];
        const auto it = std::lower_bound(row.begin(), row.end(), b,
                                         [](const auto& e, NodeId key) { return e.first < key; });
        if (it != row.end() && it->first == b)
            it->second += k;
        else
            row.insert(it, {b, k});
    };
    bump(u, v);
    bump(v, u);
    degrees_[u] += k;
    degrees_[v] += k;
    total_edges_ += k;
}

std::optional<NodeId> Multigraph::witness_satisfied(const WitnessRequest& w) const {
    require_full("witness_satisfied");
    w.validate();
    for (const auto& [u, m] : w.pairs) {
        (void)m;
        check_node(u);
    }
    for (NodeId v = 1; v <= n_; ++v) {
        bool ok = true;
        for (const auto& [u, m] : w.pairs) {
            if (v == u || multiplicity(v, u) != m) {
                ok = false;
                break;
            }
        }
        if (ok)
            return v;
    }
    return std::nullopt;
}

std::vector<NodeId> Multigraph::witnesses_all(const WitnessRequest& w) const {
    require_full("witnesses_all");
    w.validate();
    for (const auto& [u, m] : w.pairs) {
        (void)m;
        check_node(u);
    }
    std::vector<NodeId> out;
    for (NodeId v = 1; v <= n_; ++v) {
        bool ok = true;
        for (const auto& [u, m] : w.pairs) {
            if (v == u || multiplicity(v, u) != m) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(v);
    }
    return out;
}

std::span<const std::pair<NodeId, std::uint32_t>> Multigraph::neighbors(NodeId u) const {
    require_full("neighbors");
    check_node(u);
    return adj_[u];
}

std::uint32_t Multigraph::max_multiplicity() const {
    require_full("max_multiplicity");
    std::uint32_t best = 0;
    for (NodeId u = 1; u <= n_; ++u)
        for (const auto& [v, k] : adj_[u]) {
            (void)v;
            best = std::max(best, k);
        }
    return best;
}

void Multigraph::serialize(std::ostream& out) const {
    require_full("serialize");
    out << "nodes " << n_ << "\n";
    for (NodeId u = 1; u <= n_; ++u)
        for (const auto& [v, k] : adj_[u])
            if (v > u)
                out << u << " " << v << " " << k << "\n";
}

Multigraph Multigraph::deserialize(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;

    std::size_t n = 0;
    bool have_header = false;
    Multigraph g;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag) )
                continue; // blank leading line
            if (tag != "nodes")
                throw ParseError("expected 'nodes N' header", lineno);
            if (!(ls >> n))
                throw ParseError("bad node count", lineno);
            g = empty(static_cast<NodeId>(n), StorageMode::Full);
            have_header = true;
            continue;
        }
        std::uint64_t u = 0, v = 0, k = 0;
        if (!(ls >> u))
            continue; // blank line
        if (!(ls >> v >> k))
            throw ParseError("expected 'u v k'", lineno);
        std::string rest;
        if (ls >> rest)
            throw ParseError("trailing tokens", lineno);
        if (u == v)
            throw ParseError("loop edge " + std::to_string(u), lineno);
        if (u < 1 || v < 1 || u > n || v > n)
            throw ParseError("node id out of range", lineno);
        if (k < 1)
            throw ParseError("multiplicity must be >= 1", lineno);
        if (g.multiplicity(static_cast<NodeId>(u), static_cast<NodeId>(v)) != 0)
            throw ParseError("duplicate pair", lineno);
        g.add_edge_bundle(static_cast<NodeId>(u), static_cast<NodeId>(v),
                          static_cast<std::uint32_t>(k));
    }
    if (!have_header)
        throw ParseError("missing 'nodes N' header", lineno == 0 ? 1 : lineno);
    return g;
}

Multigraph Multigraph::to_degrees_only() const {
    require_full("to_degrees_only");
    Multigraph g;
    g.mode_ = StorageMode::DegreesOnly;
    g.n_ = n_;
    g.total_edges_ = total_edges_;
    g.degrees_ = degrees_;
    return g;
}

void Multigraph::unsafe_set_half_entry(NodeId u, NodeId v, std::uint32_t k) {
    require_full("unsafe_set_half_entry");
    check_node(u);
    auto& row = adj_[u];
    const auto it = std::lower_bound(row.begin(), row.end(), v,
                                     [](const auto& e, NodeId key) { return e.first < key; });
    if (it != row.end() && it->first == v)
        it->second = k;
    else
        row.insert(it, {v, k});
}

bool Multigraph::operator==(const Multigraph& other) const {
    return mode_ == other.mode_ && n_ == other.n_ && total_edges_ == other.total_edges_ &&
           degrees_ == other.degrees_ && adj_ == other.adj_;
}

} // namespace pamg
