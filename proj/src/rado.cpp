#include "pamg/rado.hpp"

#include <algorithm>
#include <map>

#include <nlohmann/json.hpp>

#include "pamg/error.hpp"

namespace pamg {

void ERConfig::validate() const {
    if (nodes < 1)
        throw ConfigError("ergen: need at least one node");
    if (p_levels.empty())
        throw ConfigError("ergen: need at least one p level");
    for (const double p : p_levels)
        if (!(p > 0.0 && p < 1.0))
            throw ConfigError("ergen: every p must lie strictly in (0,1)");
    if (multiplicity_cap < 1)
        throw ConfigError("ergen: multiplicity cap must be >= 1");
}

double ERConfig::p_at(std::uint32_t level) const {
    return p_levels[std::min<std::size_t>(level, p_levels.size() - 1)];
}

Multigraph er_generate(const ERConfig& config, Rng& rng) {
    config.validate();
    Multigraph g = Multigraph::empty(config.nodes, StorageMode::Full);
    for (NodeId u = 1; u <= config.nodes; ++u) {
        for (NodeId v = u + 1; v <= config.nodes; ++v) {
            std::uint32_t k = 0;
            while (rng.unit_double() < config.p_at(k)) {
                ++k;
                if (k >= config.multiplicity_cap)
                    throw DomainError("ergen: multiplicity cap " +
                                      std::to_string(config.multiplicity_cap) + " reached for pair (" +
                                      std::to_string(u) + "," + std::to_string(v) + ")");
            }
            if (k > 0)
                g.add_edge_bundle(u, v, k);
        }
    }
    return g;
}

AxiomReport check_basic_axioms(const Multigraph& g) {
    AxiomReport rep;
    const NodeId n = g.node_count();
    for (NodeId u = 1; u <= n; ++u) {
        std::int64_t degree_from_adj = 0;
        for (const auto& [v, k] : g.neighbors(u)) {
            degree_from_adj += k;
            if (v == u) {
                rep.a1_ok = false;
                rep.violations.push_back("loop stored at node " + std::to_string(u));
                continue;
            }
            if (k == 0) {
                rep.a2_ok = false;
                rep.violations.push_back("zero multiplicity stored for (" + std::to_string(u) +
                                         "," + std::to_string(v) + ")");
            }
            rep.max_multiplicity = std::max(rep.max_multiplicity, k);
            // mirror entry must exist with the same multiplicity
            std::uint32_t mirror = 0;
            for (const auto& [w, kw] : g.neighbors(v))
                if (w == u) {
                    mirror = kw;
                    break;
                }
            if (mirror != k) {
                rep.a1_ok = false;
                rep.violations.push_back("asymmetric entry (" + std::to_string(u) + "," +
                                         std::to_string(v) + "): " + std::to_string(k) + " vs " +
                                         std::to_string(mirror));
            }
        }
        if (degree_from_adj != g.degree(u)) {
            rep.degrees_consistent = false;
            rep.violations.push_back("degree mismatch at node " + std::to_string(u));
        }
    }
    return rep;
}

std::vector<WitnessCoverageClass> witness_coverage(const Multigraph& g, std::uint32_t n_max,
                                                   std::uint32_t m_max, std::int64_t sample_count,
                                                   Rng& rng) {
    if (n_max < 1)
        throw ConfigError("witness_coverage: n_max must be >= 1");
    if (n_max > g.node_count())
        throw ConfigError("witness_coverage: n_max exceeds node count");

    std::map<std::pair<std::uint32_t, std::uint32_t>, WitnessCoverageClass> classes;
    std::vector<NodeId> chosen;
    for (std::int64_t s = 0; s < sample_count; ++s) {
        const auto n = static_cast<std::uint32_t>(rng.below(n_max) + 1);
        chosen.clear();
        while (chosen.size() < n) {
            const auto u = static_cast<NodeId>(rng.below(g.node_count()) + 1);
            if (std::find(chosen.begin(), chosen.end(), u) == chosen.end())
                chosen.push_back(u);
        }
        WitnessRequest req;
        std::uint32_t total = 0;
        for (const NodeId u : chosen) {
            const auto m = static_cast<std::uint32_t>(rng.below(m_max + 1));
            req.pairs.emplace_back(u, m);
            total += m;
        }
        auto& cls = classes[{n, total}];
        cls.request_size = n;
        cls.total_multiplicity = total;
        cls.sampled += 1;
        if (!g.witnesses_all(req).empty())
            cls.satisfied += 1;
    }

    std::vector<WitnessCoverageClass> out;
    out.reserve(classes.size());
    for (auto& [key, cls] : classes) {
        (void)key;
        out.push_back(cls);
    }
    return out;
}

bool verify_partial_iso(const Multigraph& g1, const Multigraph& g2, const PartialIso& iso) {
    const auto& pairs = iso.pairs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].first < 1 || pairs[i].first > g1.node_count() || pairs[i].second < 1 ||
            pairs[i].second > g2.node_count())
            return false;
        for (std::size_t j = i + 1; j < pairs.size(); ++j) {
            if (pairs[i].first == pairs[j].first || pairs[i].second == pairs[j].second)
                return false;
            if (g1.multiplicity(pairs[i].first, pairs[j].first) !=
                g2.multiplicity(pairs[i].second, pairs[j].second))
                return false;
        }
    }
    return true;
}

namespace {

/// Smallest node of `side` not yet in `used`, or 0 when exhausted.
NodeId least_unmapped(const Multigraph& side, const std::vector<bool>& used) {
    for (NodeId u = 1; u <= side.node_count(); ++u)
        if (!used[u])
            return u;
    return 0;
}

} // namespace

BackForthResult back_and_forth_extend(const Multigraph& g1, const Multigraph& g2, PartialIso start,
                                      std::int64_t steps) {
    if (steps < 0)
        throw DomainError("back_and_forth: steps must be >= 0");
    if (!verify_partial_iso(g1, g2, start))
        throw DomainError("back_and_forth: starting map is not a partial isomorphism");

    BackForthResult result;
    result.iso = std::move(start);
    std::vector<bool> used1(g1.node_count() + 1, false), used2(g2.node_count() + 1, false);
    for (const auto& [a, b] : result.iso.pairs) {
        used1[a] = true;
        used2[b] = true;
    }

    for (std::int64_t s = 0; s < steps; ++s) {
        const bool forward = (s % 2 == 0);
        const Multigraph& from = forward ? g1 : g2;
        const Multigraph& to = forward ? g2 : g1;
        auto& used_from = forward ? used1 : used2;
        auto& used_to = forward ? used2 : used1;

        const NodeId a = least_unmapped(from, used_from);
        if (a == 0)
            break; // source side exhausted; nothing left to extend

        // multiplicity vector of a against the mapped tuple, in pair order
        std::vector<std::uint32_t> vec;
        vec.reserve(result.iso.pairs.size());
        for (const auto& [p, q] : result.iso.pairs)
            vec.push_back(from.multiplicity(a, forward ? p : q));

        NodeId match = 0;
        for (NodeId b = 1; b <= to.node_count() && match == 0; ++b) {
            if (used_to[b])
                continue;
            bool ok = true;
            for (std::size_t i = 0; i < vec.size() && ok; ++i) {
                const NodeId image = forward ? result.iso.pairs[i].second : result.iso.pairs[i].first;
                ok = to.multiplicity(b, image) == vec[i];
            }
            if (ok)
                match = b;
        }
        if (match == 0) {
            result.success = false;
            result.failed_step = s;
            result.failed_forward = forward;
            result.unmatched_node = a;
            result.unmatched_vector = std::move(vec);
            return result;
        }
        used_from[a] = true;
        used_to[match] = true;
        result.iso.pairs.emplace_back(forward ? a : match, forward ? match : a);
    }
    result.success = true;
    return result;
}

namespace {

struct EmbedSearch {
    const Multigraph& host;
    const Multigraph& pattern;
    const std::vector<NodeId>& order; // pattern nodes, most-constrained first
    Rng& rng;
    std::int64_t budget;
    std::vector<NodeId> image;      // image[i] = host node for order[i]
    std::vector<bool> used;

    bool extend(std::size_t level) {
        if (level == order.size())
            return true;
        const NodeId p = order[level];
        std::vector<NodeId> candidates;
        candidates.reserve(host.node_count());
        for (NodeId h = 1; h <= host.node_count(); ++h)
            if (!used[h])
                candidates.push_back(h);
        shuffle_inplace(candidates, rng);
        for (const NodeId h : candidates) {
            if (budget <= 0)
                return false;
            --budget;
            bool ok = true;
            for (std::size_t i = 0; i < level && ok; ++i)
                ok = host.multiplicity(h, image[i]) == pattern.multiplicity(p, order[i]);
            if (!ok)
                continue;
            image[level] = h;
            used[h] = true;
            if (extend(level + 1))
                return true;
            used[h] = false;
        }
        return false;
    }
};

} // namespace

std::optional<std::vector<NodeId>> embed_multigraph(const Multigraph& host,
                                                    const Multigraph& pattern, Rng& rng,
                                                    std::int64_t attempt_budget) {
    if (pattern.node_count() > 8)
        throw ConfigError("embed: pattern bounded to 8 nodes");
    if (pattern.node_count() == 0)
        return std::vector<NodeId>{};
    if (pattern.node_count() > host.node_count())
        return std::nullopt;

    std::vector<NodeId> order(pattern.node_count());
    for (NodeId u = 1; u <= pattern.node_count(); ++u)
        order[u - 1] = u;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (pattern.degree(a) != pattern.degree(b))
            return pattern.degree(a) > pattern.degree(b);
        return a < b;
    });

    EmbedSearch search{host, pattern, order, rng, attempt_budget,
                       std::vector<NodeId>(order.size(), 0),
                       std::vector<bool>(host.node_count() + 1, false)};
    if (!search.extend(0))
        return std::nullopt;

    // report in pattern-node order 1..n
    std::vector<NodeId> mapping(pattern.node_count());
    for (std::size_t i = 0; i < order.size(); ++i)
        mapping[order[i] - 1] = search.image[i];
    return mapping;
}

bool verify_embedding(const Multigraph& host, const Multigraph& pattern,
                      const std::vector<NodeId>& mapping) {
    if (mapping.size() != pattern.node_count())
        return false;
    for (std::size_t i = 0; i < mapping.size(); ++i)
        for (std::size_t j = i + 1; j < mapping.size(); ++j) {
            if (mapping[i] == mapping[j])
                return false;
            if (host.multiplicity(mapping[i], mapping[j]) !=
                pattern.multiplicity(static_cast<NodeId>(i + 1), static_cast<NodeId>(j + 1)))
                return false;
        }
    return true;
}

std::string axiom_report_to_json(const AxiomReport& report) {
    nlohmann::json j;
    j["a1_ok"] = report.a1_ok;
    j["a2_ok"] = report.a2_ok;
    j["a3_ok"] = report.a3_ok;
    j["degrees_consistent"] = report.degrees_consistent;
    j["max_multiplicity"] = report.max_multiplicity;
    j["violations"] = report.violations;
    auto coverage = nlohmann::json::array();
    for (const auto& cls : report.a4_coverage) {
        coverage.push_back({{"request_size", cls.request_size},
                            {"total_multiplicity", cls.total_multiplicity},
                            {"sampled", cls.sampled},
                            {"satisfied", cls.satisfied}});
    }
    j["a4_coverage"] = coverage;
    return j.dump(2) + "\n";
}

std::string partial_iso_to_json(const BackForthResult& result) {
    nlohmann::json j;
    j["success"] = result.success;
    auto pairs = nlohmann::json::array();
    for (const auto& [a, b] : result.iso.pairs)
        pairs.push_back({a, b});
    j["pairs"] = pairs;
    if (!result.success) {
        j["failed_step"] = result.failed_step;
        j["failed_forward"] = result.failed_forward;
        j["unmatched_node"] = result.unmatched_node;
        j["unmatched_vector"] = result.unmatched_vector;
    }
    return j.dump(2) + "\n";
}

} // namespace pamg
