#include "pamg/pa_engine.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <boost/multiprecision/cpp_int.hpp>

#include "pamg/error.hpp"

namespace mp = boost::multiprecision;

namespace pamg {

void ProcessConfig::validate(const GrowthTable& table) const {
    const auto& g = table.spec();
    if (horizon > table.horizon())
        throw ConfigError("process: horizon beyond growth table");
    if (seed_graph.node_count() != static_cast<NodeId>(g.v_prime))
        throw ConfigError("process: seed graph has " + std::to_string(seed_graph.node_count()) +
                          " nodes, growth spec says v' = " + std::to_string(g.v_prime));
    if (seed_graph.total_edges() != g.e_prime)
        throw ConfigError("process: seed graph has " + std::to_string(seed_graph.total_edges()) +
                          " edges, growth spec says e' = " + std::to_string(g.e_prime));
    for (const NodeId u : tracked_nodes)
        if (u < 1 || static_cast<std::int64_t>(u) > horizon)
            throw ConfigError("process: tracked node " + std::to_string(u) +
                              " never exists before the horizon");
    if (variant == Variant::GPA) {
        for (std::int64_t t = g.v_prime; t < horizon; ++t)
            if (table.f(t) > t)
                throw ConfigError("process: GPA infeasible, f(" + std::to_string(t) + ") = " +
                                  std::to_string(table.f(t)) + " > t");
    }
}

void Trajectory::to_csv(std::ostream& out) const {
    out << "t,f_t,F_t";
    for (const NodeId u : tracked)
        out << ",d_" << u << ",U_" << u;
    out << "\n";
    for (const auto& r : records) {
        out << r.t << "," << r.f_t << "," << r.F_t;
        for (std::size_t i = 0; i < tracked.size(); ++i) {
            if (r.degree_before[i] < 0)
                out << ",,";
            else
                out << "," << r.degree_before[i] << "," << r.gained[i];
        }
        out << "\n";
    }
}

std::vector<NodeId> sample_endpoints_with_replacement(const FenwickTree& sampler, std::size_t k,
                                                      Rng& rng) {
    const std::int64_t total = sampler.total();
    if (total <= 0)
        throw DomainError("sample: graph has zero total degree");
    std::vector<NodeId> out;
    out.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const auto w = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
        out.push_back(static_cast<NodeId>(sampler.find_by_weight(w)) + 1);
    }
    return out;
}

std::vector<NodeId> sample_endpoints_without_replacement(FenwickTree& sampler, std::size_t k,
                                                         std::size_t node_count, Rng& rng) {
    if (k > node_count)
        throw DomainError("sample without replacement: k = " + std::to_string(k) +
                          " exceeds node count " + std::to_string(node_count));
    std::vector<NodeId> out;
    out.reserve(k);
    std::vector<std::int64_t> removed;
    removed.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        const std::int64_t total = sampler.total();
        if (total <= 0)
            throw DomainError("sample without replacement: no positive weights left");
        const auto w = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
        const std::size_t idx = sampler.find_by_weight(w);
        const std::int64_t weight = sampler.value(idx);
        out.push_back(static_cast<NodeId>(idx) + 1);
        removed.push_back(weight);
        sampler.add(idx, -weight);
    }
    for (std::size_t j = 0; j < k; ++j)
        sampler.add(out[j] - 1, removed[j]);
    return out;
}

ProcessState::ProcessState(const ProcessConfig& cfg, std::shared_ptr<const GrowthTable> table)
    : table_(std::move(table)),
      variant_(cfg.variant),
      horizon_(cfg.horizon),
      rng_(cfg.rng_seed),
      keep_final_graph_(cfg.keep_final_graph) {
    cfg.validate(*table_);
    t_ = cfg.seed_graph.node_count();
    graph_ = cfg.storage == StorageMode::Full ? cfg.seed_graph : cfg.seed_graph.to_degrees_only();
    traj_.tracked = cfg.tracked_nodes;
    traj_.start_time = t_;
    init_sampler();
}

ProcessState::ProcessState(std::shared_ptr<const GrowthTable> table, Variant variant,
                           const Multigraph& g, std::int64_t horizon, std::uint64_t rng_seed,
                           std::vector<NodeId> tracked, bool keep_final_graph)
    : table_(std::move(table)),
      variant_(variant),
      horizon_(horizon),
      t_(g.node_count()),
      graph_(g),
      rng_(rng_seed),
      keep_final_graph_(keep_final_graph) {
    if (horizon_ > table_->horizon())
        throw ConfigError("process: horizon beyond growth table");
    if (graph_.total_edges() != table_->F(t_))
        throw ConfigError("process: resume graph has " + std::to_string(graph_.total_edges()) +
                          " edges, F(" + std::to_string(t_) + ") = " +
                          std::to_string(table_->F(t_)));
    traj_.tracked = std::move(tracked);
    traj_.start_time = t_;
    init_sampler();
}

void ProcessState::init_sampler() {
    sampler_ = FenwickTree(static_cast<std::size_t>(std::max<std::int64_t>(horizon_, t_)));
    const auto degs = graph_.degrees();
    for (std::size_t i = 0; i < degs.size(); ++i)
        if (degs[i] != 0)
            sampler_.add(i, degs[i]);
}

void ProcessState::step() {
    const std::int64_t t = t_;
    if (t >= horizon_)
        throw DomainError("step: already at horizon t = " + std::to_string(t));
    const std::int64_t k64 = table_->f(t);
    const auto k = static_cast<std::size_t>(k64);
    if (variant_ == Variant::GPA && k64 > t)
        throw DomainError("step: GPA infeasible at t = " + std::to_string(t));

    endpoint_buf_.clear();
    if (k > 0) {
        endpoint_buf_ = variant_ == Variant::MPA
                            ? sample_endpoints_with_replacement(sampler_, k, rng_)
                            : sample_endpoints_without_replacement(
                                  sampler_, k, static_cast<std::size_t>(t), rng_);
    }

    if (!traj_.tracked.empty()) {
        StepRecord rec;
        rec.t = t;
        rec.f_t = k64;
        rec.F_t = table_->F(t);
        rec.degree_before.reserve(traj_.tracked.size());
        rec.gained.reserve(traj_.tracked.size());
        for (const NodeId u : traj_.tracked) {
            if (static_cast<std::int64_t>(u) <= t) {
                rec.degree_before.push_back(graph_.degree(u));
                rec.gained.push_back(
                    std::count(endpoint_buf_.begin(), endpoint_buf_.end(), u));
            } else {
                rec.degree_before.push_back(-1);
                rec.gained.push_back(0);
            }
        }
        traj_.records.push_back(std::move(rec));
    }

    const NodeId w = graph_.add_node_with_endpoints(endpoint_buf_);
    for (const NodeId u : endpoint_buf_)
        sampler_.add(u - 1, 1);
    sampler_.add(w - 1, k64);
    t_ = t + 1;

    if (sampler_.total() != 2 * table_->F(t_))
        throw DomainError("step: degree sum diverged from 2F(t) at t = " + std::to_string(t_));
}

void ProcessState::run_to(std::int64_t t) {
    if (t > horizon_)
        throw DomainError("run_to: target beyond horizon");
    while (t_ < t)
        step();
}

Trajectory ProcessState::finish() {
    traj_.final_time = t_;
    traj_.final_total_edges = graph_.total_edges();
    traj_.final_degrees.clear();
    for (const NodeId u : traj_.tracked)
        traj_.final_degrees.push_back(static_cast<std::int64_t>(u) <= t_ ? graph_.degree(u) : -1);
    if (keep_final_graph_)
        traj_.final_graph = std::move(graph_);
    return std::move(traj_);
}

Trajectory run(const ProcessConfig& cfg) {
    auto table = std::make_shared<const GrowthTable>(cfg.growth, cfg.horizon);
    return run(cfg, std::move(table));
}

Trajectory run(const ProcessConfig& cfg, std::shared_ptr<const GrowthTable> table,
               std::optional<std::uint64_t> seed_override) {
    ProcessConfig local = cfg;
    if (seed_override)
        local.rng_seed = *seed_override;
    ProcessState state(local, std::move(table));
    state.run_to(local.horizon);
    return state.finish();
}

namespace {

double step_distribution_lgamma(std::span<const std::int64_t> degrees, std::int64_t f,
                                std::int64_t F, std::span<const std::int64_t> m,
                                std::int64_t m_sum, std::int64_t d_sum) {
    const double twoF = 2.0 * static_cast<double>(F);
    double lg = std::lgamma(static_cast<double>(f) + 1.0) -
                std::lgamma(static_cast<double>(f - m_sum) + 1.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        lg -= std::lgamma(static_cast<double>(m[i]) + 1.0);
        if (m[i] > 0) {
            if (degrees[i] == 0)
                return 0.0;
            lg += static_cast<double>(m[i]) * std::log(static_cast<double>(degrees[i]) / twoF);
        }
    }
    if (f > m_sum) {
        if (d_sum == 2 * F)
            return 0.0; // q = 0 with leftover draws
        lg += static_cast<double>(f - m_sum) *
              std::log1p(-static_cast<double>(d_sum) / twoF);
    }
    return std::exp(lg);
}

double step_distribution_rational(std::span<const std::int64_t> degrees, std::int64_t f,
                                  std::int64_t F, std::span<const std::int64_t> m,
                                  std::int64_t m_sum, std::int64_t d_sum) {
    const auto rational_pow = [](const mp::cpp_rational& base, std::int64_t e) {
        mp::cpp_rational acc = 1;
        for (std::int64_t i = 0; i < e; ++i)
            acc *= base;
        return acc;
    };
    mp::cpp_int coeff = 1;
    for (std::int64_t i = 2; i <= f; ++i)
        coeff *= i;
    const auto divide_factorial = [&coeff](std::int64_t n) {
        for (std::int64_t i = 2; i <= n; ++i)
            coeff /= i;
    };
    for (const auto mi : m)
        divide_factorial(mi);
    divide_factorial(f - m_sum);

    const mp::cpp_int twoF = 2 * mp::cpp_int(F);
    mp::cpp_rational prob(coeff);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (degrees[i] == 0)
            return 0.0;
        prob *= rational_pow(mp::cpp_rational(degrees[i], twoF), m[i]);
    }
    if (f > m_sum) {
        if (d_sum == 2 * F)
            return 0.0;
        prob *= rational_pow(mp::cpp_rational(twoF - d_sum, twoF), f - m_sum);
    }
    return prob.convert_to<double>();
}

} // namespace

double step_distribution_exact(std::span<const std::int64_t> degrees, std::int64_t f,
                               std::int64_t F, std::span<const std::int64_t> m) {
    if (degrees.size() != m.size())
        throw DomainError("step_distribution: degrees/m size mismatch");
    if (F <= 0)
        throw DomainError("step_distribution: F must be > 0");
    if (f < 0)
        throw DomainError("step_distribution: f must be >= 0");
    std::int64_t m_sum = 0, d_sum = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] < 0)
            throw DomainError("step_distribution: negative m");
        if (degrees[i] < 0)
            throw DomainError("step_distribution: negative degree");
        m_sum += m[i];
        d_sum += degrees[i];
    }
    if (d_sum > 2 * F)
        throw DomainError("step_distribution: sum of p_i exceeds 1");
    if (m_sum > f)
        return 0.0;
    if (f <= 64)
        return step_distribution_rational(degrees, f, F, m, m_sum, d_sum);
    return step_distribution_lgamma(degrees, f, F, m, m_sum, d_sum);
}

} // namespace pamg
