#include "pamg/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "pamg/error.hpp"

namespace pamg {

NormalizerTable::NormalizerTable(const GrowthTable& table) {
    const std::int64_t t_max = table.horizon() + 1;
    log_a_.assign(static_cast<std::size_t>(t_max) + 1, 0.0);
    long double acc = 0.0L; // extended precision keeps the recurrence tight
    for (std::int64_t t = 2; t <= t_max; ++t) {
        const std::int64_t j = t - 1;
        const auto Fj = static_cast<long double>(table.F(j));
        if (Fj > 0.0L)
            acc += std::log1p(static_cast<long double>(table.f(j)) / (2.0L * Fj));
        else if (table.f(j) != 0)
            throw DomainError("normalizer: f(j) > 0 with F(j) = 0 at j = " + std::to_string(j));
        log_a_[static_cast<std::size_t>(t)] = static_cast<double>(acc);
    }
}

double NormalizerTable::A(std::int64_t t) const {
    return std::exp(log_A(t));
}

double NormalizerTable::log_A(std::int64_t t) const {
    if (t < 1 || t > max_time())
        throw DomainError("normalizer: t = " + std::to_string(t) + " out of range");
    return log_a_[static_cast<std::size_t>(t)];
}

double mu_expected_increment(double d, double f, double F) {
    if (F <= 0.0)
        throw DomainError("mu: F must be > 0");
    return d * f / (2.0 * F);
}

double conditional_variance(double d, double f, double F) {
    if (F <= 0.0)
        throw DomainError("variance: F must be > 0");
    if (d < 0.0 || d > 2.0 * F)
        throw DomainError("variance: d outside [0, 2F]");
    const double p = d / (2.0 * F);
    return f * p * (1.0 - p);
}

double x_value(double d, double a) {
    if (a <= 0.0)
        throw DomainError("x_value: A must be > 0");
    return d / a;
}

bool sh_check(std::int64_t u_increment, std::int64_t t, double alpha) {
    if (!(alpha > 0.5 && alpha < 1.0))
        throw ConfigError("sh_check: alpha must lie in (1/2, 1)");
    if (t < 1)
        throw DomainError("sh_check: t must be >= 1");
    return static_cast<double>(u_increment) < std::pow(static_cast<double>(t), alpha);
}

std::vector<double> l2_accumulate(const Trajectory& traj, std::size_t tracked_index,
                                  const NormalizerTable& normalizer, const GrowthTable& table) {
    if (tracked_index >= traj.tracked.size())
        throw DomainError("l2_accumulate: tracked index out of range");
    std::vector<double> series;
    series.reserve(traj.records.size());
    double acc = 0.0;
    for (const auto& rec : traj.records) {
        const std::int64_t d = rec.degree_before[tracked_index];
        if (d >= 0 && rec.F_t > 0) {
            const double v = conditional_variance(static_cast<double>(d),
                                                  static_cast<double>(table.f(rec.t)),
                                                  static_cast<double>(rec.F_t));
            const double a1 = normalizer.A(rec.t + 1);
            acc += v / (a1 * a1);
        }
        series.push_back(acc);
    }
    return series;
}

double l2_value_at(const Trajectory& traj, std::span<const double> series, std::int64_t t) {
    if (series.size() != traj.records.size())
        throw DomainError("l2_value_at: series/record size mismatch");
    double value = 0.0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (traj.records[i].t > t)
            break;
        value = series[i];
    }
    return value;
}

std::int64_t count_sh_violations(const Trajectory& traj, std::size_t tracked_index, double alpha,
                                 std::int64_t t_min, std::int64_t t_max) {
    if (tracked_index >= traj.tracked.size())
        throw DomainError("count_sh_violations: tracked index out of range");
    std::int64_t violations = 0;
    for (const auto& rec : traj.records) {
        if (rec.t < t_min || rec.t > t_max || rec.degree_before[tracked_index] < 0)
            continue;
        if (!sh_check(rec.gained[tracked_index], rec.t, alpha))
            ++violations;
    }
    return violations;
}

double x_hat(const Trajectory& traj, std::size_t tracked_index, const NormalizerTable& normalizer) {
    if (tracked_index >= traj.tracked.size())
        throw DomainError("x_hat: tracked index out of range");
    const std::int64_t d = traj.final_degrees[tracked_index];
    if (d < 0)
        throw DomainError("x_hat: tracked node never existed");
    return x_value(static_cast<double>(d), normalizer.A(traj.final_time));
}

double XLimitSummary::quantile(double q) const {
    if (samples.empty())
        throw DomainError("quantile of empty summary");
    const double pos = q * static_cast<double>(samples.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, samples.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return samples[lo] * (1.0 - frac) + samples[hi] * frac;
}

double XLimitSummary::fraction_below(double threshold) const {
    if (samples.empty())
        return 0.0;
    const auto it = std::lower_bound(samples.begin(), samples.end(), threshold);
    return static_cast<double>(it - samples.begin()) / static_cast<double>(samples.size());
}

XLimitSummary summarize_x_samples(std::vector<double> samples) {
    if (samples.empty())
        throw DomainError("summarize_x_samples: empty");
    std::sort(samples.begin(), samples.end());
    XLimitSummary s;
    s.runs = samples.size();
    s.min = samples.front();
    s.max = samples.back();
    double sum = 0.0;
    for (const double v : samples)
        sum += v;
    s.mean = sum / static_cast<double>(samples.size());
    s.samples = std::move(samples);
    return s;
}

XLimitSummary estimate_x_limits(std::span<const Trajectory> trajectories,
                                std::size_t tracked_index, const NormalizerTable& normalizer) {
    if (trajectories.empty())
        throw DomainError("estimate_x_limits: no trajectories");
    const auto& first = trajectories.front();
    std::vector<double> samples;
    samples.reserve(trajectories.size());
    for (const auto& traj : trajectories) {
        if (traj.tracked != first.tracked || traj.final_time != first.final_time)
            throw DomainError("estimate_x_limits: mixed configurations in ensemble");
        samples.push_back(x_hat(traj, tracked_index, normalizer));
    }
    return summarize_x_samples(std::move(samples));
}

} // namespace pamg
