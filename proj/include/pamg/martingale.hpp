#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pamg/growth.hpp"
#include "pamg/pa_engine.hpp"

namespace pamg {

/// Normalizer A(t) = prod_{j=1}^{t-1} (1 + f(j)/2F(j)), the denominator of
/// the degree martingale X_u(t) = d_u(t)/A(t). Stored as a log-sum and
/// exponentiated on demand (relative error budget ~1e-12 at desk horizons).
/// Immutable after build.
class NormalizerTable {
public:
    explicit NormalizerTable(const GrowthTable& table);

    /// A(t), 1 <= t <= max_time(). A(1) = 1 (empty product).
    double A(std::int64_t t) const;
    double log_A(std::int64_t t) const;
    std::int64_t max_time() const { return static_cast<std::int64_t>(log_a_.size()) - 1; }

private:
    std::vector<double> log_a_; // index t = 1..horizon+1 ([0] unused)
};

/// mu(t) = E(U(t+1) | d(t) = d) = d f / 2F.
double mu_expected_increment(double d, double f, double F);

/// V(U(t+1) | d(t) = d) = (d f / 2F)(1 - d / 2F); requires d <= 2F.
double conditional_variance(double d, double f, double F);

/// X = d / A.
double x_value(double d, double a);

/// Short-tail event: U < t^alpha with alpha in (1/2, 1) exclusive.
bool sh_check(std::int64_t u_increment, std::int64_t t, double alpha);

/// Running sum of V(U(t+1)|d(t)) / A(t+1)^2 along the realized path, one
/// entry per trajectory record. Bounded series <=> the martingale is
/// bounded in L2 at desk scale.
std::vector<double> l2_accumulate(const Trajectory& traj, std::size_t tracked_index,
                                  const NormalizerTable& normalizer, const GrowthTable& table);

/// l2 running-sum value at the largest record time <= t (0 before the first).
double l2_value_at(const Trajectory& traj, std::span<const double> series, std::int64_t t);

/// Steps t in [t_min, t_max] whose increment violates U(t+1) < t^alpha.
std::int64_t count_sh_violations(const Trajectory& traj, std::size_t tracked_index, double alpha,
                                 std::int64_t t_min, std::int64_t t_max);

/// Final-horizon martingale value d_u(T)/A(T), the per-run estimate of the
/// limit x_u (Doob gives no rate, so no extrapolation is attempted).
double x_hat(const Trajectory& traj, std::size_t tracked_index, const NormalizerTable& normalizer);

struct XLimitSummary {
    std::size_t runs = 0;
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    std::vector<double> samples; // sorted ascending

    double quantile(double q) const;
    double fraction_below(double threshold) const;
};

/// Ensemble summary of x_hat values for one tracked node. All trajectories
/// must share tracked nodes and final time.
XLimitSummary estimate_x_limits(std::span<const Trajectory> trajectories,
                                std::size_t tracked_index, const NormalizerTable& normalizer);

XLimitSummary summarize_x_samples(std::vector<double> samples);

} // namespace pamg
