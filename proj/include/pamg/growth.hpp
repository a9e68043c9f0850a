#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pamg/rational.hpp"

namespace pamg {

/// Edge-growth function kinds. Every spec obeys the three structural
/// constraints of the process: f(0) = e', f(t) = 0 for 1 <= t <= v'-1,
/// and f(t) >= 1 for t >= v'.
enum class GrowthKind {
    Constant,        // f(t) = C for t >= v'
    LinearFloor,     // f(t) = max(1, floor(c*t)) for t >= v'
    PowerFloor,      // f(t) = max(1, floor(c*t^alpha)) for t >= v'
    PowerOfTwoSpike, // f(t) = t if t is a power of two else 1, for t >= v'
    Table,           // explicit values (also the result of xi_build)
};

struct GrowthSpec {
    GrowthKind kind = GrowthKind::Constant;
    std::int64_t constant_c = 1;          // Constant
    Rational coeff = Rational::from_int(1); // LinearFloor / PowerFloor c
    Rational power = Rational::from_int(1); // PowerFloor alpha, >= 0
    std::vector<std::int64_t> table;      // Table: f(t) for t = 0..table.size()-1
    std::int64_t e_prime = 1;             // f(0), edge count of the seed graph
    std::int64_t v_prime = 2;             // node count of the seed graph

    /// Checks parameter sanity (positivity, table consistency with the
    /// structural constraints). Throws ConfigError.
    void validate() const;

    static GrowthSpec constant(std::int64_t c, std::int64_t e_prime = 1, std::int64_t v_prime = 2);
    static GrowthSpec linear_floor(Rational c, std::int64_t e_prime = 1, std::int64_t v_prime = 2);
    static GrowthSpec power_floor(Rational c, Rational alpha, std::int64_t e_prime = 1,
                                  std::int64_t v_prime = 2);
    static GrowthSpec power_of_two_spike(std::int64_t e_prime = 1, std::int64_t v_prime = 2);
    static GrowthSpec from_table(std::vector<std::int64_t> values, std::int64_t v_prime);

    std::string kind_name() const;
};

/// f(t) for a single t. Table kind throws DomainError beyond the stored
/// range; analytic kinds evaluate for any t >= 0.
std::int64_t eval_f(const GrowthSpec& spec, std::int64_t t);

/// Prefix sums F(t) = sum_{i<t} f(i) cached to a horizon, exact in int64
/// (probabilities in the process are ratios of these integers, so no
/// floating point here). Immutable after construction.
class GrowthTable {
public:
    GrowthTable(GrowthSpec spec, std::int64_t horizon);

    const GrowthSpec& spec() const { return spec_; }
    std::int64_t horizon() const { return horizon_; }

    /// f(t), 0 <= t <= horizon.
    std::int64_t f(std::int64_t t) const;
    /// F(t) = sum_{i=0}^{t-1} f(i), 0 <= t <= horizon + 1.
    std::int64_t F(std::int64_t t) const;

    /// First s with F(s) > 0 (the assumption sums start here).
    std::int64_t first_positive_F() const { return first_positive_F_; }

private:
    GrowthSpec spec_;
    std::int64_t horizon_;
    std::int64_t first_positive_F_;
    std::vector<std::int64_t> f_;  // index 0..horizon
    std::vector<std::int64_t> F_;  // index 0..horizon+1
};

/// Integral of the step-function extension: on [s, s+1] the density is
/// f(s) and F is linear, so each unit interval contributes
/// ln(F(s+1)/F(s)) for beta = 1, else (F(s)^(1-beta)-F(s+1)^(1-beta))/(beta-1).
/// Integer endpoints only; pre: v' <= m <= t <= horizon and F(m) > 0.
double integral_f_over_F_pow(const GrowthTable& table, std::int64_t m, std::int64_t t, double beta);

/// Discrete side: sum_{s=m}^{t} f(s)/F(s)^beta (inclusive of t).
double sum_f_over_F_pow(const GrowthTable& table, std::int64_t m, std::int64_t t, double beta);

enum class S1Hint { Diverging, Inconclusive };
enum class S2Hint { Converging, Inconclusive };

/// Partial sums of S1 = sum f/F and S2 = sum (f/F)^2 with doubling
/// increments S(2T) - S(T). The verdict hints are heuristics with
/// configurable tolerances; no finite computation decides the infinite sums.
struct AssumptionReport {
    std::int64_t horizon = 0;
    std::vector<std::int64_t> checkpoints;
    std::vector<double> s1_partial;
    std::vector<double> s2_partial;
    std::vector<std::int64_t> doubling_T; // checkpoints T with 2T <= horizon
    std::vector<double> s1_doubling;      // S1(2T) - S1(T)
    std::vector<double> s2_doubling;
    S1Hint s1_hint = S1Hint::Inconclusive;
    S2Hint s2_hint = S2Hint::Inconclusive;
    double s1_floor = 0.1;  // last S1 doubling increment above this => diverging hint
    double s2_tol = 0.01;   // last S2 doubling increment below this => converging hint
};

AssumptionReport assumption_report(const GrowthTable& table, std::vector<std::int64_t> checkpoints,
                                   double s1_floor = 0.1, double s2_tol = 0.01);

/// Builds f from a positive rational sequence via f(0) = xi_0 and
/// f(t) = xi_0 * prod_{n=1}^{t-1}(xi_n + 1) * xi_t, validating that every
/// value is a positive integer and that F(t) = xi_0 * prod_{n<t}(xi_n + 1)
/// matches the prefix sums. Returns a Table spec (v' = 1: such f never
/// vanishes, so there is no zero stage). Throws DomainError naming the
/// first non-integer t.
GrowthSpec xi_build(const std::vector<Rational>& xi, std::int64_t horizon);

} // namespace pamg
