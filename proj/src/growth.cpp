#include "pamg/growth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "pamg/error.hpp"

namespace mp = boost::multiprecision;

namespace pamg {

namespace {

bool is_power_of_two(std::int64_t t) {
    return t > 0 && (t & (t - 1)) == 0;
}

/// Exact floor(c * t^alpha) for rational c = a/b, alpha = p/q:
/// k <= (a/b) t^(p/q)  <=>  (k b)^q <= a^q t^p. A long-double estimate is
/// corrected with exact big-integer comparisons so boundary cases
/// (c * t^alpha an exact integer) never misround.
std::int64_t power_floor_value(const Rational& c, const Rational& alpha, std::int64_t t) {
    const std::int64_t a = c.num, b = c.den;
    if (alpha.num == 0)
        return a / b;
    const auto p = static_cast<unsigned>(alpha.num);
    const auto q = static_cast<unsigned>(alpha.den);

    const long double est =
        static_cast<long double>(a) / static_cast<long double>(b) *
        std::pow(static_cast<long double>(t), static_cast<long double>(alpha.num) / alpha.den);
    std::int64_t k = est < 0 ? 0 : static_cast<std::int64_t>(est);

    const mp::cpp_int rhs = mp::pow(mp::cpp_int(a), q) * mp::pow(mp::cpp_int(t), p);
    const auto fits = [&](std::int64_t kk) {
        if (kk <= 0)
            return true;
        return mp::pow(mp::cpp_int(kk) * b, q) <= rhs;
    };
    while (!fits(k))
        --k;
    while (fits(k + 1))
        ++k;
    return k;
}

std::int64_t to_checked_int64(const mp::cpp_int& v, std::int64_t t, const char* what) {
    if (v > std::numeric_limits<std::int64_t>::max())
        throw DomainError(std::string(what) + " exceeds 64-bit range at t=" + std::to_string(t));
    return static_cast<std::int64_t>(v);
}

} // namespace

void GrowthSpec::validate() const {
    if (v_prime < 1)
        throw ConfigError("growth: v_prime must be >= 1");
    if (e_prime < 0)
        throw ConfigError("growth: e_prime must be >= 0");
    switch (kind) {
    case GrowthKind::Constant:
        if (constant_c < 1)
            throw ConfigError("growth: constant C must be >= 1");
        break;
    case GrowthKind::LinearFloor:
        if (!coeff.positive())
            throw ConfigError("growth: linear_floor c must be > 0");
        break;
    case GrowthKind::PowerFloor:
        if (!coeff.positive())
            throw ConfigError("growth: power_floor c must be > 0");
        if (power.num < 0)
            throw ConfigError("growth: power_floor alpha must be >= 0");
        break;
    case GrowthKind::PowerOfTwoSpike:
        break;
    case GrowthKind::Table: {
        if (table.empty())
            throw ConfigError("growth: empty table");
        if (table[0] != e_prime)
            throw ConfigError("growth: table[0] must equal e_prime");
        for (std::size_t t = 1; t < table.size(); ++t) {
            const auto ti = static_cast<std::int64_t>(t);
            if (table[t] < 0)
                throw ConfigError("growth: negative table value at t=" + std::to_string(t));
            if (ti <= v_prime - 1 && table[t] != 0)
                throw ConfigError("growth: f(t) must be 0 for 1 <= t <= v'-1, t=" + std::to_string(t));
            if (ti >= v_prime && table[t] < 1)
                throw ConfigError("growth: f(t) must be >= 1 for t >= v', t=" + std::to_string(t));
        }
        break;
    }
    }
}

GrowthSpec GrowthSpec::constant(std::int64_t c, std::int64_t e_prime, std::int64_t v_prime) {
    GrowthSpec s;
    s.kind = GrowthKind::Constant;
    s.constant_c = c;
    s.e_prime = e_prime;
    s.v_prime = v_prime;
    s.validate();
    return s;
}

GrowthSpec GrowthSpec::linear_floor(Rational c, std::int64_t e_prime, std::int64_t v_prime) {
    GrowthSpec s;
    s.kind = GrowthKind::LinearFloor;
    s.coeff = c;
    s.e_prime = e_prime;
    s.v_prime = v_prime;
    s.validate();
    return s;
}

GrowthSpec GrowthSpec::power_floor(Rational c, Rational alpha, std::int64_t e_prime,
                                   std::int64_t v_prime) {
    GrowthSpec s;
    s.kind = GrowthKind::PowerFloor;
    s.coeff = c;
    s.power = alpha;
    s.e_prime = e_prime;
    s.v_prime = v_prime;
    s.validate();
    return s;
}

GrowthSpec GrowthSpec::power_of_two_spike(std::int64_t e_prime, std::int64_t v_prime) {
    GrowthSpec s;
    s.kind = GrowthKind::PowerOfTwoSpike;
    s.e_prime = e_prime;
    s.v_prime = v_prime;
    s.validate();
    return s;
}

GrowthSpec GrowthSpec::from_table(std::vector<std::int64_t> values, std::int64_t v_prime) {
    GrowthSpec s;
    s.kind = GrowthKind::Table;
    s.e_prime = values.empty() ? 0 : values[0];
    s.v_prime = v_prime;
    s.table = std::move(values);
    s.validate();
    return s;
}

std::string GrowthSpec::kind_name() const {
    switch (kind) {
    case GrowthKind::Constant: return "constant";
    case GrowthKind::LinearFloor: return "linear_floor";
    case GrowthKind::PowerFloor: return "power_floor";
    case GrowthKind::PowerOfTwoSpike: return "power_of_two_spike";
    case GrowthKind::Table: return "table";
    }
    return "?";
}

std::int64_t eval_f(const GrowthSpec& spec, std::int64_t t) {
    if (t < 0)
        throw DomainError("eval_f: t must be >= 0");
    if (spec.kind == GrowthKind::Table) {
        if (static_cast<std::size_t>(t) >= spec.table.size())
            throw DomainError("eval_f: t=" + std::to_string(t) + " beyond stored table range");
        return spec.table[static_cast<std::size_t>(t)];
    }
    if (t == 0)
        return spec.e_prime;
    if (t <= spec.v_prime - 1)
        return 0;
    switch (spec.kind) {
    case GrowthKind::Constant:
        return spec.constant_c;
    case GrowthKind::LinearFloor:
        return std::max<std::int64_t>(1, power_floor_value(spec.coeff, Rational::from_int(1), t));
    case GrowthKind::PowerFloor:
        return std::max<std::int64_t>(1, power_floor_value(spec.coeff, spec.power, t));
    case GrowthKind::PowerOfTwoSpike:
        return is_power_of_two(t) ? t : 1;
    case GrowthKind::Table:
        break; // handled above
    }
    throw DomainError("eval_f: unknown growth kind");
}

GrowthTable::GrowthTable(GrowthSpec spec, std::int64_t horizon) : spec_(std::move(spec)), horizon_(horizon) {
    spec_.validate();
    if (horizon_ < 0)
        throw ConfigError("growth table: horizon must be >= 0");
    if (spec_.kind == GrowthKind::Table &&
        static_cast<std::size_t>(horizon_) >= spec_.table.size())
        throw ConfigError("growth table: horizon beyond stored table range");

    f_.resize(static_cast<std::size_t>(horizon_) + 1);
    F_.resize(static_cast<std::size_t>(horizon_) + 2);
    F_[0] = 0;
    first_positive_F_ = horizon_ + 2;
    for (std::int64_t t = 0; t <= horizon_; ++t) {
        const std::int64_t ft = eval_f(spec_, t);
        f_[static_cast<std::size_t>(t)] = ft;
        std::int64_t next = 0;
        if (__builtin_add_overflow(F_[static_cast<std::size_t>(t)], ft, &next))
            throw DomainError("growth table: F overflows 64 bits at t=" + std::to_string(t));
        F_[static_cast<std::size_t>(t) + 1] = next;
        if (first_positive_F_ > horizon_ + 1 && F_[static_cast<std::size_t>(t)] > 0)
            first_positive_F_ = t;
    }
    if (first_positive_F_ > horizon_ + 1 && F_[static_cast<std::size_t>(horizon_) + 1] > 0)
        first_positive_F_ = horizon_ + 1;
}

std::int64_t GrowthTable::f(std::int64_t t) const {
    if (t < 0 || t > horizon_)
        throw DomainError("f(t): t=" + std::to_string(t) + " out of table range");
    return f_[static_cast<std::size_t>(t)];
}

std::int64_t GrowthTable::F(std::int64_t t) const {
    if (t < 0 || t > horizon_ + 1)
        throw DomainError("F(t): t=" + std::to_string(t) + " out of table range");
    return F_[static_cast<std::size_t>(t)];
}

namespace {

void check_integral_range(const GrowthTable& table, std::int64_t m, std::int64_t t) {
    if (m > t)
        throw DomainError("integral/sum: m > t");
    if (m < table.spec().v_prime)
        throw DomainError("integral/sum: m below v'");
    if (t > table.horizon())
        throw DomainError("integral/sum: t beyond horizon");
    if (table.F(m) == 0)
        throw DomainError("integral/sum: F(m) = 0");
}

} // namespace

double integral_f_over_F_pow(const GrowthTable& table, std::int64_t m, std::int64_t t, double beta) {
    check_integral_range(table, m, t);
    double acc = 0.0;
    for (std::int64_t s = m; s < t; ++s) {
        const auto Fs = static_cast<double>(table.F(s));
        const auto fs = static_cast<double>(table.f(s));
        if (fs == 0.0)
            continue;
        if (beta == 1.0) {
            acc += std::log1p(fs / Fs);
        } else {
            const auto Fs1 = static_cast<double>(table.F(s + 1));
            acc += (std::pow(Fs, 1.0 - beta) - std::pow(Fs1, 1.0 - beta)) / (beta - 1.0);
        }
    }
    return acc;
}

double sum_f_over_F_pow(const GrowthTable& table, std::int64_t m, std::int64_t t, double beta) {
    check_integral_range(table, m, t);
    double acc = 0.0;
    for (std::int64_t s = m; s <= t; ++s) {
        const auto Fs = static_cast<double>(table.F(s));
        const auto fs = static_cast<double>(table.f(s));
        acc += fs / std::pow(Fs, beta);
    }
    return acc;
}

AssumptionReport assumption_report(const GrowthTable& table, std::vector<std::int64_t> checkpoints,
                                   double s1_floor, double s2_tol) {
    std::sort(checkpoints.begin(), checkpoints.end());
    checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
    if (checkpoints.empty())
        throw ConfigError("assumption_report: no checkpoints");
    for (const auto cp : checkpoints)
        if (cp < table.spec().v_prime || cp > table.horizon())
            throw ConfigError("assumption_report: checkpoint " + std::to_string(cp) +
                              " outside [v', horizon]");
    if (table.horizon() < 2 * checkpoints.front())
        throw ConfigError("assumption_report: horizon < 2 * first checkpoint (insufficient range)");

    AssumptionReport rep;
    rep.horizon = table.horizon();
    rep.checkpoints = checkpoints;
    rep.s1_floor = s1_floor;
    rep.s2_tol = s2_tol;

    // One pass over s, capturing partial sums at every checkpoint and at 2T.
    std::vector<std::int64_t> capture = checkpoints;
    for (const auto cp : checkpoints)
        if (2 * cp <= table.horizon())
            capture.push_back(2 * cp);
    std::sort(capture.begin(), capture.end());
    capture.erase(std::unique(capture.begin(), capture.end()), capture.end());

    std::vector<double> s1_at(capture.size()), s2_at(capture.size());
    double s1 = 0.0, s2 = 0.0;
    std::size_t ci = 0;
    const std::int64_t s_min = table.first_positive_F();
    for (std::int64_t s = s_min; s <= table.horizon() && ci < capture.size(); ++s) {
        const double ratio = static_cast<double>(table.f(s)) / static_cast<double>(table.F(s));
        s1 += ratio;
        s2 += ratio * ratio;
        while (ci < capture.size() && capture[ci] == s) {
            s1_at[ci] = s1;
            s2_at[ci] = s2;
            ++ci;
        }
    }

    const auto value_at = [&](std::int64_t t, const std::vector<double>& vals) {
        const auto it = std::lower_bound(capture.begin(), capture.end(), t);
        return vals[static_cast<std::size_t>(it - capture.begin())];
    };

    for (const auto cp : checkpoints) {
        rep.s1_partial.push_back(value_at(cp, s1_at));
        rep.s2_partial.push_back(value_at(cp, s2_at));
        if (2 * cp <= table.horizon()) {
            rep.doubling_T.push_back(cp);
            rep.s1_doubling.push_back(value_at(2 * cp, s1_at) - value_at(cp, s1_at));
            rep.s2_doubling.push_back(value_at(2 * cp, s2_at) - value_at(cp, s2_at));
        }
    }

    if (!rep.s1_doubling.empty() && rep.s1_doubling.back() > s1_floor)
        rep.s1_hint = S1Hint::Diverging;
    if (!rep.s2_doubling.empty() && rep.s2_doubling.back() < s2_tol)
        rep.s2_hint = S2Hint::Converging;
    return rep;
}

GrowthSpec xi_build(const std::vector<Rational>& xi, std::int64_t horizon) {
    if (horizon < 0)
        throw ConfigError("xi_build: horizon must be >= 0");
    if (xi.size() < static_cast<std::size_t>(horizon) + 1)
        throw ConfigError("xi_build: need xi_0..xi_horizon");
    for (const auto& x : xi)
        if (!x.positive())
            throw ConfigError("xi_build: all xi must be > 0");

    const auto as_rational = [](const Rational& r) {
        return mp::cpp_rational(r.num, r.den);
    };
    const auto require_positive_integer = [](const mp::cpp_rational& v, std::int64_t t) {
        if (mp::denominator(v) != 1 || v <= 0)
            throw DomainError("xi_build: f(" + std::to_string(t) + ") = " + v.str() +
                              " is not a positive integer (condition 3' violated)");
        return to_checked_int64(mp::numerator(v), t, "xi_build: f(t)");
    };

    std::vector<std::int64_t> values;
    values.reserve(static_cast<std::size_t>(horizon) + 1);

    // P tracks F(t) = xi_0 * prod_{n=1}^{t-1}(xi_n + 1); F(1) = xi_0 = f(0).
    mp::cpp_rational P = as_rational(xi[0]);
    values.push_back(require_positive_integer(P, 0));
    mp::cpp_int prefix = values[0];

    for (std::int64_t t = 1; t <= horizon; ++t) {
        if (mp::cpp_rational(prefix) != P)
            throw DomainError("xi_build: F(" + std::to_string(t) +
                              ") product form disagrees with prefix sum");
        const mp::cpp_rational ft = P * as_rational(xi[static_cast<std::size_t>(t)]);
        values.push_back(require_positive_integer(ft, t));
        prefix += values.back();
        P *= (as_rational(xi[static_cast<std::size_t>(t)]) + 1);
    }

    return GrowthSpec::from_table(std::move(values), /*v_prime=*/1);
}

} // namespace pamg
