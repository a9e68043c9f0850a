#pragma once

// Independent oracles for the test suites: brute-force enumeration and
// direct summation, sharing no code with the library paths they check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pamg/growth.hpp"

namespace oracle {

namespace mp = boost::multiprecision;
using Rat = mp::cpp_rational;

/// Direct loop summation of f over [0, t).
inline std::int64_t prefix_sum(const pamg::GrowthSpec& spec, std::int64_t t) {
    std::int64_t acc = 0;
    for (std::int64_t i = 0; i < t; ++i)
        acc += pamg::eval_f(spec, i);
    return acc;
}

/// Direct summation of f(s)/F(s)^beta over [m, t] with independently
/// recomputed prefix sums.
inline double direct_sum_f_over_F_pow(const pamg::GrowthSpec& spec, std::int64_t m, std::int64_t t,
                                      double beta) {
    double acc = 0.0;
    std::int64_t F = prefix_sum(spec, m);
    for (std::int64_t s = m; s <= t; ++s) {
        const auto f = pamg::eval_f(spec, s);
        acc += static_cast<double>(f) / std::pow(static_cast<double>(F), beta);
        F += f;
    }
    return acc;
}

/// Probability that k ordered with-replacement weighted draws satisfy
/// `event`, by enumerating every one of the size^k tuples exactly.
inline Rat enumerate_with_replacement(const std::vector<std::int64_t>& weights, std::size_t k,
                                      const std::function<bool(const std::vector<std::size_t>&)>& event) {
    std::int64_t total = 0;
    for (const auto w : weights)
        total += w;
    Rat acc = 0;
    std::vector<std::size_t> tuple(k, 0);
    while (true) {
        if (event(tuple)) {
            Rat p = 1;
            for (const auto idx : tuple)
                p *= Rat(weights[idx], total);
            acc += p;
        }
        std::size_t i = 0;
        while (i < k) {
            if (++tuple[i] < weights.size())
                break;
            tuple[i] = 0;
            ++i;
        }
        if (i == k || k == 0)
            break;
    }
    return acc;
}

/// P(the set of k without-replacement sequential weighted draws equals
/// `target_set`), by enumerating every ordered draw sequence.
inline Rat successive_sampling_set_prob(const std::vector<std::int64_t>& weights,
                                        std::vector<std::size_t> target_set) {
    std::sort(target_set.begin(), target_set.end());
    Rat acc = 0;
    std::vector<std::size_t> perm = target_set;
    do {
        Rat seq = 1;
        std::int64_t total = 0;
        for (const auto w : weights)
            total += w;
        for (const auto idx : perm) {
            seq *= Rat(weights[idx], total);
            total -= weights[idx];
        }
        acc += seq;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

/// Multinomial oracle: enumerates all (n+1)^f ordered endpoint sequences
/// over the alphabet {tracked_1..tracked_n, other} — per-draw probability
/// d_i/2F for tracked_i and (2F - sum d)/2F for other — and accumulates
/// the mass of sequences hitting tracked_i exactly m_i times.
inline Rat multinomial_event_prob(const std::vector<std::int64_t>& d, std::int64_t f,
                                  std::int64_t F, const std::vector<std::int64_t>& m) {
    const std::size_t n = d.size();
    std::int64_t d_sum = 0;
    for (const auto di : d)
        d_sum += di;
    std::vector<std::int64_t> weights = d;
    weights.push_back(2 * F - d_sum); // "other"
    return enumerate_with_replacement(
        weights, static_cast<std::size_t>(f), [&](const std::vector<std::size_t>& tuple) {
            std::vector<std::int64_t> counts(n, 0);
            for (const auto idx : tuple)
                if (idx < n)
                    ++counts[idx];
            return counts == m;
        });
}

/// Sum of multinomial_event_prob over every m vector with entries <= f
/// (distribution completeness check).
inline Rat multinomial_total_mass(const std::vector<std::int64_t>& d, std::int64_t f,
                                  std::int64_t F) {
    const std::size_t n = d.size();
    Rat total = 0;
    std::vector<std::int64_t> m(n, 0);
    while (true) {
        std::int64_t s = 0;
        for (const auto v : m)
            s += v;
        if (s <= f)
            total += multinomial_event_prob(d, f, F, m);
        std::size_t i = 0;
        while (i < n) {
            if (++m[i] <= f)
                break;
            m[i] = 0;
            ++i;
        }
        if (i == n)
            break;
    }
    return total;
}

inline double to_double(const Rat& r) {
    return r.convert_to<double>();
}

} // namespace oracle
