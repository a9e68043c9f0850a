#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pamg {

/// Exact rational on 64-bit integers, always normalized (den > 0, gcd = 1).
/// Config files carry rationals as strings ("2", "0.75", "3/2") so that
/// values like 3/4 survive round-trips without binary float noise.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d);
    static Rational from_int(std::int64_t n) { return Rational(n, 1); }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool is_integer() const { return den == 1; }
    bool positive() const { return num > 0; }

    bool operator==(const Rational&) const = default;
};

/// Parses "12", "-3", "0.25", "1.5", or "p/q". Decimal digits are converted
/// exactly (0.1 -> 1/10). Throws ParseError on malformed or overflowing input.
Rational parse_rational(std::string_view text);

/// Decimal string when the denominator is a power of 10 times nothing else
/// would be lossy, so this always renders "num/den" unless den == 1.
std::string to_string(const Rational& r);

} // namespace pamg
