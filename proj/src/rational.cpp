#include "pamg/rational.hpp"

#include <cctype>
#include <numeric>

#include "pamg/error.hpp"

namespace pamg {

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw ParseError("rational overflow", 0);
    return out;
}

} // namespace

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0)
        throw DomainError("rational with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    const auto fail = [&](const char* why) -> ParseError {
        return ParseError(std::string("bad rational '") + std::string(text) + "': " + why, 0);
    };
    if (text.empty())
        throw fail("empty");

    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
        negative = text[i] == '-';
        ++i;
    }
    if (i == text.size())
        throw fail("no digits");

    std::int64_t intpart = 0;
    bool any_digit = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        intpart = checked_mul(intpart, 10);
        intpart += text[i] - '0';
        any_digit = true;
        ++i;
    }

    if (i < text.size() && text[i] == '/') {
        if (!any_digit)
            throw fail("missing numerator");
        ++i;
        std::int64_t q = 0;
        bool q_digit = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            q = checked_mul(q, 10);
            q += text[i] - '0';
            q_digit = true;
            ++i;
        }
        if (!q_digit || i != text.size())
            throw fail("malformed p/q");
        if (q == 0)
            throw fail("zero denominator");
        return Rational(negative ? -intpart : intpart, q);
    }

    std::int64_t frac = 0;
    std::int64_t scale = 1;
    if (i < text.size() && text[i] == '.') {
        ++i;
        bool f_digit = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            frac = checked_mul(frac, 10);
            frac += text[i] - '0';
            scale = checked_mul(scale, 10);
            f_digit = true;
            ++i;
        }
        if (!f_digit && !any_digit)
            throw fail("no digits");
    }
    if (i != text.size())
        throw fail("trailing characters");

    std::int64_t num = checked_mul(intpart, scale) + frac;
    return Rational(negative ? -num : num, scale);
}

std::string to_string(const Rational& r) {
    if (r.den == 1)
        return std::to_string(r.num);
    return std::to_string(r.num) + "/" + std::to_string(r.den);
}

} // namespace pamg
