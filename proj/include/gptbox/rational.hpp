/**
 * Exact rational scalar type and its string forms.
 *
 * Every quantity in this library is an arbitrary-precision rational backed
 * by GMP. There is no floating-point mode: doubles appear only in optional
 * decimal previews of exact values.
 */

#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gptbox {

/// Arbitrary-precision rational, always canonical (lowest terms, positive
/// denominator). Expression templates are disabled so the type has plain
/// value semantics and works as an Eigen scalar.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Integer companion type (numerators, denominators, lcm/gcd work).
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

/**
 * Parse an exact rational from "p", "-p" or "p/q" notation.
 *
 * Decimal or scientific notation is rejected: a value like 0.5 must be
 * written 1/2 so that exactness is explicit end to end.
 */
inline Rational parse_rational(std::string_view text) {
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) fail("empty string");
    if (text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos ||
        text.find('E') != std::string_view::npos)
        fail("decimal notation not accepted, use p/q");

    const auto slash = text.find('/');
    const std::string num_part{text.substr(0, slash)};
    const std::string den_part = slash == std::string_view::npos
                                     ? std::string("1")
                                     : std::string(text.substr(slash + 1));
    auto is_integer = [](const std::string& s) {
        if (s.empty()) return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
        return true;
    };
    if (!is_integer(num_part) || !is_integer(den_part)) fail("expected integers around '/'");

    // GMP's string constructor rejects an explicit leading '+'.
    auto strip_plus = [](const std::string& s) { return s[0] == '+' ? s.substr(1) : s; };
    BigInt num(strip_plus(num_part));
    BigInt den(strip_plus(den_part));
    if (den == 0) fail("zero denominator");
    // The two-argument constructor canonicalizes (lowest terms, positive
    // denominator); the string constructor of the GMP backend does not.
    return Rational(num, den);
}

/// Render as "p/q" with the denominator always spelled out ("3/1", "-1/2").
inline std::string to_fraction_string(const Rational& value) {
    return numerator(value).str() + "/" + denominator(value).str();
}

/// Render as "p" when integral, "p/q" otherwise. Used for human-facing text.
inline std::string to_short_string(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return to_fraction_string(value);
}

/// Lossy decimal preview of an exact value.
inline double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace gptbox
