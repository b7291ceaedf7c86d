#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace pirbound {

// Exact arithmetic used throughout the bound/certificate pipeline. Floating
// point appears only where a logarithm forces it (distribution entropies,
// simplex pivoting); every comparison that decides a result is rational.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// base^exp for nonnegative integer exponents.
Int ipow(const Int& base, unsigned exp);

// Parses "p", "-p", "p/q" (q > 0 after normalization). Throws
// std::invalid_argument on anything else; no floating-point forms accepted.
Rational parse_rational(const std::string& text);

// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string rational_string(const Rational& r);

// Fixed-width decimal rendering (round half away from zero). Display only.
std::string decimal_string(const Rational& r, int digits = 12);

double rational_to_double(const Rational& r);

// Exact value of the double (binary expansion), no rounding.
Rational rational_from_double(double x);

// Best rational approximation to x with denominator <= max_den (continued
// fractions). Returns nullopt for non-finite x.
std::optional<Rational> approximate_rational(double x, const Int& max_den);

// Exact log_base(value) when it is rational, i.e. when value and base are
// powers of a common integer root. value >= 1, base >= 2.
std::optional<Rational> exact_log(const Int& value, const Int& base);

}  // namespace pirbound
