#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace ew {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient C(n, k) via the multiplicative recurrence.
BigInt binomial_coefficient(long n, long k);

/// base^e by repeated squaring.
Rational pow_rational(const Rational& base, unsigned long e);
BigInt pow_bigint(const BigInt& base, unsigned long e);

double to_double(const Rational& r);

/// Canonical text form "num/den" (always with the slash, e.g. "3/10", "0/1").
std::string rational_to_string(const Rational& r);

/// Parses "a/b", a plain integer, or a decimal literal ("0.3" -> 3/10).
/// Returns nullopt on malformed input.
std::optional<Rational> parse_rational(const std::string& text);

} // namespace ew
