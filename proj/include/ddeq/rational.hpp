#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ddeq {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator (canonical zero is 0/1).
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Renders as "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// Parses "num", "num/den" or a terminating decimal such as "-0.25".
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Exact value of a finite double.
Rational exact_rational(double v);

/// Shortest decimal that round-trips to `v`, read back as an exact rational.
Rational decimal_rational(double v);

/// 2^e for any integer e.
Rational pow2(int e);

BigInt binomial(unsigned n, unsigned k);

} // namespace ddeq
