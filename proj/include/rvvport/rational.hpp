#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace rvvport {

/// Compare only against other Rationals: with Boost 1.74 under C++20,
/// `r == 1` and `r != 1` recurse forever through the rewritten operator
/// candidates. Ordering against integers is fine.
using Rational = boost::rational<std::int64_t>;

/// "num/den", or just "num" for integers. Round-trips through parse_rational.
std::string to_string(const Rational& value);

/// Accepts "a/b", "a" and plain decimals such as "5.93".
Rational parse_rational(const std::string& text);

/// Decimal rendering rounded half away from zero to `places` digits.
std::string format_decimal(const Rational& value, int places);

/// Decimal rendering with at most `max_places` digits and trailing zeros
/// trimmed: 7/10 -> "0.7", 5/4 -> "1.25", 2 -> "2".
std::string format_trimmed(const Rational& value, int max_places = 2);

double to_double(const Rational& value);

}  // namespace rvvport
