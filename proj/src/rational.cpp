#include "rvvport/rational.hpp"

#include <cstdlib>
#include <stdexcept>

#include "rvvport/error.hpp"

namespace rvvport {

std::string to_string(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

namespace {

std::int64_t parse_int(const std::string& text, const std::string& whole) {
  if (text.empty()) throw Error("malformed rational: '" + whole + "'");
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw Error("malformed rational: '" + whole + "'");
  }
  if (used != text.size()) throw Error("malformed rational: '" + whole + "'");
  return v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0) throw Error("malformed rational: '" + text + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string int_part = text.substr(0, dot);
    const std::string frac_part = text.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 15) throw Error("malformed rational: '" + text + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const bool negative = !int_part.empty() && int_part[0] == '-';
    const std::int64_t whole = int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
    const std::int64_t frac = parse_int(frac_part, text);
    if (frac < 0) throw Error("malformed rational: '" + text + "'");
    const std::int64_t magnitude = (whole < 0 ? -whole : whole) * scale + frac;
    return Rational(negative ? -magnitude : magnitude, scale);
  }
  return Rational(parse_int(text, text));
}

std::string format_decimal(const Rational& value, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = value < 0;
  const Rational magnitude = negative ? -value : value;
  // Round half away from zero on the scaled magnitude.
  const std::int64_t num = magnitude.numerator() * scale;
  const std::int64_t den = magnitude.denominator();
  std::int64_t scaled = num / den;
  if ((num % den) * 2 >= den) ++scaled;
  std::string digits = std::to_string(scaled / scale);
  if (places > 0) {
    std::string frac = std::to_string(scaled % scale);
    frac.insert(0, static_cast<std::size_t>(places) - frac.size(), '0');
    digits += "." + frac;
  }
  if (negative && scaled != 0) digits.insert(0, "-");
  return digits;
}

std::string format_trimmed(const Rational& value, int max_places) {
  std::string text = format_decimal(value, max_places);
  if (text.find('.') == std::string::npos) return text;
  while (!text.empty() && text.back() == '0') text.pop_back();
  if (!text.empty() && text.back() == '.') text.pop_back();
  return text;
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

}  // namespace rvvport
