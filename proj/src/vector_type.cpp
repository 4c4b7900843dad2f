#include "rvvport/vector_type.hpp"

#include <algorithm>
#include <array>
#include <charconv>

namespace rvvport {
namespace {

constexpr std::array<int, 4> kElemBits{8, 16, 32, 64};
constexpr std::array<int, 7> kMaskRatios{1, 2, 4, 8, 16, 32, 64};

const std::array<Rational, 7>& legal_lmuls() {
  static const std::array<Rational, 7> values{Rational(1, 8), Rational(1, 4), Rational(1, 2),
                                              Rational(1),    Rational(2),    Rational(4),
                                              Rational(8)};
  return values;
}

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

std::optional<int> consume_int(std::string_view& s) {
  int value = 0;
  const auto* begin = s.data();
  const auto [ptr, ec] = std::from_chars(begin, begin + s.size(), value);
  if (ec != std::errc() || ptr == begin) return std::nullopt;
  // No leading zeros: "08" is not a width.
  if (*begin == '0') return std::nullopt;
  s.remove_prefix(static_cast<std::size_t>(ptr - begin));
  return value;
}

bool is_legal(const VectorType& t) {
  if (t.is_mask()) {
    const bool ratio_ok = std::find(kMaskRatios.begin(), kMaskRatios.end(), t.mask_ratio) != kMaskRatios.end();
    return ratio_ok && t.lmul == Rational(1) && t.tuple_fields == 1 && t.elem_bits == 0;
  }
  bool width_ok = false;
  for (int w : kElemBits) width_ok |= (w == t.elem_bits);
  if (!width_ok) return false;
  if (t.kind == ElemKind::kFloat && t.elem_bits == 8) return false;
  bool lmul_ok = false;
  for (const auto& l : legal_lmuls()) lmul_ok |= (l == t.lmul);
  if (!lmul_ok) return false;
  // SEW/LMUL must not exceed ELEN (64).
  if (Rational(t.elem_bits) / t.lmul > 64) return false;
  if (t.tuple_fields < 1 || t.tuple_fields > 8) return false;
  if (t.tuple_fields > 1 && t.lmul * t.tuple_fields > 8) return false;
  return true;
}

}  // namespace

std::optional<VectorType> parse_vector_type(std::string_view name) {
  if (!consume(name, "v")) return std::nullopt;
  VectorType t;
  if (consume(name, "bool")) {
    const auto ratio = consume_int(name);
    if (!ratio || name != "_t") return std::nullopt;
    t.kind = ElemKind::kMask;
    t.mask_ratio = *ratio;
    return is_legal(t) ? std::optional(t) : std::nullopt;
  }
  if (consume(name, "uint")) {
    t.kind = ElemKind::kUnsignedInt;
  } else if (consume(name, "int")) {
    t.kind = ElemKind::kSignedInt;
  } else if (consume(name, "float")) {
    t.kind = ElemKind::kFloat;
  } else {
    return std::nullopt;
  }
  const auto bits = consume_int(name);
  if (!bits || !consume(name, "m")) return std::nullopt;
  const bool fractional = consume(name, "f");
  const auto grouping = consume_int(name);
  if (!grouping) return std::nullopt;
  if (fractional && *grouping == 1) return std::nullopt;
  t.elem_bits = *bits;
  t.lmul = fractional ? Rational(1, *grouping) : Rational(*grouping);
  if (consume(name, "x")) {
    const auto fields = consume_int(name);
    if (!fields || *fields < 2) return std::nullopt;
    t.tuple_fields = *fields;
  }
  if (name != "_t") return std::nullopt;
  return is_legal(t) ? std::optional(t) : std::nullopt;
}

std::string vector_type_name(const VectorType& t) {
  if (t.is_mask()) return "vbool" + std::to_string(t.mask_ratio) + "_t";
  std::string out = "v";
  switch (t.kind) {
    case ElemKind::kSignedInt: out += "int"; break;
    case ElemKind::kUnsignedInt: out += "uint"; break;
    case ElemKind::kFloat: out += "float"; break;
    case ElemKind::kMask: break;
  }
  out += std::to_string(t.elem_bits);
  out += t.lmul.denominator() == 1 ? "m" + std::to_string(t.lmul.numerator())
                                   : "mf" + std::to_string(t.lmul.denominator());
  if (t.tuple_fields > 1) out += "x" + std::to_string(t.tuple_fields);
  return out + "_t";
}

std::vector<VectorType> all_vector_types() {
  std::vector<VectorType> out;
  for (auto kind : {ElemKind::kSignedInt, ElemKind::kUnsignedInt, ElemKind::kFloat}) {
    for (int bits : kElemBits) {
      for (const auto& lmul : legal_lmuls()) {
        for (int fields = 1; fields <= 8; ++fields) {
          VectorType t{kind, bits, lmul, fields, 0};
          if (is_legal(t)) out.push_back(t);
        }
      }
    }
  }
  for (int r : kMaskRatios) out.push_back(VectorType{ElemKind::kMask, 0, Rational(1), 1, r});
  return out;
}

Rational register_footprint(const VectorType& t, FootprintMode mode) {
  if (mode == FootprintMode::kPaperLiteral) return t.lmul * t.tuple_fields;
  const std::int64_t whole = t.lmul < 1 ? 1
                                        : (t.lmul.numerator() + t.lmul.denominator() - 1) /
                                              t.lmul.denominator();
  return Rational(whole * t.tuple_fields);
}

std::string_view to_string(FootprintMode mode) {
  return mode == FootprintMode::kPaperLiteral ? "paper_literal" : "physical";
}

std::optional<FootprintMode> parse_footprint_mode(std::string_view text) {
  if (text == "paper_literal") return FootprintMode::kPaperLiteral;
  if (text == "physical") return FootprintMode::kPhysical;
  return std::nullopt;
}

}  // namespace rvvport
