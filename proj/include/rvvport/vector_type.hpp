#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvvport/rational.hpp"

namespace rvvport {

enum class ElemKind { kSignedInt, kUnsignedInt, kFloat, kMask };

/// Decoded RVV v1.0 intrinsic type name.
///
/// Data types follow `v{int|uint|float}{SEW}m{f?}{LMUL}(x{NF})?_t`; masks are
/// `vbool{N}_t` with N = SEW/LMUL. A mask occupies one register, so it carries
/// lmul = 1 and keeps N in `mask_ratio` only to reproduce its name.
struct VectorType {
  ElemKind kind = ElemKind::kSignedInt;
  int elem_bits = 0;  // 0 for masks
  Rational lmul{1};
  int tuple_fields = 1;
  int mask_ratio = 0;  // only for masks

  bool is_mask() const noexcept { return kind == ElemKind::kMask; }
  friend bool operator==(const VectorType&, const VectorType&) = default;
};

/// Returns nullopt for anything that is not a legal RVV v1.0 vector type
/// (scalars, pointers, illegal SEW/LMUL pairs such as vint64mf2_t).
std::optional<VectorType> parse_vector_type(std::string_view type_name);

/// Inverse of parse_vector_type.
std::string vector_type_name(const VectorType& type);

/// Every legal type name pattern under ELEN=64 with Zvfh: 285 data types and
/// 7 mask types.
std::vector<VectorType> all_vector_types();

enum class FootprintMode {
  kPaperLiteral,  // lmul x fields, fractions kept
  kPhysical,      // max(1, ceil(lmul)) x fields
};

Rational register_footprint(const VectorType& type, FootprintMode mode);

std::string_view to_string(FootprintMode mode);
std::optional<FootprintMode> parse_footprint_mode(std::string_view text);

}  // namespace rvvport
