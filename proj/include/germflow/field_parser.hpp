#pragma once

#include <string_view>

#include "germflow/fields.hpp"
#include "germflow/log_coord.hpp"

namespace germflow {

/// Parses `family:name,alpha=A,lambda=L,delta=D[,base=(...)]`.
///
/// Keys may appear in any order; unknown keys, duplicates and a `base` on a
/// non-perturbation family raise ParseError. Missing keys take the family
/// defaults (lambda = -1, delta per family).
[[nodiscard]] FieldSpec parse_field_spec(std::string_view text);

/// Parses a point given as `0.01`, `x=0.01`, `z=-5` or `w=3`.
[[nodiscard]] LogCoord parse_point(std::string_view text);

/// Parses a finite double; the whole token must be consumed.
[[nodiscard]] double parse_number(std::string_view text);

}  // namespace germflow
