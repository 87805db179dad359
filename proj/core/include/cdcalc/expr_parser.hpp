#pragma once

#include <string_view>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"

namespace cdcalc {

/// Parses a differential polynomial.
///
///   expr      := term (("+"|"-") term)*
///   term      := factor (("*" factor) | ("/" factor))*     divisor must be a nonzero constant
///   factor    := base ("^" uint)?
///   base      := rational | coord | "(" expr ")" | "-" factor
///   coord     := ident jetsuffix?
///   jetsuffix := "_{" ident ("," ident)* "}" | "_" ident
///
/// `u_xxt` expands to `u_{x,x,t}` when every independent name is a single
/// character. Throws ParseError with the byte offset of the problem.
DiffPoly parse_expr(std::string_view text, const JetContext& ctx);

/// Parses `name`, `u_xx`, `u_{x,t}` into a coordinate id.
CoordId parse_coord(std::string_view text, const JetContext& ctx);

}  // namespace cdcalc
