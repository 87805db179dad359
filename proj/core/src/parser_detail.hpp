#pragma once

#include <map>
#include <string_view>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"

namespace cdcalc::detail {

/// Σ a^σ D_σ as parsed; the empty multi-index holds the zeroth-order part.
using OpTerms = std::map<MultiIndex, DiffPoly>;

/// Shared recursive-descent parser. With allow_derivatives the atoms
/// `D_{i,j}` / `D_ij` are accepted and must be the rightmost factor of a term.
OpTerms parse_terms(std::string_view text, const JetContext& ctx, bool allow_derivatives);

}  // namespace cdcalc::detail
