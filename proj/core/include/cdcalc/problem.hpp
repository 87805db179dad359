#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"
#include "cdcalc/opalgebra.hpp"
#include "cdcalc/pform.hpp"

namespace cdcalc {

struct DeclaredOperator {
    CDiffOp op;
    int order;
};

/// Parsed problem file.
///
///   independent x t
///   dependent u
///   parameter lambda
///   equation u_t - u*u_x - u_xxx        (F components, in order)
///   evolution u = u*u_x + u_xxx         (evolution mode; implies the equation when none is given)
///   metric diag(1, 1, 1, 1)
///   operator 1 -> 2 [order 1]           (followed by 2 rows of 1 ';'-separated entries)
///   operator dbar 1 | operator dstard 1 (builtins)
struct Problem {
    JetContextPtr free_context;
    /// Evolution context when declared, otherwise free_context.
    JetContextPtr context;
    std::vector<DiffPoly> equations;
    std::optional<Metric> metric;
    std::vector<DeclaredOperator> operators;
};

Problem parse_problem(std::string_view text);

}  // namespace cdcalc
