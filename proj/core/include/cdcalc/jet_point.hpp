#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string_view>
#include <vector>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"

namespace cdcalc {

/// Exact-rational values for every internal coordinate up to `order_bound`,
/// plus all independents and parameters. Used to freeze coefficients before
/// doing linear algebra.
class JetPoint {
public:
    /// Validates that `values` covers every coordinate up to `order_bound`.
    JetPoint(JetContextPtr ctx, int order_bound, std::map<CoordId, Rational> values);

    /// Uses the largest order up to which `values` is complete.
    static JetPoint from_values(JetContextPtr ctx, std::map<CoordId, Rational> values);

    /// Numerators uniform in [-9, 9] \ {0}, denominators in [1, 4].
    static JetPoint random(JetContextPtr ctx, int order_bound, std::mt19937_64& rng);

    int order_bound() const noexcept { return order_bound_; }
    const JetContext& context() const noexcept { return *ctx_; }
    const JetContextPtr& context_ptr() const noexcept { return ctx_; }
    const std::map<CoordId, Rational>& values() const noexcept { return values_; }

    /// Throws PointError when c is unassigned or beyond the order bound.
    const Rational& value(const CoordId& c) const;

    /// Requires order_bound() ≥ order; throws PointError otherwise.
    void require_order(int order) const;

private:
    JetContextPtr ctx_;
    int order_bound_;
    std::map<CoordId, Rational> values_;
};

/// Every internal coordinate of ctx with jet order ≤ order (independents and parameters included).
std::vector<CoordId> coordinates_up_to(const JetContext& ctx, int order);

Rational evaluate(const DiffPoly& f, const JetPoint& pt);

/// Deterministic sample of `count` independent random points from `seed`.
std::vector<JetPoint> generic_points(const JetContextPtr& ctx, int order_bound, std::uint64_t seed, int count = 3);

/// Point file: one `coord = rational` per line, `#` comments.
JetPoint parse_point(std::string_view text, const JetContextPtr& ctx);

}  // namespace cdcalc
