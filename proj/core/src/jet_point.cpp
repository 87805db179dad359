#include "cdcalc/jet_point.hpp"

#include <sstream>

#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"

namespace cdcalc {

std::vector<CoordId> coordinates_up_to(const JetContext& ctx, int order)
{
    std::vector<CoordId> out;
    for (int i = 0; i < ctx.n(); ++i)
        out.push_back(CoordId::independent(i));
    for (int j = 0; j < ctx.m(); ++j)
        for (const auto& sigma : multi_indices_up_to(ctx.n(), order)) {
            CoordId c = CoordId::jet(j, sigma);
            if (ctx.is_internal(c))
                out.push_back(std::move(c));
        }
    for (int p = 0; p < ctx.parameter_count(); ++p)
        out.push_back(CoordId::parameter(p));
    return out;
}

JetPoint::JetPoint(JetContextPtr ctx, int order_bound, std::map<CoordId, Rational> values)
    : ctx_(std::move(ctx)), order_bound_(order_bound), values_(std::move(values))
{
    if (order_bound_ < 0)
        throw PreconditionError("jet point order bound must be non-negative");
    for (const auto& c : coordinates_up_to(*ctx_, order_bound_))
        if (!values_.contains(c))
            throw PointError("jet point does not assign " + to_string(c, *ctx_));
}

JetPoint JetPoint::from_values(JetContextPtr ctx, std::map<CoordId, Rational> values)
{
    int bound = -1;
    while (true) {
        bool complete = true;
        for (const auto& c : coordinates_up_to(*ctx, bound + 1))
            if (!values.contains(c)) {
                complete = false;
                if (bound < 0)
                    throw PointError("jet point does not assign " + to_string(c, *ctx));
                break;
            }
        if (!complete)
            break;
        ++bound;
        if (ctx->m() == 0)
            break;
    }
    return JetPoint(std::move(ctx), bound, std::move(values));
}

JetPoint JetPoint::random(JetContextPtr ctx, int order_bound, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(1, 18);
    std::uniform_int_distribution<int> den(1, 4);
    std::map<CoordId, Rational> values;
    for (auto& c : coordinates_up_to(*ctx, order_bound)) {
        int a = num(rng);
        int numerator = a <= 9 ? a - 10 : a - 9;  // [-9,-1] ∪ [1,9]
        Rational q(numerator, den(rng));
        q.canonicalize();
        values.emplace(std::move(c), std::move(q));
    }
    return JetPoint(std::move(ctx), order_bound, std::move(values));
}

const Rational& JetPoint::value(const CoordId& c) const
{
    if (c.is_jet() && static_cast<int>(c.sigma.order()) > order_bound_)
        throw PointError("coordinate " + to_string(c, *ctx_) + " exceeds the point order bound " +
                         std::to_string(order_bound_));
    auto it = values_.find(c);
    if (it == values_.end())
        throw PointError("coordinate " + to_string(c, *ctx_) + " unassigned");
    return it->second;
}

void JetPoint::require_order(int order) const
{
    if (order > order_bound_)
        throw PointError("insufficient point order: need " + std::to_string(order) + ", have " +
                         std::to_string(order_bound_));
}

Rational evaluate(const DiffPoly& f, const JetPoint& pt)
{
    Rational total = 0;
    for (const auto& [m, c] : f.terms()) {
        Rational v = c;
        for (const auto& [coord, e] : m.factors()) {
            const Rational& x = pt.value(coord);
            for (int k = 0; k < e; ++k)
                v *= x;
        }
        total += v;
    }
    return total;
}

std::vector<JetPoint> generic_points(const JetContextPtr& ctx, int order_bound, std::uint64_t seed, int count)
{
    std::mt19937_64 rng(seed);
    std::vector<JetPoint> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back(JetPoint::random(ctx, order_bound, rng));
    return out;
}

JetPoint parse_point(std::string_view text, const JetContextPtr& ctx)
{
    std::map<CoordId, Rational> values;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("point file line " + std::to_string(lineno) + ": expected 'coord = rational'", 0);
        CoordId c = parse_coord(line.substr(0, eq), *ctx);
        DiffPoly v = parse_expr(line.substr(eq + 1), *ctx);
        if (!v.is_constant())
            throw ParseError("point file line " + std::to_string(lineno) + ": value must be a rational", eq + 1);
        if (!values.emplace(c, v.constant_term()).second)
            throw ParseError("point file line " + std::to_string(lineno) + ": duplicate coordinate", 0);
    }
    return JetPoint::from_values(ctx, std::move(values));
}

}  // namespace cdcalc
