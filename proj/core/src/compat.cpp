#include "cdcalc/compat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "cdcalc/errors.hpp"
#include "cdcalc/linalg.hpp"
#include "cdcalc/spencer.hpp"

namespace cdcalc {

OperatorComplex::OperatorComplex(std::vector<CDiffOp> operators, std::vector<int> orders)
    : ops_(std::move(operators)), orders_(std::move(orders))
{
    if (ops_.empty())
        throw PreconditionError("an operator complex needs at least one operator");
    if (orders_.empty())
        for (const auto& op : ops_)
            orders_.push_back(op.order());
    if (orders_.size() != ops_.size())
        throw DimensionError("one declared order per operator is required");
    for (std::size_t i = 0; i < ops_.size(); ++i) {
        if (orders_[i] < ops_[i].order())
            throw PreconditionError("operator " + std::to_string(i + 1) + " has order " +
                                    std::to_string(ops_[i].order()) + " above its declared order " +
                                    std::to_string(orders_[i]));
        if (i == 0)
            continue;
        if (ops_[i].context().n() != ops_[0].context().n())
            throw DimensionError("operators of a complex must share the independent variables");
        if (ops_[i].cols() != ops_[i - 1].rows())
            throw DimensionError("operator " + std::to_string(i + 1) + " expects " + std::to_string(ops_[i].cols()) +
                                 " components but operator " + std::to_string(i) + " produces " +
                                 std::to_string(ops_[i - 1].rows()));
        if (!compose(ops_[i], ops_[i - 1]).is_zero())
            throw PreconditionError("not a complex: operator " + std::to_string(i + 1) + " composed with operator " +
                                    std::to_string(i) + " is not zero");
    }
}

std::vector<int> OperatorComplex::module_ranks() const
{
    std::vector<int> r{ops_.front().cols()};
    for (const auto& op : ops_)
        r.push_back(op.rows());
    return r;
}

std::string to_string(PositionKind kind)
{
    switch (kind) {
    case PositionKind::source: return "source";
    case PositionKind::interior: return "interior";
    case PositionKind::terminal: return "terminal";
    }
    return "?";
}

bool ExactnessReport::exact() const
{
    return std::all_of(entries.begin(), entries.end(), [](const ExactnessEntry& e) { return e.exact(); });
}

int exactness_point_order(const OperatorComplex& c, int l_max)
{
    const auto& ops = c.operators();
    const auto& k = c.orders();
    int order = 0;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        // Δ_i is prolonged by at most k_{i+1} + l_max
        int extra = i + 1 < ops.size() ? k[i + 1] : 0;
        order = std::max(order, required_point_order(ops[i], extra + l_max));
    }
    return order;
}

ExactnessReport check_formal_exactness(const OperatorComplex& c, int l_max, const JetPoint& pt)
{
    if (l_max < 0)
        throw PreconditionError("l_max must be nonnegative");
    const auto& ops = c.operators();
    const auto& k = c.orders();
    const std::size_t N = ops.size();
    ExactnessReport report;
    report.l_max = l_max;

    for (int l = 0; l <= l_max; ++l) {
        {
            FiberMap first = fiber_map(ops[0], l, pt, k[0]);
            std::size_t rk = rank(first.matrix);
            ExactnessEntry e{PositionKind::source, 0, l, {first.domain_dim(), first.codomain_dim()}, {rk},
                             first.domain_dim() - rk};
            report.entries.push_back(std::move(e));
        }
        for (std::size_t i = 1; i < N; ++i) {
            FiberMap first = fiber_map(ops[i - 1], k[i] + l, pt, k[i - 1]);
            FiberMap second = fiber_map(ops[i], l, pt, k[i]);
            std::size_t r1 = rank(first.matrix);
            std::size_t r2 = rank(second.matrix);
            std::size_t kernel = second.domain_dim() - r2;
            if (r1 > kernel)
                throw PreconditionError("image exceeds kernel at position " + std::to_string(i) +
                                        "; the operators do not form a complex at this point");
            ExactnessEntry e{PositionKind::interior,
                             static_cast<int>(i),
                             l,
                             {first.domain_dim(), first.codomain_dim(), second.codomain_dim()},
                             {r1, r2},
                             kernel - r1};
            report.entries.push_back(std::move(e));
        }
        {
            FiberMap last = fiber_map(ops[N - 1], l, pt, k[N - 1]);
            std::size_t rk = rank(last.matrix);
            ExactnessEntry e{PositionKind::terminal, static_cast<int>(N), l,
                             {last.domain_dim(), last.codomain_dim()}, {rk}, last.codomain_dim() - rk};
            report.entries.push_back(std::move(e));
        }
    }
    return report;
}

ExactnessReport check_formal_exactness(const OperatorComplex& c, int l_max, const std::vector<JetPoint>& points)
{
    if (points.empty())
        throw PreconditionError("at least one point is required");
    std::vector<ExactnessReport> reports;
    std::vector<std::size_t> totals;
    for (const auto& pt : points) {
        reports.push_back(check_formal_exactness(c, l_max, pt));
        std::size_t t = 0;
        for (const auto& e : reports.back().entries)
            t = std::accumulate(e.ranks.begin(), e.ranks.end(), t);
        totals.push_back(t);
    }
    std::size_t best = static_cast<std::size_t>(std::max_element(totals.begin(), totals.end()) - totals.begin());
    ExactnessReport report = std::move(reports[best]);
    if (std::adjacent_find(totals.begin(), totals.end(), std::not_equal_to<>()) != totals.end())
        report.warnings.push_back("fiber ranks differ across sample points; using the maximal-rank sample #" +
                                  std::to_string(best));
    return report;
}

std::size_t cokernel_rank(const CDiffOp& op, int k1, const JetPoint& pt)
{
    if (k1 < 1)
        throw PreconditionError("k1 must be positive");
    FiberMap base = fiber_map(op, 0, pt);
    if (rank(base.matrix) != base.codomain_dim())
        throw PreconditionError("the order-0 fiber map of the operator is not surjective at this point; "
                                "drop dependent equations first");
    FiberMap fm = fiber_map(op, k1, pt);
    return fm.codomain_dim() - rank(fm.matrix);
}

KLineReport kline_report(int k, int n)
{
    if (k < 1 || n < 1)
        throw PreconditionError("k-line report needs k >= 1 and n >= 1");
    KLineReport r;
    r.k = k;
    r.n = n;
    r.e1_q_max = n - k;
    r.cohomology_from = k;
    r.lines.push_back("complex length k = " + std::to_string(k) + ", n = " + std::to_string(n));
    if (n - k >= 0)
        r.lines.push_back("E1^{p,q} = 0 for p > 0 and q <= " + std::to_string(n - k));
    else
        r.lines.push_back("E1: no vanishing predicted (n - k < 0)");
    r.lines.push_back("C-cohomology H^i = 0 for i >= " + std::to_string(k));
    return r;
}

}  // namespace cdcalc
