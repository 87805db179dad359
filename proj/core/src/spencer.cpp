#include "cdcalc/spencer.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "cdcalc/errors.hpp"
#include "cdcalc/jetcalc.hpp"

namespace cdcalc {

namespace {

template <class Key>
std::map<Key, std::size_t> positions(const std::vector<Key>& list)
{
    std::map<Key, std::size_t> pos;
    for (std::size_t k = 0; k < list.size(); ++k)
        pos.emplace(list[k], k);
    return pos;
}

// D_τ(a) for every |τ| ≤ l, each built from its parent by one total derivative.
std::map<MultiIndex, DiffPoly> derivative_table(const JetContext& ctx, const DiffPoly& a, int l)
{
    std::map<MultiIndex, DiffPoly> table;
    for (const auto& tau : multi_indices_up_to(ctx.n(), l)) {
        if (tau.empty()) {
            table.emplace(tau, a);
            continue;
        }
        auto e = tau.entries();
        MultiIndex parent(std::vector<int>(e.begin(), e.end() - 1));
        table.emplace(tau, total_derivative(ctx, e.back(), table.at(parent)));
    }
    return table;
}

Rational evaluate_checked(const DiffPoly& f, const JetPoint& pt)
{
    int order = f.max_jet_order();
    if (order >= 0)
        pt.require_order(order);
    return evaluate(f, pt);
}

int effective_order(const CDiffOp& op)
{
    return std::max(op.order(), 1);
}

// Matrix of the degree-r symbol map S^r ⊗ P₀ → S^{r−k} ⊗ P₁, p ↦ Σ_ρ a^ρ p_{ρ+τ}.
RationalMatrix symbol_map(const CDiffOp& op, int k, int r, const JetPoint& pt)
{
    const int n = op.context().n();
    const int r0 = op.cols();
    const int r1 = op.rows();
    auto src = multi_indices_of_order(n, r);
    auto dst = multi_indices_of_order(n, r - k);
    auto src_pos = positions(src);
    RationalMatrix m(dst.size() * r1, src.size() * r0);
    for (int s = 0; s < r1; ++s)
        for (int j = 0; j < r0; ++j)
            for (const auto& [rho, a] : op.entry(s, j).terms()) {
                if (static_cast<int>(rho.order()) != k)
                    continue;
                Rational v = evaluate_checked(a, pt);
                if (sgn(v) == 0)
                    continue;
                for (std::size_t t = 0; t < dst.size(); ++t)
                    m(t * r1 + s, src_pos.at(rho + dst[t]) * r0 + j) += v;
            }
    return m;
}

// Columns span g^r inside S^r ⊗ P₀.
RationalMatrix symbolic_module(const CDiffOp& op, int k, int r, const JetPoint& pt)
{
    if (r < 0)
        return RationalMatrix(0, 0);
    std::size_t full = multi_indices_of_order(op.context().n(), r).size() * op.cols();
    if (r < k)
        return RationalMatrix::identity(full);
    return kernel_basis(symbol_map(op, k, r, pt));
}

std::size_t restricted_delta_rank(int n, int rank, int r, int s, const RationalMatrix& g)
{
    if (s < 0 || s >= n || r < 1 || g.cols() == 0)
        return 0;
    auto delta = delta_map(n, rank, r, s);
    return cdcalc::rank(delta.matrix * block_diagonal(g, increasing_tuples(n, s).size()));
}

std::size_t symbol_signature(const CDiffOp& op, int l_max, const JetPoint& pt)
{
    const int k = effective_order(op);
    std::size_t total = 0;
    for (int r = k; r <= k + l_max + 1; ++r)
        total += cdcalc::rank(symbol_map(op, k, r, pt));
    return total;
}

}  // namespace

SymbolMatrix symbol(const CDiffOp& op, const JetPoint& pt)
{
    SymbolMatrix sym;
    sym.n = op.context().n();
    sym.rows = op.rows();
    sym.cols = op.cols();
    sym.degree = op.order();
    sym.entries.assign(static_cast<std::size_t>(sym.rows) * sym.cols, CommPoly(sym.n));
    for (int s = 0; s < sym.rows; ++s)
        for (int j = 0; j < sym.cols; ++j)
            for (const auto& [sigma, a] : op.entry(s, j).terms())
                if (static_cast<int>(sigma.order()) == sym.degree)
                    sym.entries[static_cast<std::size_t>(s) * sym.cols + j] +=
                        CommPoly::monomial(sym.n, sigma, evaluate_checked(a, pt));
    return sym;
}

std::size_t fiber_dim(int n, int rank, int order)
{
    if (order < 0)
        return 0;
    return static_cast<std::size_t>(rank) * binomial(static_cast<unsigned>(n + order), static_cast<unsigned>(n)).get_ui();
}

std::vector<std::pair<MultiIndex, int>> fiber_basis(int n, int rank, int order)
{
    std::vector<std::pair<MultiIndex, int>> basis;
    for (const auto& sigma : multi_indices_up_to(n, order))
        for (int j = 0; j < rank; ++j)
            basis.emplace_back(sigma, j);
    return basis;
}

int required_point_order(const CDiffOp& op, int l)
{
    int order = 0;
    for (int s = 0; s < op.rows(); ++s)
        for (int j = 0; j < op.cols(); ++j)
            for (const auto& [sigma, a] : op.entry(s, j).terms())
                for (const auto& [tau, d] : derivative_table(op.context(), a, l))
                    order = std::max(order, d.max_jet_order());
    return order;
}

FiberMap fiber_map(const CDiffOp& op, int l, const JetPoint& pt, std::optional<int> declared_order)
{
    const int K = declared_order.value_or(op.order());
    if (K < op.order())
        throw PreconditionError("declared order " + std::to_string(K) + " is below the operator order " +
                                std::to_string(op.order()));
    if (l < 0)
        throw PreconditionError("prolongation order must be nonnegative");
    const JetContext& ctx = op.context();
    const int n = ctx.n();
    const int r0 = op.cols();
    const int r1 = op.rows();
    auto src = multi_indices_up_to(n, K + l);
    auto dst = multi_indices_up_to(n, l);
    auto src_pos = positions(src);

    FiberMap fm{{r0, K + l}, {r1, l}, RationalMatrix(dst.size() * r1, src.size() * r0)};
    for (int s = 0; s < r1; ++s)
        for (int j = 0; j < r0; ++j)
            for (const auto& [sigma, a] : op.entry(s, j).terms()) {
                std::map<MultiIndex, Rational> values;
                for (const auto& [tau, d] : derivative_table(ctx, a, l))
                    values.emplace(tau, evaluate_checked(d, pt));
                for (std::size_t t = 0; t < dst.size(); ++t)
                    for_each_submultiset(dst[t], [&](const MultiIndex& tau1, const Integer& mult) {
                        const Rational& v = values.at(tau1);
                        if (sgn(v) == 0)
                            return;
                        std::size_t col = src_pos.at((dst[t] - tau1) + sigma);
                        fm.matrix(t * r1 + s, col * r0 + j) += Rational(mult) * v;
                    });
            }
    return fm;
}

FiberMap delta_map(int n, int rank, int r, int s)
{
    if (n < 1 || rank < 1)
        throw PreconditionError("delta_map needs n >= 1 and rank >= 1");
    if (r < 1 || s < 0 || s >= n)
        throw PreconditionError("delta_map degrees out of range (need r >= 1, 0 <= s < n)");
    auto src_tuples = increasing_tuples(n, s);
    auto dst_tuples = increasing_tuples(n, s + 1);
    auto src_sym = multi_indices_of_order(n, r);
    auto dst_sym = multi_indices_of_order(n, r - 1);
    auto tuple_pos = positions(src_tuples);
    auto sym_pos = positions(src_sym);
    const std::size_t src_block = src_sym.size() * rank;
    const std::size_t dst_block = dst_sym.size() * rank;

    FiberMap fm{{rank, r}, {rank, r - 1}, RationalMatrix(dst_tuples.size() * dst_block, src_tuples.size() * src_block)};
    const int parity = (s % 2 == 0) ? 1 : -1;
    for (std::size_t J = 0; J < dst_tuples.size(); ++J)
        for (std::size_t p = 0; p < dst_tuples[J].size(); ++p) {
            const int i = dst_tuples[J][p];
            std::vector<int> I = dst_tuples[J];
            I.erase(I.begin() + static_cast<long>(p));
            std::vector<int> seq = I;
            seq.push_back(i);
            const int sign = parity * permutation_sign(seq);
            const std::size_t I_pos = tuple_pos.at(I);
            for (std::size_t t = 0; t < dst_sym.size(); ++t) {
                const std::size_t src_sigma = sym_pos.at(dst_sym[t].with(i));
                for (int j = 0; j < rank; ++j)
                    fm.matrix(J * dst_block + t * rank + j, I_pos * src_block + src_sigma * rank + j) += sign;
            }
        }
    return fm;
}

bool SpencerReport::involutive() const
{
    return !first_failure().has_value();
}

std::optional<std::pair<int, int>> SpencerReport::first_failure() const
{
    for (std::size_t l = 0; l < dims.size(); ++l)
        for (std::size_t i = 0; i < dims[l].size(); ++i)
            if (dims[l][i] != 0)
                return std::make_pair(static_cast<int>(l), static_cast<int>(i));
    return std::nullopt;
}

int spencer_point_order(const CDiffOp& op)
{
    const int k = effective_order(op);
    int order = 0;
    for (int s = 0; s < op.rows(); ++s)
        for (int j = 0; j < op.cols(); ++j)
            for (const auto& [sigma, a] : op.entry(s, j).terms())
                if (static_cast<int>(sigma.order()) == k)
                    order = std::max(order, a.max_jet_order());
    return order;
}

SpencerReport spencer_cohomology(const CDiffOp& op, int l_max, const JetPoint& pt)
{
    if (l_max < 0)
        throw PreconditionError("l_max must be nonnegative");
    const int n = op.context().n();
    const int rank = op.cols();
    const int k = effective_order(op);
    SpencerReport report;
    report.order = k;
    report.l_max = l_max;
    report.n = n;

    std::map<int, RationalMatrix> g;
    auto module = [&](int r) -> const RationalMatrix& {
        auto it = g.find(r);
        if (it == g.end())
            it = g.emplace(r, symbolic_module(op, k, r, pt)).first;
        return it->second;
    };

    for (int l = 0; l <= l_max; ++l) {
        const int r = k + l;
        std::vector<std::size_t> row(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) {
            const RationalMatrix& gr = module(r);
            std::size_t space = increasing_tuples(n, i).size() * gr.cols();
            std::size_t out = restricted_delta_rank(n, rank, r, i, gr);
            std::size_t in = i > 0 ? restricted_delta_rank(n, rank, r + 1, i - 1, module(r + 1)) : 0;
            if (out + in > space)
                throw std::logic_error("spencer: image exceeds kernel (delta is not a differential)");
            row[i] = space - out - in;
        }
        if (row[0] != 0 || (n >= 1 && row[1] != 0))
            throw std::logic_error("spencer: nonzero cohomology in exterior degree 0 or 1");
        report.dims.push_back(std::move(row));
    }
    return report;
}

SpencerReport spencer_cohomology(const CDiffOp& op, int l_max, const std::vector<JetPoint>& points)
{
    if (points.empty())
        throw PreconditionError("at least one point is required");
    std::size_t best = 0;
    std::vector<std::size_t> signatures;
    for (const auto& pt : points)
        signatures.push_back(symbol_signature(op, l_max, pt));
    for (std::size_t p = 1; p < points.size(); ++p)
        if (signatures[p] > signatures[best])
            best = p;
    SpencerReport report = spencer_cohomology(op, l_max, points[best]);
    if (std::adjacent_find(signatures.begin(), signatures.end(), std::not_equal_to<>()) != signatures.end())
        report.warnings.push_back("symbol ranks differ across sample points; using the maximal-rank sample #" +
                                  std::to_string(best));
    return report;
}

InvolutivityResult is_involutive(const SpencerReport& report)
{
    InvolutivityResult res;
    res.failure = report.first_failure();
    res.involutive = !res.failure.has_value();
    res.tested_up_to = report.l_max;
    return res;
}

InvolutivityResult is_involutive(const CDiffOp& op, int l_max, const JetPoint& pt)
{
    return is_involutive(spencer_cohomology(op, l_max, pt));
}

TwoLineResult two_line_polynomial(int k, int p, int sign)
{
    if (k < 1 || p < 1)
        throw PreconditionError("two-line check needs k >= 1 and p >= 1");
    if (sign != 1 && sign != -1)
        throw PreconditionError("sign must be +1 or -1");
    CommPoly power_sum(p);
    CommPoly linear(p);
    for (int i = 0; i < p; ++i) {
        power_sum += CommPoly::variable(p, i).pow(static_cast<unsigned>(k));
        linear += CommPoly::variable(p, i);
    }
    TwoLineResult res;
    res.polynomial = power_sum + linear.pow(static_cast<unsigned>(k)) * Rational(sign);
    res.nonzero = !res.polynomial.is_zero();
    return res;
}

}  // namespace cdcalc
