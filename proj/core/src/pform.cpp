#include "cdcalc/pform.hpp"

#include <algorithm>

#include "cdcalc/errors.hpp"

namespace cdcalc {

Metric::Metric(std::vector<int> diagonal) : diag_(std::move(diagonal))
{
    if (diag_.empty())
        throw PreconditionError("metric needs at least one entry");
    for (int e : diag_)
        if (e != 1 && e != -1)
            throw PreconditionError("only diagonal metrics with entries +1/-1 are supported");
}

Metric Metric::diagonal(const std::vector<Rational>& entries)
{
    std::vector<int> d;
    for (const auto& e : entries) {
        if (e != 1 && e != -1)
            throw PreconditionError("metric entry " + to_string(e) + " unsupported; use +1 or -1");
        d.push_back(e == 1 ? 1 : -1);
    }
    return Metric(std::move(d));
}

Metric Metric::euclidean(int n)
{
    return Metric(std::vector<int>(static_cast<std::size_t>(n), 1));
}

int Metric::index() const noexcept
{
    return static_cast<int>(std::count(diag_.begin(), diag_.end(), -1));
}

int Metric::gram(const std::vector<int>& increasing) const
{
    int g = 1;
    for (int i : increasing)
        g *= diag_.at(i);
    return g;
}

namespace {

std::vector<int> complement(int n, const std::vector<int>& I)
{
    std::vector<int> c;
    for (int i = 0; i < n; ++i)
        if (!std::binary_search(I.begin(), I.end(), i))
            c.push_back(i);
    return c;
}

// ∗dx_I = coefficient · dx_{I^c}
int star_sign(const Metric& g, const std::vector<int>& I, int orientation)
{
    std::vector<int> seq = I;
    auto Ic = complement(g.n(), I);
    seq.insert(seq.end(), Ic.begin(), Ic.end());
    return orientation * permutation_sign(seq) * g.gram(I);
}

void check_orientation(int orientation)
{
    if (orientation != 1 && orientation != -1)
        throw PreconditionError("orientation must be +1 or -1");
}

}  // namespace

HorizontalForm hodge_star(const Metric& g, const HorizontalForm& omega, int orientation)
{
    check_orientation(orientation);
    const int n = g.n();
    if (omega.n() != n)
        throw DimensionError("metric and form dimensions differ");
    HorizontalForm out(n, n - omega.degree());
    for (const auto& [I, f] : omega.coefficients())
        out.add(complement(n, I), f * Rational(star_sign(g, I, orientation)));
    return out;
}

CDiffOp hodge_operator(const JetContextPtr& ctx, const Metric& g, int q, int orientation)
{
    check_orientation(orientation);
    const int n = ctx->n();
    if (g.n() != n)
        throw DimensionError("metric dimension differs from the number of independents");
    if (q < 0 || q > n)
        throw PreconditionError("form degree out of range");
    auto src = increasing_tuples(n, q);
    auto dst = increasing_tuples(n, n - q);
    CDiffOp op(ctx, static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c) {
        auto Ic = complement(n, src[c]);
        auto r = std::find(dst.begin(), dst.end(), Ic) - dst.begin();
        op.entry(static_cast<int>(r), static_cast<int>(c)).add({}, DiffPoly(star_sign(g, src[c], orientation)));
    }
    return op;
}

CDiffOp dstard_operator(const JetContextPtr& ctx, const Metric& g, int p, int orientation)
{
    const int n = ctx->n();
    if (p < 0 || p + 1 >= n)
        throw PreconditionError("d*d needs 0 <= p < n-1");
    return compose(dbar_operator(ctx, n - p - 1),
                   compose(hodge_operator(ctx, g, p + 1, orientation), dbar_operator(ctx, p)));
}

RationalMatrix wedge_matrix(int n, int k, const std::vector<Rational>& xi)
{
    if (static_cast<int>(xi.size()) != n)
        throw DimensionError("covector length differs from n");
    auto src = increasing_tuples(n, k);
    auto dst = increasing_tuples(n, k + 1);
    RationalMatrix m(dst.size(), src.size());
    for (std::size_t c = 0; c < src.size(); ++c)
        for (int i = 0; i < n; ++i) {
            if (sgn(xi[i]) == 0)
                continue;
            std::vector<int> seq{i};
            seq.insert(seq.end(), src[c].begin(), src[c].end());
            int sign = permutation_sign(seq);
            if (sign == 0)
                continue;
            std::sort(seq.begin(), seq.end());
            auto r = static_cast<std::size_t>(std::find(dst.begin(), dst.end(), seq) - dst.begin());
            m(r, c) += xi[i] * sign;
        }
    return m;
}

EpiResult epi_check(int n, int p, const Metric& g, const std::vector<Rational>& xi)
{
    if (p < 1 || p >= n - 1)
        throw PreconditionError("epi_check needs 1 <= p < n-1");
    if (g.n() != n)
        throw DimensionError("metric dimension differs from n");
    if (static_cast<int>(xi.size()) != n)
        throw DimensionError("covector length differs from n");
    if (std::all_of(xi.begin(), xi.end(), [](const Rational& x) { return sgn(x) == 0; }))
        throw PreconditionError("degenerate covector: xi = 0");

    const int k = n - p;
    RationalMatrix A_low = wedge_matrix(n, k - 1, xi);  // Λ^{k-1} → Λ^k
    RationalMatrix A = wedge_matrix(n, k, xi);          // Λ^k → Λ^{k+1}
    // A* = G_k^{-1} Aᵀ G_{k+1}; the Gram matrices are diagonal ±1
    RationalMatrix A_adj = A.transposed();
    auto rows = increasing_tuples(n, k);
    auto cols = increasing_tuples(n, k + 1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
            A_adj(r, c) *= g.gram(rows[r]) * g.gram(cols[c]);

    EpiResult res;
    res.rank = rank(hconcat(A_low, A_adj));
    res.dim = rows.size();
    res.surjective = res.rank == res.dim;
    return res;
}

int E1Table::dim(int i, int q) const
{
    auto it = dims.find({i, q});
    return it == dims.end() ? 0 : it->second;
}

E1Table e1_table(int n, int p)
{
    if (p < 1 || p >= n - 1)
        throw PreconditionError("e1_table needs 1 <= p < n-1");
    const int N = n - p - 1;
    // ω₁ has total degree N, ω₂ has N+1; odd generators square to zero
    const bool omega1_odd = N % 2 == 1;
    const bool omega2_odd = (N + 1) % 2 == 1;
    E1Table t;
    t.n = n;
    t.p = p;
    for (int a = 0; a * N <= n - 2; ++a) {
        if (omega1_odd && a > 1)
            break;
        for (int b = 0; (a + b) * N <= n - 2; ++b) {
            if (omega2_odd && b > 1)
                break;
            t.dims[{b, (a + b) * N}] += 1;
        }
    }
    return t;
}

}  // namespace cdcalc
