#include "cdcalc/opalgebra.hpp"

#include <algorithm>

#include "cdcalc/errors.hpp"
#include "cdcalc/jetcalc.hpp"

namespace cdcalc {

ScalarCDiffOp::ScalarCDiffOp(Terms terms)
{
    for (auto& [sigma, c] : terms)
        add(sigma, c);
}

ScalarCDiffOp ScalarCDiffOp::multiplication(const DiffPoly& f)
{
    return derivative(MultiIndex{}, f);
}

ScalarCDiffOp ScalarCDiffOp::derivative(const MultiIndex& sigma, const DiffPoly& coeff)
{
    ScalarCDiffOp op;
    op.add(sigma, coeff);
    return op;
}

DiffPoly ScalarCDiffOp::coefficient(const MultiIndex& sigma) const
{
    auto it = terms_.find(sigma);
    return it == terms_.end() ? DiffPoly() : it->second;
}

int ScalarCDiffOp::order() const noexcept
{
    return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.order());
}

void ScalarCDiffOp::add(const MultiIndex& sigma, const DiffPoly& coeff)
{
    if (coeff.is_zero())
        return;
    DiffPoly& slot = terms_[sigma];
    slot += coeff;
    if (slot.is_zero())
        terms_.erase(sigma);
}

ScalarCDiffOp& ScalarCDiffOp::operator+=(const ScalarCDiffOp& o)
{
    for (const auto& [sigma, c] : o.terms_)
        add(sigma, c);
    return *this;
}

ScalarCDiffOp& ScalarCDiffOp::operator-=(const ScalarCDiffOp& o)
{
    for (const auto& [sigma, c] : o.terms_)
        add(sigma, -c);
    return *this;
}

ScalarCDiffOp ScalarCDiffOp::left_multiplied(const DiffPoly& f) const
{
    ScalarCDiffOp out;
    for (const auto& [sigma, c] : terms_)
        out.add(sigma, f * c);
    return out;
}

// ---------------------------------------------------------------------------

CDiffOp::CDiffOp(JetContextPtr ctx, int rows, int cols)
    : ctx_(std::move(ctx)), rows_(rows), cols_(cols), entries_(static_cast<std::size_t>(rows) * cols)
{
    if (!ctx_)
        throw PreconditionError("operator needs a jet context");
    if (rows < 1 || cols < 1)
        throw DimensionError("operator matrices must be at least 1x1");
}

CDiffOp CDiffOp::identity(JetContextPtr ctx, int size)
{
    CDiffOp op(std::move(ctx), size, size);
    for (int i = 0; i < size; ++i)
        op.entry(i, i) = ScalarCDiffOp::multiplication(DiffPoly(1));
    return op;
}

CDiffOp CDiffOp::scalar(JetContextPtr ctx, ScalarCDiffOp op)
{
    CDiffOp out(std::move(ctx), 1, 1);
    out.entry(0, 0) = std::move(op);
    return out;
}

std::size_t CDiffOp::index(int r, int c) const
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw DimensionError("operator entry out of range");
    return static_cast<std::size_t>(r) * cols_ + c;
}

int CDiffOp::order() const noexcept
{
    int k = 0;
    for (const auto& e : entries_)
        k = std::max(k, e.order());
    return k;
}

bool CDiffOp::is_zero() const noexcept
{
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.is_zero(); });
}

CDiffOp& CDiffOp::operator+=(const CDiffOp& o)
{
    if (o.rows_ != rows_ || o.cols_ != cols_)
        throw DimensionError("operator sum dimension mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k)
        entries_[k] += o.entries_[k];
    return *this;
}

CDiffOp& CDiffOp::operator-=(const CDiffOp& o)
{
    if (o.rows_ != rows_ || o.cols_ != cols_)
        throw DimensionError("operator difference dimension mismatch");
    for (std::size_t k = 0; k < entries_.size(); ++k)
        entries_[k] -= o.entries_[k];
    return *this;
}

// ---------------------------------------------------------------------------

DiffPoly apply(const JetContext& ctx, const ScalarCDiffOp& op, const DiffPoly& f)
{
    DiffPoly out;
    for (const auto& [sigma, a] : op.terms())
        out += a * total_derivative(ctx, sigma, f);
    return out;
}

std::vector<DiffPoly> apply(const CDiffOp& op, const std::vector<DiffPoly>& v)
{
    if (static_cast<int>(v.size()) != op.cols())
        throw DimensionError("operator applied to a vector of the wrong length");
    std::vector<DiffPoly> out(op.rows());
    for (int s = 0; s < op.rows(); ++s)
        for (int j = 0; j < op.cols(); ++j)
            out[s] += apply(op.context(), op.entry(s, j), v[j]);
    return out;
}

ScalarCDiffOp compose(const JetContext& ctx, const ScalarCDiffOp& second, const ScalarCDiffOp& first)
{
    ScalarCDiffOp out;
    // D_{α₁}(c^β), shared across terms of `second`
    std::map<std::pair<MultiIndex, MultiIndex>, DiffPoly> derivs;
    auto derivative_of = [&](const MultiIndex& beta, const MultiIndex& alpha1, const DiffPoly& c) -> const DiffPoly& {
        auto key = std::make_pair(beta, alpha1);
        auto it = derivs.find(key);
        if (it != derivs.end())
            return it->second;
        return derivs.emplace(key, total_derivative(ctx, alpha1, c)).first->second;
    };
    for (const auto& [alpha, b] : second.terms())
        for (const auto& [beta, c] : first.terms())
            for_each_submultiset(alpha, [&](const MultiIndex& alpha1, const Integer& mult) {
                const DiffPoly& dc = derivative_of(beta, alpha1, c);
                if (dc.is_zero())
                    return;
                out.add((alpha - alpha1) + beta, (b * dc) * Rational(mult));
            });
    return out;
}

CDiffOp compose(const CDiffOp& second, const CDiffOp& first)
{
    if (second.cols() != first.rows())
        throw DimensionError("composition dimension mismatch: " + std::to_string(second.cols()) + " vs " +
                             std::to_string(first.rows()));
    if (second.context().n() != first.context().n())
        throw DimensionError("composition of operators over different jet spaces");
    CDiffOp out(second.context_ptr(), second.rows(), first.cols());
    for (int s = 0; s < second.rows(); ++s)
        for (int j = 0; j < first.cols(); ++j)
            for (int k = 0; k < second.cols(); ++k) {
                if (second.entry(s, k).is_zero() || first.entry(k, j).is_zero())
                    continue;
                out.entry(s, j) += compose(second.context(), second.entry(s, k), first.entry(k, j));
            }
    return out;
}

ScalarCDiffOp adjoint(const JetContext& ctx, const ScalarCDiffOp& op)
{
    ScalarCDiffOp out;
    for (const auto& [sigma, f] : op.terms()) {
        DiffPoly sign = (sigma.order() % 2 == 0) ? DiffPoly(1) : DiffPoly(-1);
        out += compose(ctx, ScalarCDiffOp::derivative(sigma, sign), ScalarCDiffOp::multiplication(f));
    }
    return out;
}

CDiffOp adjoint(const CDiffOp& op)
{
    CDiffOp out(op.context_ptr(), op.cols(), op.rows());
    for (int s = 0; s < op.rows(); ++s)
        for (int j = 0; j < op.cols(); ++j)
            out.entry(j, s) = adjoint(op.context(), op.entry(s, j));
    return out;
}

CDiffOp linearize(const JetContextPtr& ctx, const std::vector<DiffPoly>& F)
{
    if (ctx->is_evolution())
        throw PreconditionError("linearization is computed on the free jet space");
    if (F.empty())
        throw DimensionError("linearization of an empty system");
    if (ctx->m() == 0)
        throw DimensionError("linearization needs at least one dependent variable");
    CDiffOp out(ctx, static_cast<int>(F.size()), ctx->m());
    for (std::size_t s = 0; s < F.size(); ++s)
        for (const auto& c : F[s].coordinates())
            if (c.is_jet())
                out.entry(static_cast<int>(s), c.index).add(c.sigma, F[s].partial(c));
    return out;
}

std::vector<DiffPoly> green_remainder(const CDiffOp& op, const std::vector<DiffPoly>& p,
                                      const std::vector<DiffPoly>& q)
{
    if (static_cast<int>(p.size()) != op.cols() || static_cast<int>(q.size()) != op.rows())
        throw DimensionError("green_remainder: vector lengths do not match the operator");
    const JetContext& ctx = op.context();
    std::vector<DiffPoly> R(ctx.n());
    for (int s = 0; s < op.rows(); ++s)
        for (int j = 0; j < op.cols(); ++j)
            for (const auto& [sigma, a] : op.entry(s, j).terms()) {
                if (p[j].is_zero())
                    continue;
                // g · D_{i₁…i_r}(p) = D_{i₁}(g · D_{i₂…}(p)) − D_{i₁}(g) · D_{i₂…}(p)
                DiffPoly g = q[s] * a;
                auto entries = sigma.entries();
                for (std::size_t k = 0; k < entries.size(); ++k) {
                    int i = entries[k];
                    MultiIndex rest(std::vector<int>(entries.begin() + static_cast<long>(k) + 1, entries.end()));
                    R[i] += g * total_derivative(ctx, rest, p[j]);
                    g = -total_derivative(ctx, i, g);
                }
            }
    return R;
}

CDiffOp dbar_operator(const JetContextPtr& ctx, int q)
{
    const int n = ctx->n();
    if (q < 0 || q >= n)
        throw PreconditionError("dbar operator degree out of range");
    auto src = increasing_tuples(n, q);
    auto dst = increasing_tuples(n, q + 1);
    CDiffOp op(ctx, static_cast<int>(dst.size()), static_cast<int>(src.size()));
    for (std::size_t c = 0; c < src.size(); ++c)
        for (int i = 0; i < n; ++i) {
            std::vector<int> idx{i};
            idx.insert(idx.end(), src[c].begin(), src[c].end());
            int sign = permutation_sign(idx);
            if (sign == 0)
                continue;
            std::sort(idx.begin(), idx.end());
            auto r = std::find(dst.begin(), dst.end(), idx) - dst.begin();
            op.entry(static_cast<int>(r), static_cast<int>(c)).add(MultiIndex{i}, DiffPoly(sign));
        }
    return op;
}

// ---------------------------------------------------------------------------

namespace {

std::string derivative_name(const MultiIndex& sigma, const JetContext& ctx)
{
    std::string s = "D_{";
    bool first = true;
    for (int i : sigma.entries()) {
        if (!first)
            s += ',';
        first = false;
        s += ctx.independents()[i];
    }
    return s + "}";
}

}  // namespace

std::string to_string(const ScalarCDiffOp& op, const JetContext& ctx)
{
    if (op.is_zero())
        return "0";
    std::string s;
    auto append = [&s](bool negative, const std::string& body) {
        if (s.empty())
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        s += body;
    };
    for (auto it = op.terms().rbegin(); it != op.terms().rend(); ++it) {
        const auto& [sigma, a] = *it;
        if (sigma.empty()) {
            // zeroth-order part: its terms inline
            for (auto t = a.terms().rbegin(); t != a.terms().rend(); ++t) {
                DiffPoly mono = DiffPoly::term(t->first, abs(t->second));
                append(sgn(t->second) < 0, to_string(mono, ctx));
            }
            continue;
        }
        std::string d = derivative_name(sigma, ctx);
        if (a.size() == 1) {
            const auto& [m, c] = *a.terms().begin();
            DiffPoly mag = DiffPoly::term(m, abs(c));
            append(sgn(c) < 0, mag == DiffPoly(1) ? d : to_string(mag, ctx) + "*" + d);
        } else {
            append(false, "(" + to_string(a, ctx) + ")*" + d);
        }
    }
    return s;
}

std::string to_string(const CDiffOp& op)
{
    std::string s;
    for (int r = 0; r < op.rows(); ++r) {
        if (r > 0)
            s += '\n';
        for (int c = 0; c < op.cols(); ++c) {
            if (c > 0)
                s += " ; ";
            s += to_string(op.entry(r, c), op.context());
        }
    }
    return s;
}

}  // namespace cdcalc
