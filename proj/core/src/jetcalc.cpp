#include "cdcalc/jetcalc.hpp"

#include <algorithm>

#include "cdcalc/errors.hpp"
#include "cdcalc/multi_index.hpp"

namespace cdcalc {

namespace {

class TotalDerivative {
public:
    TotalDerivative(const JetContext& ctx, int i) : ctx_(ctx), i_(i)
    {
        if (i < 0 || i >= ctx.n())
            throw PreconditionError("independent index out of range");
        evolution_time_ = ctx.is_evolution() && i == ctx.time_index();
    }

    DiffPoly operator()(const DiffPoly& f)
    {
        if (ctx_.is_evolution())
            ctx_.require_internal(f);
        DiffPoly out;
        for (const auto& [mono, coeff] : f.terms())
            for (const auto& [c, e] : mono.factors()) {
                DiffPoly dc = derivative_of(c);
                if (dc.is_zero())
                    continue;
                out += DiffPoly::term(mono.divide_by(c), coeff * e) * dc;
            }
        return out;
    }

private:
    DiffPoly derivative_of(const CoordId& c)
    {
        switch (c.kind) {
        case CoordId::Kind::independent:
            return c.index == i_ ? DiffPoly(1) : DiffPoly();
        case CoordId::Kind::parameter:
            return {};
        case CoordId::Kind::jet:
            break;
        }
        if (!evolution_time_)
            return DiffPoly::coord(CoordId::jet(c.index, c.sigma.with(i_)));
        // u^j_{x^k} ↦ D_x^k(f_j)
        auto key = std::make_pair(c.index, static_cast<int>(c.sigma.order()));
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        DiffPoly v = ctx_.evolution_rhs()[c.index];
        TotalDerivative dx(ctx_, ctx_.space_index());
        for (std::size_t k = 0; k < c.sigma.order(); ++k)
            v = dx(v);
        cache_.emplace(key, v);
        return v;
    }

    const JetContext& ctx_;
    int i_;
    bool evolution_time_ = false;
    std::map<std::pair<int, int>, DiffPoly> cache_;
};

}  // namespace

DiffPoly total_derivative(const JetContext& ctx, int i, const DiffPoly& f)
{
    return TotalDerivative(ctx, i)(f);
}

DiffPoly total_derivative(const JetContext& ctx, const MultiIndex& sigma, const DiffPoly& f)
{
    DiffPoly out = f;
    for (int i : sigma.entries()) {
        if (out.is_zero())
            break;
        out = total_derivative(ctx, i, out);
    }
    return out;
}

// ---------------------------------------------------------------------------

HorizontalForm::HorizontalForm(int n, int degree) : n_(n), degree_(degree)
{
    if (n < 1 || degree < 0 || degree > n)
        throw PreconditionError("form degree out of range");
}

HorizontalForm HorizontalForm::scalar(int n, const DiffPoly& f)
{
    HorizontalForm w(n, 0);
    w.add({}, f);
    return w;
}

HorizontalForm HorizontalForm::monomial(int n, const Tuple& indices, const DiffPoly& f)
{
    HorizontalForm w(n, static_cast<int>(indices.size()));
    int sign = permutation_sign(indices);
    if (sign == 0)
        return w;
    for (int i : indices)
        if (i < 0 || i >= n)
            throw PreconditionError("form index out of range");
    Tuple sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    w.add(sorted, sign > 0 ? f : -f);
    return w;
}

DiffPoly HorizontalForm::coefficient(const Tuple& increasing) const
{
    auto it = coeffs_.find(increasing);
    return it == coeffs_.end() ? DiffPoly() : it->second;
}

void HorizontalForm::add(const Tuple& increasing, const DiffPoly& f)
{
    if (f.is_zero())
        return;
    if (static_cast<int>(increasing.size()) != degree_)
        throw PreconditionError("index tuple length does not match form degree");
    DiffPoly& slot = coeffs_[increasing];
    slot += f;
    if (slot.is_zero())
        coeffs_.erase(increasing);
}

HorizontalForm& HorizontalForm::operator+=(const HorizontalForm& o)
{
    if (o.n_ != n_ || (o.degree_ != degree_ && !o.is_zero() && !is_zero()))
        throw DimensionError("adding forms of different degree or dimension");
    if (is_zero())
        degree_ = o.degree_;
    for (const auto& [t, f] : o.coeffs_)
        add(t, f);
    return *this;
}

HorizontalForm& HorizontalForm::operator-=(const HorizontalForm& o)
{
    HorizontalForm neg = o.scaled(DiffPoly(-1));
    return *this += neg;
}

HorizontalForm HorizontalForm::scaled(const DiffPoly& f) const
{
    HorizontalForm out(n_, degree_);
    for (const auto& [t, c] : coeffs_)
        out.add(t, c * f);
    return out;
}

std::vector<DiffPoly> HorizontalForm::to_vector() const
{
    std::vector<DiffPoly> v;
    for (const auto& t : increasing_tuples(n_, degree_))
        v.push_back(coefficient(t));
    return v;
}

HorizontalForm HorizontalForm::from_vector(int n, int degree, const std::vector<DiffPoly>& v)
{
    auto tuples = increasing_tuples(n, degree);
    if (tuples.size() != v.size())
        throw DimensionError("component count does not match the form degree");
    HorizontalForm w(n, degree);
    for (std::size_t k = 0; k < v.size(); ++k)
        w.add(tuples[k], v[k]);
    return w;
}

HorizontalForm dbar(const JetContext& ctx, const HorizontalForm& form)
{
    if (form.n() != ctx.n())
        throw DimensionError("form dimension does not match the jet space");
    if (form.degree() == form.n())
        return HorizontalForm(form.n(), form.n());
    HorizontalForm out(form.n(), form.degree() + 1);
    for (const auto& [tuple, f] : form.coefficients())
        for (int i = 0; i < form.n(); ++i) {
            if (std::find(tuple.begin(), tuple.end(), i) != tuple.end())
                continue;
            std::vector<int> idx{i};
            idx.insert(idx.end(), tuple.begin(), tuple.end());
            out += HorizontalForm::monomial(form.n(), idx, total_derivative(ctx, i, f));
        }
    return out;
}

HorizontalForm wedge(const HorizontalForm& a, const HorizontalForm& b)
{
    if (a.n() != b.n())
        throw DimensionError("wedge of forms over different dimensions");
    int deg = a.degree() + b.degree();
    if (deg > a.n())
        return HorizontalForm(a.n(), a.n());
    HorizontalForm out(a.n(), deg);
    for (const auto& [ta, fa] : a.coefficients())
        for (const auto& [tb, fb] : b.coefficients()) {
            std::vector<int> idx = ta;
            idx.insert(idx.end(), tb.begin(), tb.end());
            out += HorizontalForm::monomial(a.n(), idx, fa * fb);
        }
    return out;
}

}  // namespace cdcalc
