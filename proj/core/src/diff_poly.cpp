#include "cdcalc/diff_poly.hpp"

#include <algorithm>

#include "cdcalc/jet_context.hpp"

namespace cdcalc {

std::strong_ordering CoordId::operator<=>(const CoordId& other) const
{
    if (auto c = kind <=> other.kind; c != 0)
        return c;
    if (auto c = index <=> other.index; c != 0)
        return c;
    return sigma <=> other.sigma;
}

// ---------------------------------------------------------------------------

Monomial::Monomial(const CoordId& c, int exponent)
{
    if (exponent > 0)
        factors_.emplace_back(c, exponent);
}

int Monomial::degree() const noexcept
{
    int d = 0;
    for (const auto& f : factors_)
        d += f.second;
    return d;
}

int Monomial::exponent(const CoordId& c) const
{
    auto it = std::lower_bound(factors_.begin(), factors_.end(), c,
                               [](const Factor& f, const CoordId& key) { return f.first < key; });
    return (it != factors_.end() && it->first == c) ? it->second : 0;
}

Monomial Monomial::operator*(const Monomial& other) const
{
    Monomial r;
    r.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin();
    auto b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first))
            r.factors_.push_back(*a++);
        else if (a == factors_.end() || b->first < a->first)
            r.factors_.push_back(*b++);
        else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::divide_by(const CoordId& c) const
{
    Monomial r = *this;
    for (auto it = r.factors_.begin(); it != r.factors_.end(); ++it)
        if (it->first == c) {
            if (--it->second == 0)
                r.factors_.erase(it);
            return r;
        }
    return r;
}

std::strong_ordering Monomial::operator<=>(const Monomial& other) const
{
    if (auto c = degree() <=> other.degree(); c != 0)
        return c;
    return factors_ <=> other.factors_;
}

// ---------------------------------------------------------------------------

DiffPoly::DiffPoly(const Rational& c)
{
    if (!(sgn(c) == 0))
        terms_.emplace(Monomial{}, canonical(c));
}

DiffPoly DiffPoly::coord(const CoordId& c)
{
    return term(Monomial(c), 1);
}

DiffPoly DiffPoly::term(const Monomial& m, const Rational& c)
{
    DiffPoly p;
    p.add_term(m, canonical(c));
    return p;
}

bool DiffPoly::is_constant() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational DiffPoly::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

int DiffPoly::degree() const noexcept
{
    return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
}

void DiffPoly::add_term(const Monomial& m, const Rational& c)
{
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o)
{
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b)
{
    DiffPoly r;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_)
            r.add_term(ma * mb, ca * cb);
    return r;
}

DiffPoly& DiffPoly::operator*=(const DiffPoly& o)
{
    *this = *this * o;
    return *this;
}

DiffPoly& DiffPoly::operator*=(const Rational& c)
{
    if (sgn(c) == 0) {
        terms_.clear();
        return *this;
    }
    const Rational k = canonical(c);
    for (auto& [m, v] : terms_)
        v *= k;
    return *this;
}

DiffPoly DiffPoly::operator-() const
{
    DiffPoly r = *this;
    for (auto& [m, v] : r.terms_)
        v = -v;
    return r;
}

DiffPoly DiffPoly::pow(unsigned e) const
{
    DiffPoly result(1);
    DiffPoly base = *this;
    while (e > 0) {
        if (e & 1U)
            result *= base;
        e >>= 1U;
        if (e > 0)
            base *= base;
    }
    return result;
}

DiffPoly DiffPoly::partial(const CoordId& c) const
{
    DiffPoly r;
    for (const auto& [m, v] : terms_) {
        int e = m.exponent(c);
        if (e > 0)
            r.add_term(m.divide_by(c), v * e);
    }
    return r;
}

std::set<CoordId> DiffPoly::coordinates() const
{
    std::set<CoordId> out;
    for (const auto& [m, v] : terms_)
        for (const auto& f : m.factors())
            out.insert(f.first);
    return out;
}

int DiffPoly::max_jet_order() const
{
    int best = -1;
    for (const auto& c : coordinates())
        if (c.is_jet())
            best = std::max(best, static_cast<int>(c.sigma.order()));
    return best;
}

// ---------------------------------------------------------------------------

std::string to_string(const CoordId& c, const JetContext& ctx)
{
    switch (c.kind) {
    case CoordId::Kind::independent:
        return ctx.independents().at(c.index);
    case CoordId::Kind::parameter:
        return ctx.parameters().at(c.index);
    case CoordId::Kind::jet:
        break;
    }
    std::string s = ctx.dependents().at(c.index);
    if (c.sigma.empty())
        return s;
    if (ctx.short_jet_names()) {
        s += '_';
        for (int i : c.sigma.entries())
            s += ctx.independents()[i];
        return s;
    }
    s += "_{";
    bool first = true;
    for (int i : c.sigma.entries()) {
        if (!first)
            s += ',';
        first = false;
        s += ctx.independents()[i];
    }
    return s + "}";
}

std::string to_string(const Monomial& m, const JetContext& ctx)
{
    std::string s;
    for (const auto& [c, e] : m.factors()) {
        if (!s.empty())
            s += '*';
        s += to_string(c, ctx);
        if (e > 1)
            s += '^' + std::to_string(e);
    }
    return s.empty() ? "1" : s;
}

std::string to_string(const DiffPoly& f, const JetContext& ctx)
{
    if (f.is_zero())
        return "0";
    std::string s;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        bool negative = sgn(c) < 0;
        Rational mag = abs(c);
        if (s.empty())
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        if (m.is_one())
            s += mag.get_str();
        else if (mag == 1)
            s += to_string(m, ctx);
        else
            s += mag.get_str() + "*" + to_string(m, ctx);
    }
    return s;
}

}  // namespace cdcalc
