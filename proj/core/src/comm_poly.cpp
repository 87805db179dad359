#include "cdcalc/comm_poly.hpp"

#include <numeric>

#include "cdcalc/errors.hpp"

namespace cdcalc {

CommPoly CommPoly::constant(int nvars, const Rational& c)
{
    CommPoly p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

CommPoly CommPoly::variable(int nvars, int i)
{
    CommPoly p(nvars);
    Exponents e(nvars, 0);
    e.at(i) = 1;
    p.add_term(e, 1);
    return p;
}

CommPoly CommPoly::monomial(int nvars, const MultiIndex& sigma, const Rational& c)
{
    CommPoly p(nvars);
    Exponents e(nvars, 0);
    for (int i : sigma.entries())
        ++e.at(i);
    p.add_term(e, c);
    return p;
}

int CommPoly::homogeneous_degree() const
{
    int deg = -1;
    for (const auto& [e, c] : terms_) {
        int d = std::accumulate(e.begin(), e.end(), 0);
        if (deg >= 0 && d != deg)
            throw PreconditionError("polynomial is not homogeneous");
        deg = d;
    }
    return deg;
}

Rational CommPoly::coefficient(const Exponents& e) const
{
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void CommPoly::add_term(const Exponents& e, const Rational& c)
{
    if (static_cast<int>(e.size()) != nvars_)
        throw DimensionError("exponent vector length mismatch");
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

CommPoly& CommPoly::operator+=(const CommPoly& o)
{
    if (o.nvars_ != nvars_)
        throw DimensionError("variable count mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

CommPoly& CommPoly::operator-=(const CommPoly& o)
{
    if (o.nvars_ != nvars_)
        throw DimensionError("variable count mismatch");
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

CommPoly operator*(const CommPoly& a, const CommPoly& b)
{
    if (a.nvars_ != b.nvars_)
        throw DimensionError("variable count mismatch");
    CommPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            CommPoly::Exponents e(ea);
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] += eb[k];
            r.add_term(e, ca * cb);
        }
    return r;
}

CommPoly CommPoly::operator*(const Rational& c) const
{
    CommPoly r(nvars_);
    for (const auto& [e, v] : terms_)
        r.add_term(e, v * c);
    return r;
}

CommPoly CommPoly::pow(unsigned e) const
{
    CommPoly r = constant(nvars_, 1);
    for (unsigned k = 0; k < e; ++k)
        r = r * *this;
    return r;
}

std::string CommPoly::to_string(const std::vector<std::string>& names) const
{
    if (terms_.empty())
        return "0";
    // highest total degree first, then lexicographically largest exponents
    std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        int da = std::accumulate(a.first.begin(), a.first.end(), 0);
        int db = std::accumulate(b.first.begin(), b.first.end(), 0);
        if (da != db)
            return da > db;
        return a.first > b.first;
    });
    std::string s;
    for (const auto& [e, c] : ordered) {
        bool negative = sgn(c) < 0;
        Rational mag = abs(c);
        if (s.empty())
            s += negative ? "-" : "";
        else
            s += negative ? " - " : " + ";
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0)
                continue;
            if (!mono.empty())
                mono += '*';
            mono += names.at(k);
            if (e[k] > 1)
                mono += '^' + std::to_string(e[k]);
        }
        if (mono.empty())
            s += mag.get_str();
        else if (mag == 1)
            s += mono;
        else
            s += mag.get_str() + "*" + mono;
    }
    return s;
}

}  // namespace cdcalc
