#include "cdcalc/expr_parser.hpp"

#include <cctype>
#include <string>

#include "cdcalc/errors.hpp"
#include "parser_detail.hpp"

namespace cdcalc {
namespace detail {
namespace {

class Parser {
public:
    Parser(std::string_view text, const JetContext& ctx, bool allow_derivatives)
        : text_(text), ctx_(ctx), allow_derivatives_(allow_derivatives) {}

    OpTerms parse_all()
    {
        skip_ws();
        if (at_end())
            fail("empty expression", pos_);
        OpTerms v = expr();
        skip_ws();
        if (!at_end())
            fail(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return v;
    }

    CoordId parse_single_coord()
    {
        skip_ws();
        std::size_t start = pos_;
        auto name = ident();
        if (name.empty())
            fail("expected coordinate", start);
        OpTerms v = coord_or_derivative(name, start);
        skip_ws();
        if (!at_end() || v.size() != 1 || !v.begin()->first.empty() || v.begin()->second.size() != 1)
            fail("expected a single coordinate", start);
        const auto& [mono, coeff] = *v.begin()->second.terms().begin();
        if (mono.factors().size() != 1 || mono.factors()[0].second != 1 || coeff != 1)
            fail("expected a single coordinate", start);
        return mono.factors()[0].first;
    }

private:
    [[noreturn]] void fail(const std::string& msg, std::size_t at) const { throw ParseError(msg, at); }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string_view ident()
    {
        std::size_t start = pos_;
        if (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) {
            while (!at_end() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
        }
        return text_.substr(start, pos_ - start);
    }

    static bool is_pure(const OpTerms& v) { return v.empty() || (v.size() == 1 && v.begin()->first.empty()); }
    static DiffPoly pure_value(const OpTerms& v) { return v.empty() ? DiffPoly() : v.begin()->second; }

    static OpTerms from_poly(DiffPoly p)
    {
        OpTerms v;
        if (!p.is_zero())
            v.emplace(MultiIndex{}, std::move(p));
        return v;
    }

    static void add_into(OpTerms& acc, const OpTerms& v, int sign)
    {
        for (const auto& [sigma, c] : v) {
            DiffPoly& slot = acc[sigma];
            if (sign > 0)
                slot += c;
            else
                slot -= c;
            if (slot.is_zero())
                acc.erase(sigma);
        }
    }

    OpTerms expr()
    {
        OpTerms acc = term();
        while (true) {
            skip_ws();
            if (accept('+'))
                add_into(acc, term(), +1);
            else if (accept('-'))
                add_into(acc, term(), -1);
            else
                return acc;
        }
    }

    OpTerms term()
    {
        OpTerms acc = factor();
        while (true) {
            skip_ws();
            std::size_t at = pos_;
            if (accept('*')) {
                OpTerms rhs = factor();
                if (is_pure(acc)) {
                    DiffPoly a = pure_value(acc);
                    OpTerms out;
                    for (const auto& [sigma, c] : rhs) {
                        DiffPoly prod = a * c;
                        if (!prod.is_zero())
                            out.emplace(sigma, std::move(prod));
                    }
                    acc = std::move(out);
                } else if (is_pure(rhs) && pure_value(rhs).is_zero()) {
                    acc.clear();
                } else {
                    fail("a total derivative must be the rightmost factor of a term", at);
                }
            } else if (accept('/')) {
                std::size_t divisor_at = pos_;
                OpTerms rhs = factor();
                if (!is_pure(rhs) || !pure_value(rhs).is_constant() || pure_value(rhs).is_zero())
                    fail("division is only allowed by a nonzero rational constant", divisor_at);
                Rational inv = 1 / pure_value(rhs).constant_term();
                for (auto& [sigma, c] : acc)
                    c *= inv;
            } else {
                return acc;
            }
        }
    }

    OpTerms factor()
    {
        OpTerms b = base();
        skip_ws();
        std::size_t at = pos_;
        if (accept('^')) {
            skip_ws();
            std::size_t start = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (start == pos_)
                fail("expected non-negative integer exponent", start);
            if (!is_pure(b))
                fail("cannot raise a total derivative to a power", at);
            unsigned long e = std::stoul(std::string(text_.substr(start, pos_ - start)));
            if (e > 1000)
                fail("exponent too large", start);
            return from_poly(pure_value(b).pow(static_cast<unsigned>(e)));
        }
        return b;
    }

    OpTerms base()
    {
        skip_ws();
        std::size_t start = pos_;
        char c = peek();
        if (c == '(') {
            ++pos_;
            OpTerms v = expr();
            if (!accept(')'))
                fail("expected ')'", pos_);
            return v;
        }
        if (c == '-') {
            ++pos_;
            OpTerms v = factor();
            for (auto& [sigma, p] : v)
                p = -p;
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return from_poly(DiffPoly(rational_literal()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            auto name = ident();
            return coord_or_derivative(name, start);
        }
        if (at_end())
            fail("unexpected end of input", pos_);
        fail(std::string("unexpected '") + c + "'", pos_);
    }

    Rational rational_literal()
    {
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string num(text_.substr(start, pos_ - start));
        // a '/' directly followed by digits belongs to the literal
        if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            std::size_t dstart = pos_;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            std::string den(text_.substr(dstart, pos_ - dstart));
            Integer d(den);
            if (sgn(d) == 0)
                fail("zero denominator", dstart);
            Rational q(Integer(num), d);
            q.canonicalize();
            return q;
        }
        return Rational(Integer(num));
    }

    // Parses what follows '_' (already at the '_'); returns the multi-index.
    MultiIndex jet_suffix()
    {
        std::size_t underscore = pos_;
        ++pos_;
        std::vector<int> entries;
        if (peek() == '{') {
            ++pos_;
            while (true) {
                skip_ws();
                std::size_t at = pos_;
                auto name = ident();
                if (name.empty())
                    fail("malformed jet suffix", underscore);
                auto i = ctx_.independent_index(name);
                if (!i)
                    fail("unknown independent variable '" + std::string(name) + "'", at);
                entries.push_back(*i);
                skip_ws();
                if (peek() == ',') {
                    ++pos_;
                    continue;
                }
                if (peek() == '}') {
                    ++pos_;
                    break;
                }
                fail("malformed jet suffix", underscore);
            }
            return MultiIndex(std::move(entries));
        }
        std::size_t at = pos_;
        auto name = ident();
        if (name.empty())
            fail("malformed jet suffix", underscore);
        if (auto i = ctx_.independent_index(name))
            return MultiIndex{*i};
        if (!ctx_.short_jet_names())
            fail("unknown independent variable '" + std::string(name) + "'", at);
        for (std::size_t k = 0; k < name.size(); ++k) {
            auto i = ctx_.independent_index(name.substr(k, 1));
            if (!i)
                fail("unknown independent variable '" + std::string(name.substr(k, 1)) + "'", at + k);
            entries.push_back(*i);
        }
        return MultiIndex(std::move(entries));
    }

    OpTerms coord_or_derivative(std::string_view name, std::size_t start)
    {
        if (name == "D") {
            if (!allow_derivatives_)
                fail("total derivative not allowed in an expression", start);
            if (peek() != '_')
                fail("expected '_' after D", pos_);
            MultiIndex sigma = jet_suffix();
            if (sigma.empty())
                fail("malformed jet suffix", start + 1);
            OpTerms v;
            v.emplace(std::move(sigma), DiffPoly(1));
            return v;
        }
        if (auto i = ctx_.independent_index(name)) {
            if (peek() == '_')
                fail("independent variables take no jet suffix", pos_);
            return from_poly(DiffPoly::coord(CoordId::independent(*i)));
        }
        if (auto p = ctx_.parameter_index(name)) {
            if (peek() == '_')
                fail("parameters take no jet suffix", pos_);
            return from_poly(DiffPoly::coord(CoordId::parameter(*p)));
        }
        if (auto j = ctx_.dependent_index(name)) {
            MultiIndex sigma;
            if (peek() == '_')
                sigma = jet_suffix();
            return from_poly(DiffPoly::coord(CoordId::jet(*j, std::move(sigma))));
        }
        fail("undeclared identifier '" + std::string(name) + "'", start);
    }

    std::string_view text_;
    const JetContext& ctx_;
    bool allow_derivatives_;
    std::size_t pos_ = 0;
};

}  // namespace

OpTerms parse_terms(std::string_view text, const JetContext& ctx, bool allow_derivatives)
{
    return Parser(text, ctx, allow_derivatives).parse_all();
}


}  // namespace detail

DiffPoly parse_expr(std::string_view text, const JetContext& ctx)
{
    auto v = detail::parse_terms(text, ctx, false);
    return v.empty() ? DiffPoly() : v.begin()->second;
}

CoordId parse_coord(std::string_view text, const JetContext& ctx)
{
    return detail::Parser(text, ctx, false).parse_single_coord();
}

}  // namespace cdcalc
