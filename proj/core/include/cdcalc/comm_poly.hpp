#pragma once

#include <map>
#include <string>
#include <vector>

#include "cdcalc/multi_index.hpp"
#include "cdcalc/rational.hpp"

namespace cdcalc {

/// Polynomial over ℚ in a fixed number of commuting variables (covector
/// variables ξ of a symbol, or the θ's of the two-line check). Exponent
/// vectors are dense.
class CommPoly {
public:
    using Exponents = std::vector<int>;

    explicit CommPoly(int nvars = 0) : nvars_(nvars) {}
    static CommPoly constant(int nvars, const Rational& c);
    static CommPoly variable(int nvars, int i);
    /// ξ^σ for a multi-index σ.
    static CommPoly monomial(int nvars, const MultiIndex& sigma, const Rational& c = 1);

    int nvars() const noexcept { return nvars_; }
    const std::map<Exponents, Rational>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// Degree of every term when homogeneous, −1 for zero, throws otherwise.
    int homogeneous_degree() const;
    Rational coefficient(const Exponents& e) const;

    void add_term(const Exponents& e, const Rational& c);

    CommPoly& operator+=(const CommPoly& o);
    CommPoly& operator-=(const CommPoly& o);
    friend CommPoly operator+(CommPoly a, const CommPoly& b) { return a += b; }
    friend CommPoly operator-(CommPoly a, const CommPoly& b) { return a -= b; }
    friend CommPoly operator*(const CommPoly& a, const CommPoly& b);
    CommPoly operator*(const Rational& c) const;
    CommPoly pow(unsigned e) const;

    bool operator==(const CommPoly&) const = default;

    /// Renders with the given variable names, highest degree first.
    std::string to_string(const std::vector<std::string>& names) const;

private:
    int nvars_;
    std::map<Exponents, Rational> terms_;
};

}  // namespace cdcalc
