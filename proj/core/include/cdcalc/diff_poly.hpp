#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cdcalc/multi_index.hpp"
#include "cdcalc/rational.hpp"

namespace cdcalc {

class JetContext;

/// A coordinate on the jet space: x_i, u^j_σ, or a declared formal parameter.
struct CoordId {
    enum class Kind : std::uint8_t { independent = 0, jet = 1, parameter = 2 };

    Kind kind = Kind::independent;
    int index = 0;     // i, j, or parameter slot (0-based)
    MultiIndex sigma;  // only for jets

    static CoordId independent(int i) { return {Kind::independent, i, {}}; }
    static CoordId jet(int j, MultiIndex sigma = {}) { return {Kind::jet, j, std::move(sigma)}; }
    static CoordId parameter(int p) { return {Kind::parameter, p, {}}; }

    bool is_jet() const noexcept { return kind == Kind::jet; }

    bool operator==(const CoordId&) const = default;
    std::strong_ordering operator<=>(const CoordId& other) const;
};

/// Product of coordinates with positive exponents, sorted by coordinate.
class Monomial {
public:
    using Factor = std::pair<CoordId, int>;

    Monomial() = default;
    explicit Monomial(const CoordId& c, int exponent = 1);

    const std::vector<Factor>& factors() const noexcept { return factors_; }
    int degree() const noexcept;
    bool is_one() const noexcept { return factors_.empty(); }
    int exponent(const CoordId& c) const;

    Monomial operator*(const Monomial& other) const;
    /// Lowers the exponent of c by one; c must divide the monomial.
    Monomial divide_by(const CoordId& c) const;

    bool operator==(const Monomial&) const = default;
    /// Degree first, then lexicographic on the factor list.
    std::strong_ordering operator<=>(const Monomial& other) const;

private:
    std::vector<Factor> factors_;
};

/// Differential polynomial: exact-rational polynomial in jet coordinates and
/// parameters, stored in canonical form (no zero coefficients).
class DiffPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    DiffPoly() = default;
    DiffPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
    DiffPoly(int c) : DiffPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
    static DiffPoly coord(const CoordId& c);
    static DiffPoly term(const Monomial& m, const Rational& c);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Constant term (coefficient of the empty monomial).
    Rational constant_term() const;
    std::size_t size() const noexcept { return terms_.size(); }
    int degree() const noexcept;

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    DiffPoly& operator*=(const DiffPoly& o);
    DiffPoly& operator*=(const Rational& c);
    DiffPoly operator-() const;
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend DiffPoly operator*(DiffPoly a, const Rational& c) { return a *= c; }
    friend DiffPoly operator*(const Rational& c, DiffPoly a) { return a *= c; }

    DiffPoly pow(unsigned e) const;

    /// Formal partial derivative, all coordinates treated as independent symbols.
    DiffPoly partial(const CoordId& c) const;

    /// Every coordinate occurring in the polynomial.
    std::set<CoordId> coordinates() const;
    /// Largest |σ| among jet coordinates (−1 when there is none).
    int max_jet_order() const;

    void add_term(const Monomial& m, const Rational& c);

    bool operator==(const DiffPoly&) const = default;

private:
    Terms terms_;
};

std::string to_string(const CoordId& c, const JetContext& ctx);
std::string to_string(const Monomial& m, const JetContext& ctx);
/// Deterministic rendering: highest degree first, re-parseable by parse_expr.
std::string to_string(const DiffPoly& f, const JetContext& ctx);

}  // namespace cdcalc
