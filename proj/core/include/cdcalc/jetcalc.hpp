#pragma once

#include <map>
#include <vector>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"

namespace cdcalc {

/// D_i f. In free mode D_i = ∂/∂x_i + Σ u^j_{σi} ∂/∂u^j_σ. In evolution mode the
/// time derivative replaces u^j_{x^k,t} by D_x^k(f_j); f must be internal.
DiffPoly total_derivative(const JetContext& ctx, int i, const DiffPoly& f);

/// D_σ f = D_{i₁} ∘ … ∘ D_{i_r} f.
DiffPoly total_derivative(const JetContext& ctx, const MultiIndex& sigma, const DiffPoly& f);

/// Horizontal q-form Σ f_I dx_I over strictly increasing tuples I, with the
/// orientation dx₁∧…∧dx_n.
class HorizontalForm {
public:
    using Tuple = std::vector<int>;

    HorizontalForm(int n, int degree);
    static HorizontalForm scalar(int n, const DiffPoly& f);
    /// f dx_{i₁}∧…∧dx_{i_q}; the indices may be unsorted (sign is applied) or repeated (zero).
    static HorizontalForm monomial(int n, const Tuple& indices, const DiffPoly& f = DiffPoly(1));

    int n() const noexcept { return n_; }
    int degree() const noexcept { return degree_; }
    const std::map<Tuple, DiffPoly>& coefficients() const noexcept { return coeffs_; }
    DiffPoly coefficient(const Tuple& increasing) const;
    bool is_zero() const noexcept { return coeffs_.empty(); }

    void add(const Tuple& increasing, const DiffPoly& f);

    HorizontalForm& operator+=(const HorizontalForm& o);
    HorizontalForm& operator-=(const HorizontalForm& o);
    friend HorizontalForm operator+(HorizontalForm a, const HorizontalForm& b) { return a += b; }
    friend HorizontalForm operator-(HorizontalForm a, const HorizontalForm& b) { return a -= b; }
    HorizontalForm scaled(const DiffPoly& f) const;

    bool operator==(const HorizontalForm&) const = default;

    /// Coefficients in the order of increasing_tuples(n, degree).
    std::vector<DiffPoly> to_vector() const;
    static HorizontalForm from_vector(int n, int degree, const std::vector<DiffPoly>& v);

private:
    int n_;
    int degree_;
    std::map<Tuple, DiffPoly> coeffs_;
};

/// Total exterior differential d̄(f dx_I) = Σ_i D_i f dx_i ∧ dx_I. A top-degree
/// form maps to the zero form (reported with degree n).
HorizontalForm dbar(const JetContext& ctx, const HorizontalForm& form);

/// Exterior product; the zero form when the degrees exceed n.
HorizontalForm wedge(const HorizontalForm& a, const HorizontalForm& b);

}  // namespace cdcalc
