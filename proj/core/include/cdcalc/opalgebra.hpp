#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"

namespace cdcalc {

/// Scalar C-differential operator Σ_σ a^σ D_σ.
class ScalarCDiffOp {
public:
    using Terms = std::map<MultiIndex, DiffPoly>;

    ScalarCDiffOp() = default;
    explicit ScalarCDiffOp(Terms terms);
    static ScalarCDiffOp multiplication(const DiffPoly& f);
    static ScalarCDiffOp derivative(const MultiIndex& sigma, const DiffPoly& coeff = DiffPoly(1));

    const Terms& terms() const noexcept { return terms_; }
    DiffPoly coefficient(const MultiIndex& sigma) const;
    bool is_zero() const noexcept { return terms_.empty(); }
    /// max |σ| over stored terms; 0 for the zero operator.
    int order() const noexcept;

    void add(const MultiIndex& sigma, const DiffPoly& coeff);
    ScalarCDiffOp& operator+=(const ScalarCDiffOp& o);
    ScalarCDiffOp& operator-=(const ScalarCDiffOp& o);
    friend ScalarCDiffOp operator+(ScalarCDiffOp a, const ScalarCDiffOp& b) { return a += b; }
    friend ScalarCDiffOp operator-(ScalarCDiffOp a, const ScalarCDiffOp& b) { return a -= b; }
    /// f ∘ Δ (left multiplication of every coefficient).
    ScalarCDiffOp left_multiplied(const DiffPoly& f) const;

    bool operator==(const ScalarCDiffOp&) const = default;

private:
    Terms terms_;
};

/// r₁ × r₀ matrix of scalar C-differential operators acting on vectors of
/// differential polynomials over the jet space `context()`.
class CDiffOp {
public:
    CDiffOp(JetContextPtr ctx, int rows, int cols);
    static CDiffOp identity(JetContextPtr ctx, int size);
    static CDiffOp scalar(JetContextPtr ctx, ScalarCDiffOp op);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const JetContext& context() const noexcept { return *ctx_; }
    const JetContextPtr& context_ptr() const noexcept { return ctx_; }

    const ScalarCDiffOp& entry(int r, int c) const { return entries_.at(index(r, c)); }
    ScalarCDiffOp& entry(int r, int c) { return entries_.at(index(r, c)); }

    int order() const noexcept;
    bool is_zero() const noexcept;

    CDiffOp& operator+=(const CDiffOp& o);
    CDiffOp& operator-=(const CDiffOp& o);
    friend CDiffOp operator+(CDiffOp a, const CDiffOp& b) { return a += b; }
    friend CDiffOp operator-(CDiffOp a, const CDiffOp& b) { return a -= b; }

    /// Structural equality of the operator matrices (the context is not compared).
    bool operator==(const CDiffOp& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_; }

private:
    std::size_t index(int r, int c) const;

    JetContextPtr ctx_;
    int rows_;
    int cols_;
    std::vector<ScalarCDiffOp> entries_;
};

/// Component s of the result is Σ_j Σ_σ a^σ_{sj} D_σ(v_j).
std::vector<DiffPoly> apply(const CDiffOp& op, const std::vector<DiffPoly>& v);
DiffPoly apply(const JetContext& ctx, const ScalarCDiffOp& op, const DiffPoly& f);

/// second ∘ first in normal form, via D_i ∘ f = f D_i + D_i(f).
ScalarCDiffOp compose(const JetContext& ctx, const ScalarCDiffOp& second, const ScalarCDiffOp& first);
CDiffOp compose(const CDiffOp& second, const CDiffOp& first);

/// (Σ f_σ D_σ)* = Σ (−1)^{|σ|} D_σ ∘ f_σ, transposed for matrices.
ScalarCDiffOp adjoint(const JetContext& ctx, const ScalarCDiffOp& op);
CDiffOp adjoint(const CDiffOp& op);

/// Universal linearization ℓ_F: entry (s, j) is Σ_σ ∂F_s/∂u^j_σ D_σ. Free mode only.
CDiffOp linearize(const JetContextPtr& ctx, const std::vector<DiffPoly>& F);

/// R₁…R_n with ⟨q, Δp⟩ − ⟨Δ*q, p⟩ = Σ_i D_i(R_i), built by integrating by parts term by term.
std::vector<DiffPoly> green_remainder(const CDiffOp& op, const std::vector<DiffPoly>& p,
                                      const std::vector<DiffPoly>& q);

/// d̄ : Λ̄^q → Λ̄^{q+1} as a C(n,q+1) × C(n,q) operator in the increasing-tuple basis.
CDiffOp dbar_operator(const JetContextPtr& ctx, int q);

std::string to_string(const ScalarCDiffOp& op, const JetContext& ctx);
/// One row per line, entries separated by " ; ".
std::string to_string(const CDiffOp& op);

/// opexpr := opterm (("+"|"-") opterm)* ; opterm := (expr "*")? "D_{" ident ("," ident)* "}" | expr
ScalarCDiffOp parse_scalar_operator(std::string_view text, const JetContext& ctx);
/// Row per line, entries separated by ';'. Blank lines and '#' comments are skipped.
CDiffOp parse_operator_matrix(std::string_view text, const JetContextPtr& ctx);

}  // namespace cdcalc
