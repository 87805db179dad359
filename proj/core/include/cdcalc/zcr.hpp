#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"
#include "cdcalc/opalgebra.hpp"

namespace cdcalc {

/// Square d×d matrix of differential polynomials.
class PolyMatrix {
public:
    explicit PolyMatrix(int size = 0) : size_(size), data_(static_cast<std::size_t>(size) * size) {}
    static PolyMatrix identity(int size);

    int size() const noexcept { return size_; }
    DiffPoly& operator()(int r, int c) { return data_.at(static_cast<std::size_t>(r) * size_ + c); }
    const DiffPoly& operator()(int r, int c) const { return data_.at(static_cast<std::size_t>(r) * size_ + c); }
    bool is_zero() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    PolyMatrix scaled(const DiffPoly& f) const;

    bool operator==(const PolyMatrix&) const = default;

private:
    int size_;
    std::vector<DiffPoly> data_;
};

/// [A, B] = AB − BA.
PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);
/// Entrywise total derivative.
PolyMatrix total_derivative(const JetContext& ctx, int i, const PolyMatrix& a);

/// Matrix-valued horizontal form Σ_I A_I dx_I (I strictly increasing).
class MatrixForm {
public:
    using Tuple = std::vector<int>;

    MatrixForm(int n, int degree, int size);
    /// A₀ dx₀ + … + A_{n−1} dx_{n−1}.
    static MatrixForm one_form(const std::vector<PolyMatrix>& components);

    int n() const noexcept { return n_; }
    int degree() const noexcept { return degree_; }
    int size() const noexcept { return size_; }
    const std::map<Tuple, PolyMatrix>& coefficients() const noexcept { return coeffs_; }
    /// Zero matrix when absent.
    PolyMatrix coefficient(const Tuple& increasing) const;
    void set(const Tuple& increasing, PolyMatrix a);
    bool is_zero() const noexcept { return coeffs_.empty(); }

    MatrixForm scaled(const DiffPoly& f) const;
    MatrixForm& operator+=(const MatrixForm& o);
    friend MatrixForm operator+(MatrixForm a, const MatrixForm& b) { return a += b; }

    bool operator==(const MatrixForm&) const = default;

private:
    int n_;
    int degree_;
    int size_;
    std::map<Tuple, PolyMatrix> coeffs_;
};

struct McParts {
    MatrixForm dbar_part;     // Σ (D_i A_j − D_j A_i) dx_i∧dx_j
    MatrixForm bracket_part;  // Σ [A_i, A_j] dx_i∧dx_j
};

McParts mc_residual_parts(const JetContext& ctx, const MatrixForm& omega);
/// d̄ω + ½[ω, ω]; for n = 2 the single coefficient is D_x A₂ − D_t A₁ + [A₁, A₂].
MatrixForm mc_residual(const JetContext& ctx, const MatrixForm& omega);

/// ad A as a d²×d² zeroth-order operator on row-major flattened matrices.
CDiffOp ad_operator(const JetContextPtr& ctx, const PolyMatrix& a);

/// Δ with every D_i replaced by D_i + ad A_i, as a d²×d² block operator.
CDiffOp covering_substitute(const CDiffOp& op, const MatrixForm& omega);

/// File: blocks `A <independent>` followed by d lines of d ';'-separated expressions.
MatrixForm parse_matrix_form(std::string_view text, const JetContext& ctx);

}  // namespace cdcalc
