#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdcalc/comm_poly.hpp"
#include "cdcalc/jet_point.hpp"
#include "cdcalc/linalg.hpp"
#include "cdcalc/opalgebra.hpp"

namespace cdcalc {

/// Top-order symbol of an operator at a point: entries homogeneous of degree
/// `degree` in ξ₁..ξ_n.
struct SymbolMatrix {
    int n = 0;
    int rows = 0;
    int cols = 0;
    int degree = 0;
    std::vector<CommPoly> entries;  // row-major

    const CommPoly& entry(int r, int c) const { return entries.at(static_cast<std::size_t>(r) * cols + c); }
};

SymbolMatrix symbol(const CDiffOp& op, const JetPoint& pt);

/// Fiber of J̄^order(P) for a module of the given rank.
struct FiberSpace {
    int rank = 0;
    int order = 0;
};

/// rank · C(n + r, n).
std::size_t fiber_dim(int n, int rank, int order);

/// Jet-fiber basis (σ, j) with σ in degree-then-lex order, j fastest.
std::vector<std::pair<MultiIndex, int>> fiber_basis(int n, int rank, int order);

/// Linear map between jet fibers (or Spencer spaces) over ℚ.
struct FiberMap {
    FiberSpace source;
    FiberSpace target;
    RationalMatrix matrix;

    std::size_t domain_dim() const noexcept { return matrix.cols(); }
    std::size_t codomain_dim() const noexcept { return matrix.rows(); }
};

/// Smallest point order at which fiber_map(op, l, ·) can be evaluated.
int required_point_order(const CDiffOp& op, int l);

/// φ: J̄^{K+l}(P₀) → J̄^l(P₁) of the l-th prolongation at pt, with K the
/// declared order (defaults to order(op), must not be smaller). Row (τ, s)
/// holds the coefficients of D_τ ∘ (row s of op).
FiberMap fiber_map(const CDiffOp& op, int l, const JetPoint& pt, std::optional<int> declared_order = std::nullopt);

/// δ: Λ^s ⊗ S^r ⊗ P → Λ^{s+1} ⊗ S^{r−1} ⊗ P. Basis (I, σ, j): increasing
/// tuple I outermost, then σ, then j.
FiberMap delta_map(int n, int rank, int r, int s);

/// dim H̄^{k+l,i} for l = 0..l_max, i = 0..n.
struct SpencerReport {
    int order = 0;  // effective order k used for the grading
    int l_max = 0;
    int n = 0;
    std::vector<std::vector<std::size_t>> dims;
    std::vector<std::string> warnings;

    bool involutive() const;
    /// First nonzero slot in (l, i) order.
    std::optional<std::pair<int, int>> first_failure() const;
};

SpencerReport spencer_cohomology(const CDiffOp& op, int l_max, const JetPoint& pt);
/// Generic-point policy: evaluates at every point, keeps the one with maximal
/// symbol ranks and warns when the samples disagree.
SpencerReport spencer_cohomology(const CDiffOp& op, int l_max, const std::vector<JetPoint>& points);

/// Point order needed by spencer_cohomology (top-order coefficients only).
int spencer_point_order(const CDiffOp& op);

struct InvolutivityResult {
    bool involutive = false;
    int tested_up_to = 0;
    std::optional<std::pair<int, int>> failure;  // (l, i)
};

InvolutivityResult is_involutive(const SpencerReport& report);
InvolutivityResult is_involutive(const CDiffOp& op, int l_max, const JetPoint& pt);

struct TwoLineResult {
    bool nonzero = false;
    CommPoly polynomial;
};

/// q±(θ) = (θ₁^k + … + θ_p^k) ± (θ₁ + … + θ_p)^k.
TwoLineResult two_line_polynomial(int k, int p, int sign);

}  // namespace cdcalc
