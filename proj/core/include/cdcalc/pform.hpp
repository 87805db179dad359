#pragma once

#include <map>
#include <utility>
#include <vector>

#include "cdcalc/jetcalc.hpp"
#include "cdcalc/linalg.hpp"
#include "cdcalc/opalgebra.hpp"

namespace cdcalc {

/// Constant diagonal metric with entries ±1 (keeps the Hodge star rational).
class Metric {
public:
    explicit Metric(std::vector<int> diagonal);
    /// Accepts only ±1 entries; anything else is rejected with PreconditionError.
    static Metric diagonal(const std::vector<Rational>& entries);
    static Metric euclidean(int n);

    int n() const noexcept { return static_cast<int>(diag_.size()); }
    int entry(int i) const { return diag_.at(i); }
    const std::vector<int>& diagonal_entries() const noexcept { return diag_; }
    /// Number of negative entries.
    int index() const noexcept;
    /// ⟨dx_I, dx_I⟩ = Π_{i∈I} g^{ii}.
    int gram(const std::vector<int>& increasing) const;

    bool operator==(const Metric&) const = default;

private:
    std::vector<int> diag_;
};

/// ∗(dx_I) = orientation · sign(I, I^c) · ⟨dx_I, dx_I⟩ · dx_{I^c}.
HorizontalForm hodge_star(const Metric& g, const HorizontalForm& omega, int orientation = 1);

/// ∗ : Λ̄^q → Λ̄^{n−q} as a zeroth-order operator.
CDiffOp hodge_operator(const JetContextPtr& ctx, const Metric& g, int q, int orientation = 1);

/// d̄∗d̄ : Λ̄^p → Λ̄^{n−p−1}.
CDiffOp dstard_operator(const JetContextPtr& ctx, const Metric& g, int p, int orientation = 1);

struct EpiResult {
    bool surjective = false;
    std::size_t rank = 0;
    std::size_t dim = 0;
};

/// Rank of (a, b) ↦ ξ∧a + A*b from Λ^{n−p−1} ⊕ Λ^{n−p+1} onto Λ^{n−p}, where A
/// is ξ∧· on Λ^{n−p} and A* its g-adjoint.
EpiResult epi_check(int n, int p, const Metric& g, const std::vector<Rational>& xi);

/// Matrix of ξ∧· : Λ^k → Λ^{k+1} in increasing-tuple bases.
RationalMatrix wedge_matrix(int n, int k, const std::vector<Rational>& xi);

/// Sparse table (i, q) → dim for 0 ≤ q ≤ n−2.
struct E1Table {
    int n = 0;
    int p = 0;
    std::map<std::pair<int, int>, int> dims;

    int dim(int i, int q) const;
};

/// Monomials ω₁^a ω₂^b of the free graded-commutative algebra on ω₁ (Cartan 0,
/// horizontal n−p−1) and ω₂ (Cartan 1, horizontal n−p−1), at (b, (a+b)(n−p−1)).
E1Table e1_table(int n, int p);

}  // namespace cdcalc
