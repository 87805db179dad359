#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cdcalc/jet_point.hpp"
#include "cdcalc/opalgebra.hpp"

namespace cdcalc {

/// P₀ →Δ₁ P₁ →Δ₂ P₂ → … with declared orders k₁, k₂, …; every composition
/// Δ_{i+1} ∘ Δ_i must vanish identically (checked on construction).
class OperatorComplex {
public:
    /// An empty `orders` list means "use each operator's own order".
    explicit OperatorComplex(std::vector<CDiffOp> operators, std::vector<int> orders = {});

    const std::vector<CDiffOp>& operators() const noexcept { return ops_; }
    const std::vector<int>& orders() const noexcept { return orders_; }
    /// r₀, r₁, …, r_N.
    std::vector<int> module_ranks() const;
    std::size_t length() const noexcept { return ops_.size(); }

private:
    std::vector<CDiffOp> ops_;
    std::vector<int> orders_;
};

enum class PositionKind { source, interior, terminal };

std::string to_string(PositionKind kind);

/// One tested slot. For interior positions dims = {first domain, middle, last
/// codomain} and ranks = {rank₁, rank₂}; source and terminal slots use a single
/// map (dims has two entries, ranks one).
struct ExactnessEntry {
    PositionKind kind = PositionKind::interior;
    int position = 0;  // index of the module P_i
    int l = 0;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;
    /// interior: dim ker(second) − rank(first); terminal: dim coker; source: dim ker.
    std::size_t defect = 0;

    /// Source slots never count against exactness.
    bool exact() const noexcept { return kind == PositionKind::source || defect == 0; }
};

struct ExactnessReport {
    int l_max = 0;
    std::vector<ExactnessEntry> entries;
    std::vector<std::string> warnings;

    /// Exact at every interior and terminal slot for l ≤ l_max.
    bool exact() const;
};

/// Point order large enough for every fiber map check_formal_exactness builds.
int exactness_point_order(const OperatorComplex& c, int l_max);

ExactnessReport check_formal_exactness(const OperatorComplex& c, int l_max, const JetPoint& pt);
/// Generic-point policy: ranks from the sample with the largest total rank, with
/// a warning when the samples disagree.
ExactnessReport check_formal_exactness(const OperatorComplex& c, int l_max, const std::vector<JetPoint>& points);

/// dim coker of fiber_map(Δ, k₁) at pt. Requires the order-0 fiber map to be onto.
std::size_t cokernel_rank(const CDiffOp& op, int k1, const JetPoint& pt);

struct KLineReport {
    int k = 0;
    int n = 0;
    /// E₁^{p,q} = 0 for p > 0 and q ≤ n − k (empty when n − k < 0).
    int e1_q_max = 0;
    /// H^i = 0 for i ≥ k.
    int cohomology_from = 0;
    std::vector<std::string> lines;
};

KLineReport kline_report(int k, int n);

}  // namespace cdcalc
