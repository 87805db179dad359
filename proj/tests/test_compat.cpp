#include <doctest.h>

#include "cdcalc/compat.hpp"
#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"
#include "cdcalc/pform.hpp"
#include "cdcalc/spencer.hpp"
#include "support.hpp"

using namespace cdcalc;
using namespace cdcalc::testing;

namespace {

std::vector<const ExactnessEntry*> of_kind(const ExactnessReport& rep, PositionKind kind)
{
    std::vector<const ExactnessEntry*> out;
    for (const auto& e : rep.entries)
        if (e.kind == kind)
            out.push_back(&e);
    return out;
}

JetPoint point_for(const JetContextPtr& ctx, int bound, std::uint64_t seed = 1)
{
    std::mt19937_64 rng(seed);
    return JetPoint::random(ctx, bound, rng);
}

}  // namespace

TEST_CASE("de Rham complex in two variables is formally exact")
{
    auto ctx = free_context(2);
    OperatorComplex c({dbar_operator(ctx, 0), dbar_operator(ctx, 1)});
    ExactnessReport rep = check_formal_exactness(c, 3, point_for(ctx, exactness_point_order(c, 3)));
    auto mid = of_kind(rep, PositionKind::interior);
    REQUIRE(mid.size() == 4);
    const std::vector<std::vector<std::size_t>> dims{{6, 6, 1}, {10, 12, 3}, {15, 20, 6}, {21, 30, 10}};
    const std::vector<std::vector<std::size_t>> ranks{{5, 1}, {9, 3}, {14, 6}, {20, 10}};
    for (int l = 0; l <= 3; ++l) {
        CHECK(mid[l]->l == l);
        CHECK(mid[l]->dims == dims[l]);
        CHECK(mid[l]->ranks == ranks[l]);
        CHECK(mid[l]->defect == 0);
    }
    for (const auto* e : of_kind(rep, PositionKind::terminal))
        CHECK(e->defect == 0);
    CHECK(rep.exact());
}

TEST_CASE("de Rham complex in three variables is formally exact")
{
    auto ctx = free_context(3);
    OperatorComplex c({dbar_operator(ctx, 0), dbar_operator(ctx, 1), dbar_operator(ctx, 2)});
    ExactnessReport rep = check_formal_exactness(c, 3, generic_points(ctx, exactness_point_order(c, 3), 0));
    CHECK(of_kind(rep, PositionKind::interior).size() == 8);
    CHECK(rep.exact());
}

TEST_CASE("Maxwell complex is formally exact")
{
    auto ctx = free_context(4);
    Metric g = Metric::euclidean(4);
    OperatorComplex c({dstard_operator(ctx, g, 1), dbar_operator(ctx, 3)});
    CHECK(c.module_ranks() == std::vector<int>{4, 4, 1});
    ExactnessReport rep = check_formal_exactness(c, 2, point_for(ctx, 0));
    auto mid = of_kind(rep, PositionKind::interior);
    REQUIRE(mid.size() == 3);
    CHECK(mid[0]->dims == std::vector<std::size_t>{140, 20, 1});
    CHECK(mid[0]->ranks == std::vector<std::size_t>{19, 1});
    CHECK(mid[1]->dims == std::vector<std::size_t>{280, 60, 5});
    CHECK(mid[1]->ranks == std::vector<std::size_t>{55, 5});
    CHECK(mid[2]->dims == std::vector<std::size_t>{504, 140, 15});
    CHECK(mid[2]->ranks == std::vector<std::size_t>{125, 15});
    CHECK(rep.exact());
}

TEST_CASE("an incomplete compatibility operator leaves a defect")
{
    auto ctx = free_context(2);
    OperatorComplex c({dbar_operator(ctx, 0), parse_operator_matrix("-D_{x,t} ; D_{x,x}", ctx)});
    ExactnessReport rep = check_formal_exactness(c, 2, point_for(ctx, 0));
    auto mid = of_kind(rep, PositionKind::interior);
    REQUIRE(mid.size() == 3);
    CHECK(mid[0]->dims == std::vector<std::size_t>{10, 12, 1});
    CHECK(mid[0]->ranks == std::vector<std::size_t>{9, 1});
    CHECK(mid[0]->defect == 2);
    CHECK(mid[1]->defect == 3);
    CHECK(mid[2]->defect == 4);
    CHECK_FALSE(rep.exact());
}

TEST_CASE("a single surjective operator: only the source kernel grows")
{
    auto ctx = free_context(2);
    OperatorComplex c({parse_operator_matrix("D_x", ctx)});
    ExactnessReport rep = check_formal_exactness(c, 2, point_for(ctx, 0));
    auto src = of_kind(rep, PositionKind::source);
    REQUIRE(src.size() == 3);
    CHECK(src[0]->defect == 2);
    CHECK(src[1]->defect == 3);
    CHECK(src[2]->defect == 4);
    for (const auto* e : of_kind(rep, PositionKind::terminal))
        CHECK(e->defect == 0);
    CHECK(rep.exact());
}

TEST_CASE("complexes are validated")
{
    auto ctx = free_context(2);
    CHECK_THROWS_AS(OperatorComplex({dbar_operator(ctx, 0), dbar_operator(ctx, 0)}), DimensionError);
    CHECK_THROWS_AS(OperatorComplex({dbar_operator(ctx, 0), parse_operator_matrix("D_t ; D_x", ctx)}),
                    PreconditionError);
    CHECK_THROWS_AS(OperatorComplex({dbar_operator(ctx, 0)}, {0}), PreconditionError);
    CHECK_THROWS_AS(OperatorComplex({}), PreconditionError);
}

TEST_CASE("defect is never negative on random complexes")
{
    // Δ₂ = D_t·(component 0) − D_x·(component 1) kills any Δ₁ = (D_x a, D_t a)-shaped column
    std::mt19937_64 rng(50);
    auto ctx = free_context(2);
    for (int trial = 0; trial < 5; ++trial) {
        ScalarCDiffOp a = random_scalar_op(*ctx, rng, 1, 2, 0);
        CDiffOp first(ctx, 2, 1);
        first.entry(0, 0) = compose(*ctx, ScalarCDiffOp::derivative(MultiIndex{0}), a);
        first.entry(1, 0) = compose(*ctx, ScalarCDiffOp::derivative(MultiIndex{1}), a);
        OperatorComplex c({first, dbar_operator(ctx, 1)});
        ExactnessReport rep = check_formal_exactness(c, 1, generic_points(ctx, exactness_point_order(c, 1), 1));
        CHECK(of_kind(rep, PositionKind::interior).size() == 2);
    }
}

TEST_CASE("cokernel ranks")
{
    auto ctx = free_context(2);
    CDiffOp grad = dbar_operator(ctx, 0);
    JetPoint pt = point_for(ctx, 0);
    CHECK(cokernel_rank(grad, 1, pt) == 1);
    FiberMap fm = fiber_map(grad, 1, pt);
    CHECK(cokernel_rank(grad, 1, pt) == fm.codomain_dim() - rank(fm.matrix));
    for (int k1 = 1; k1 <= 3; ++k1)
        CHECK(cokernel_rank(CDiffOp::identity(ctx, 2), k1, pt) == 0);

    auto kctx = kdv_free_context();
    CDiffOp l = linearize(kctx, {parse_expr("u_t - u*u_x - u_xxx", *kctx)});
    JetPoint kp = point_for(kctx, required_point_order(l, 1));
    FiberMap kf = fiber_map(l, 1, kp);
    CHECK(kf.domain_dim() == 15);
    CHECK(kf.codomain_dim() == 3);
    CHECK(cokernel_rank(l, 1, kp) == 0);

    // a repeated row is not onto at order 0
    CHECK_THROWS_AS(cokernel_rank(parse_operator_matrix("D_x\nD_x", ctx), 1, pt), PreconditionError);
    CHECK_THROWS_AS(cokernel_rank(grad, 0, pt), PreconditionError);
}

TEST_CASE("k-line reports")
{
    KLineReport two = kline_report(2, 2);
    CHECK(two.lines == std::vector<std::string>{"complex length k = 2, n = 2", "E1^{p,q} = 0 for p > 0 and q <= 0",
                                                "C-cohomology H^i = 0 for i >= 2"});
    KLineReport gauge = kline_report(3, 4);
    CHECK(gauge.e1_q_max == 1);
    CHECK(gauge.lines[1] == "E1^{p,q} = 0 for p > 0 and q <= 1");
    // p-form theory, n = 4, p = 1: k = p + 2
    KLineReport pf = kline_report(3, 4);
    CHECK(pf.e1_q_max == 4 - 1 - 2);
    CHECK(kline_report(5, 3).lines[1] == "E1: no vanishing predicted (n - k < 0)");
}
