#include <doctest.h>

#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"
#include "cdcalc/opalgebra.hpp"
#include "support.hpp"

using namespace cdcalc;
using namespace cdcalc::testing;

namespace {

DiffPoly pairing(const std::vector<DiffPoly>& a, const std::vector<DiffPoly>& b)
{
    DiffPoly s;
    for (std::size_t k = 0; k < a.size(); ++k)
        s += a[k] * b[k];
    return s;
}

DiffPoly divergence(const JetContext& ctx, const std::vector<DiffPoly>& R)
{
    DiffPoly s;
    for (int i = 0; i < ctx.n(); ++i)
        s += total_derivative(ctx, i, R[i]);
    return s;
}

}  // namespace

TEST_CASE("KdV linearization and adjoint")
{
    auto ctx = kdv_free_context();
    DiffPoly F = parse_expr("u_t - u*u_x - u_xxx", *ctx);
    CDiffOp l = linearize(ctx, {F});
    CDiffOp expected = parse_operator_matrix("D_t - u*D_x - u_x - D_xxx", ctx);
    CHECK(l == expected);
    CHECK(adjoint(l) == parse_operator_matrix("-D_t + u*D_x + D_{x,x,x}", ctx));
    CHECK(to_string(l) == "-D_{x,x,x} + D_{t} - u*D_{x} - u_x");
    CHECK_THROWS_AS(linearize(kdv_evolution_context(), {F}), PreconditionError);
}

TEST_CASE("linearization of a system")
{
    auto ctx = free_context(2, 2);
    auto F1 = parse_expr("u_x*v - v_t", *ctx);
    auto F2 = parse_expr("u^2", *ctx);
    CDiffOp l = linearize(ctx, {F1, F2});
    CHECK(l == parse_operator_matrix("v*D_x ; -D_t + u_x\n2*u ; 0", ctx));
}

TEST_CASE("operator literals")
{
    auto ctx = free_context(2);
    auto a = parse_scalar_operator("(u + 1)*D_{x,t} - 2*D_x + u_x", *ctx);
    CHECK(a.coefficient(MultiIndex{0, 1}) == parse_expr("u + 1", *ctx));
    CHECK(a.coefficient(MultiIndex{0}) == DiffPoly(-2));
    CHECK(a.coefficient({}) == parse_expr("u_x", *ctx));
    CHECK(a.order() == 2);
    CHECK(parse_scalar_operator("D_tx", *ctx) == parse_scalar_operator("D_{x,t}", *ctx));
    CHECK_THROWS_AS(parse_scalar_operator("D_x*u", *ctx), ParseError);
    CHECK_THROWS_AS(parse_scalar_operator("D_q", *ctx), ParseError);
    CHECK_THROWS_AS(parse_operator_matrix("D_x ; D_t\nD_x", ctx), ParseError);
}

TEST_CASE("printed operators re-parse")
{
    std::mt19937_64 rng(8);
    auto ctx = free_context(3, 2);
    for (int trial = 0; trial < 40; ++trial) {
        CDiffOp op = random_op(ctx, rng, 2, 2, 3);
        CHECK(parse_operator_matrix(to_string(op), ctx) == op);
    }
    auto wide = make_context(JetContext({"xa", "tb"}, {"u"}));
    CDiffOp w = parse_operator_matrix("u*D_{xa,tb} - D_{xa}", wide);
    CHECK(parse_operator_matrix(to_string(w), wide) == w);
}

TEST_CASE("composition is associative and matches nested application")
{
    std::mt19937_64 rng(12);
    for (int n = 1; n <= 2; ++n) {
        auto ctx = free_context(n, 1);
        for (int trial = 0; trial < 25; ++trial) {
            CDiffOp a = random_op(ctx, rng, 2, 1, 2);
            CDiffOp b = random_op(ctx, rng, 1, 2, 2);
            CDiffOp c = random_op(ctx, rng, 2, 2, 1);
            CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
            auto v = random_vector(*ctx, 2, rng);
            CHECK(cdcalc::apply(compose(b, c), v) == cdcalc::apply(b, cdcalc::apply(c, v)));
        }
    }
    auto ctx = free_context(2);
    auto Dx = parse_operator_matrix("D_x", ctx);
    auto u = parse_operator_matrix("u", ctx);
    CHECK(compose(Dx, u) == parse_operator_matrix("u*D_x + u_x", ctx));
    CHECK(compose(u, Dx) == parse_operator_matrix("u*D_x", ctx));
    CHECK_THROWS_AS(compose(Dx, CDiffOp(ctx, 2, 1)), DimensionError);
}

TEST_CASE("adjoint is an involutive anti-homomorphism with a Green formula")
{
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int n = 1; n <= 2; ++n) {
        auto ctx = free_context(n, 1);
        for (int trial = 0; trial < 20; ++trial) {
            std::uniform_int_distribution<int> sz(1, 2);
            int r0 = sz(rng), r1 = sz(rng), r2 = sz(rng);
            CDiffOp a = random_op(ctx, rng, r1, r0, 3);
            CDiffOp b = random_op(ctx, rng, r2, r1, 2);
            CHECK(adjoint(adjoint(a)) == a);
            CHECK(adjoint(compose(b, a)) == compose(adjoint(a), adjoint(b)));
            auto p = random_vector(*ctx, static_cast<std::size_t>(r0), rng);
            auto q = random_vector(*ctx, static_cast<std::size_t>(r1), rng);
            auto R = green_remainder(a, p, q);
            CHECK(pairing(q, cdcalc::apply(a, p)) - pairing(cdcalc::apply(adjoint(a), q), p) == divergence(*ctx, R));
            ++checked;
        }
    }
    CHECK(checked == 40);
}

TEST_CASE("dbar operator")
{
    auto ctx = free_context(3);
    for (int q = 0; q + 1 < 3; ++q)
        CHECK(compose(dbar_operator(ctx, q + 1), dbar_operator(ctx, q)).is_zero());
    CDiffOp grad = dbar_operator(ctx, 0);
    CHECK(grad.rows() == 3);
    CHECK(grad.entry(2, 0) == ScalarCDiffOp::derivative(MultiIndex{2}));
    CHECK_THROWS_AS(dbar_operator(ctx, 3), PreconditionError);

    // agrees with the form-level dbar
    std::mt19937_64 rng(30);
    HorizontalForm w = random_form(*ctx, 1, rng);
    CHECK(cdcalc::apply(dbar_operator(ctx, 1), w.to_vector()) == dbar(*ctx, w).to_vector());
}
