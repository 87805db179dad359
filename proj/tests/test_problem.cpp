#include <doctest.h>

#include <string>

#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"
#include "cdcalc/problem.hpp"
#include "support.hpp"

using namespace cdcalc;

namespace {

std::size_t error_offset(const std::string& text)
{
    try {
        parse_problem(text);
    } catch (const ParseError& e) {
        return e.offset();
    }
    FAIL("no parse error for: " << text);
    return 0;
}

}  // namespace

TEST_CASE("KdV problem in evolution form")
{
    Problem pb = parse_problem("# comment\nindependent x t\ndependent u\nparameter lambda\n"
                               "evolution u = u*u_x + u_xxx\n");
    CHECK(pb.free_context->n() == 2);
    CHECK(pb.free_context->m() == 1);
    CHECK(pb.context->is_evolution());
    CHECK_FALSE(pb.free_context->is_evolution());
    REQUIRE(pb.equations.size() == 1);
    CHECK(pb.equations[0] == parse_expr("u_t - u*u_x - u_xxx", *pb.free_context));
    CHECK(pb.operators.empty());
    CHECK_FALSE(pb.metric.has_value());
}

TEST_CASE("explicit equations are kept as written")
{
    Problem pb = parse_problem("independent x y\ndependent u v\nequation u_x - v_y\nequation u_y + v_x\n");
    REQUIRE(pb.equations.size() == 2);
    CHECK(pb.equations[1] == parse_expr("v_x + u_y", *pb.context));
    CHECK(pb.context == pb.free_context);
}

TEST_CASE("operator blocks")
{
    Problem pb = parse_problem("independent x t\ndependent u\noperator 2 -> 1 order 3\n-D_{x,t} ; u*D_{x,x}\n"
                               "operator 1 -> 2\nD_x\n\n# gap\nD_t\n");
    REQUIRE(pb.operators.size() == 2);
    CHECK(pb.operators[0].order == 3);
    CHECK(pb.operators[0].op.rows() == 1);
    CHECK(pb.operators[0].op.cols() == 2);
    CHECK(pb.operators[1].order == 1);
    CHECK(pb.operators[1].op.entry(1, 0) == ScalarCDiffOp::derivative(MultiIndex{1}));
    CHECK(pb.operators[0].op.entry(0, 1) ==
          ScalarCDiffOp::derivative(MultiIndex{0, 0}, DiffPoly::coord(CoordId::jet(0))));
}

TEST_CASE("builtin operators")
{
    Problem pb = parse_problem("independent x y z w\ndependent u\nmetric diag(1, -1, 1, 1)\n"
                               "operator dstard 1\noperator dbar 3\n");
    REQUIRE(pb.metric.has_value());
    CHECK(pb.metric->index() == 1);
    REQUIRE(pb.operators.size() == 2);
    CHECK(pb.operators[0].order == 2);
    CHECK(pb.operators[0].op.rows() == 4);
    CHECK(pb.operators[1].order == 1);
    CHECK(pb.operators[1].op.rows() == 1);
    CHECK(pb.operators[1].op.cols() == 4);
    CHECK(compose(pb.operators[1].op, pb.operators[0].op).is_zero());
}

TEST_CASE("problem errors carry offsets")
{
    CHECK(error_offset("dependent u\nequation u\n") == 12);
    CHECK(error_offset("independent x\ndependent u\nequation u_x +\n") == 40);
    CHECK(error_offset("independent x\nfoo bar\n") == 14);
    CHECK(error_offset("independent x\ndependent u\nequation u\nparameter a\n") == 37);
    CHECK(error_offset("independent x\ndependent u\noperator 1 -> 1\nD_x ; D_x\n") == 47);
    CHECK(error_offset("independent x\ndependent u\noperator 2 -> 1\nD_x\n") == 42);
    CHECK(error_offset("independent x\ndependent u\noperator 1 -> 2\nD_x\n") == 46);
    CHECK(error_offset("independent x\ndependent u\noperator 1 -> 1 order 0\nD_x\n") == 26);
    CHECK(error_offset("independent x\ndependent u\noperator dstard 1\n") == 26);
    CHECK(error_offset("independent x t\ndependent u\nmetric diag(1, 2)\n") == 28);
    CHECK(error_offset("independent x t\ndependent u\nmetric diag(1, a)\n") == 42);
    CHECK(error_offset("independent x t\ndependent u\nmetric diag(1)\n") == 28);
    CHECK(error_offset("independent x t\ndependent u v\nevolution u = u_x\n") == 0);
    CHECK(error_offset("independent x t\ndependent u\nevolution q = u_x\n") == 37);
    CHECK(error_offset("independent x t\ndependent u\nevolution u = u_x\nevolution u = u\n") == 46);
    CHECK(error_offset("independent x t\ndependent u\noperator dbar 5\n") == 28);
    CHECK_THROWS_AS(parse_problem(""), ParseError);
    CHECK_THROWS_AS(parse_problem("independent x x\n"), ParseError);
}
