#include <doctest.h>

#include "cdcalc/errors.hpp"
#include "cdcalc/expr_parser.hpp"
#include "cdcalc/multi_index.hpp"
#include "support.hpp"

using namespace cdcalc;
using namespace cdcalc::testing;

TEST_CASE("rationals are canonical")
{
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(parse_rational("4/2").get_den() == 1);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK(binomial(6, 2) == 15);
}

TEST_CASE("multi-index arithmetic and order")
{
    MultiIndex a{1, 0};
    CHECK(a == MultiIndex{0, 1});
    CHECK(a.count(0) == 1);
    CHECK((a + MultiIndex{0}) == MultiIndex{0, 0, 1});
    CHECK((MultiIndex{0, 0, 1} - MultiIndex{0}) == MultiIndex{0, 1});
    CHECK(MultiIndex{1} < MultiIndex{0, 0});
    CHECK(multi_indices_of_order(2, 2).size() == 3);
    CHECK(multi_indices_up_to(3, 2).size() == 10);
    CHECK(increasing_tuples(4, 2).size() == 6);
    std::vector<int> p{1, 0, 2};
    CHECK(permutation_sign(p) == -1);
    std::vector<int> q{1, 1};
    CHECK(permutation_sign(q) == 0);

    // Leibniz multiplicities: subsets of {x,x,t} weighted by binomials sum to 2^3
    Integer total = 0;
    int count = 0;
    for_each_submultiset(MultiIndex{0, 0, 1}, [&](const MultiIndex&, const Integer& m) {
        total += m;
        ++count;
    });
    CHECK(total == 8);
    CHECK(count == 6);
}

TEST_CASE("expression parsing")
{
    auto ctx = kdv_free_context();
    auto u = DiffPoly::coord(CoordId::jet(0));
    auto ux = DiffPoly::coord(CoordId::jet(0, MultiIndex{0}));
    auto lam = DiffPoly::coord(CoordId::parameter(0));

    CHECK(parse_expr("u*u_x + 2", *ctx) == u * ux + DiffPoly(2));
    CHECK(parse_expr("u_{x,t}", *ctx) == parse_expr("u_xt", *ctx));
    CHECK(parse_expr("u_{t,x}", *ctx) == parse_expr("u_tx", *ctx));
    CHECK(parse_expr("(lambda + u)^2", *ctx) == lam * lam + DiffPoly(2) * lam * u + u * u);
    CHECK(parse_expr("-(u)/3", *ctx) == u * Rational(-1, 3));
    CHECK(parse_expr("3/6*u", *ctx) == u * Rational(1, 2));
    CHECK(parse_coord("u_xx", *ctx) == CoordId::jet(0, MultiIndex{0, 0}));
    CHECK(parse_coord("lambda", *ctx) == CoordId::parameter(0));
}

TEST_CASE("parse errors carry offsets")
{
    auto ctx = kdv_free_context();
    try {
        parse_expr("u_", *ctx);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 1);
    }
    try {
        parse_expr("u + q", *ctx);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
    CHECK_THROWS_AS(parse_expr("u / u", *ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("u / 0", *ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("(u", *ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("u^-1", *ctx), ParseError);
    CHECK_THROWS_AS(parse_expr("D_x", *ctx), ParseError);
}

TEST_CASE("printing round-trips through the parser")
{
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n) {
        auto ctx = free_context(n, 2);
        for (int k = 0; k < 40; ++k) {
            DiffPoly f = random_poly(*ctx, rng, 2, 4, 3);
            CHECK(parse_expr(to_string(f, *ctx), *ctx) == f);
        }
    }
    auto wide = make_context(JetContext({"xa", "tb"}, {"u"}));
    DiffPoly g = parse_expr("u_{xa,tb}^2 - 1/2*xa", *wide);
    CHECK(to_string(g, *wide) == "u_{xa,tb}^2 - 1/2*xa");
    CHECK(parse_expr(to_string(g, *wide), *wide) == g);
}

TEST_CASE("ring laws on random polynomials")
{
    std::mt19937_64 rng(5);
    auto ctx = free_context(2, 1);
    for (int k = 0; k < 50; ++k) {
        DiffPoly a = random_poly(*ctx, rng, 2);
        DiffPoly b = random_poly(*ctx, rng, 2);
        DiffPoly c = random_poly(*ctx, rng, 2);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a * DiffPoly(1) == a);
        CHECK(a.pow(2) == a * a);
        for (const auto& coord : a.coordinates())
            CHECK((a * b).partial(coord) == a.partial(coord) * b + a * b.partial(coord));
    }
}
