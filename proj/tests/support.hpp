#pragma once

#include <random>
#include <vector>

#include "cdcalc/diff_poly.hpp"
#include "cdcalc/jet_context.hpp"
#include "cdcalc/jet_point.hpp"
#include "cdcalc/jetcalc.hpp"
#include "cdcalc/opalgebra.hpp"

namespace cdcalc::testing {

inline Rational small_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    int a = 0;
    while (a == 0)
        a = num(rng);
    return canonical(Rational(a, den(rng)));
}

/// Sum of `terms` random monomials of degree ≤ max_degree in the internal
/// coordinates of order ≤ max_order.
inline DiffPoly random_poly(const JetContext& ctx, std::mt19937_64& rng, int max_order, int terms = 3,
                            int max_degree = 2)
{
    auto coords = coordinates_up_to(ctx, max_order);
    std::uniform_int_distribution<std::size_t> pick(0, coords.size() - 1);
    std::uniform_int_distribution<int> deg(0, max_degree);
    DiffPoly f;
    for (int t = 0; t < terms; ++t) {
        DiffPoly m(small_rational(rng));
        for (int d = deg(rng); d > 0; --d)
            m *= DiffPoly::coord(coords[pick(rng)]);
        f += m;
    }
    return f;
}

inline MultiIndex random_multi_index(int n, int order, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> idx(0, n - 1);
    std::vector<int> e;
    for (int k = 0; k < order; ++k)
        e.push_back(idx(rng));
    return MultiIndex(e);
}

/// Random scalar operator of order ≤ order with polynomial coefficients.
inline ScalarCDiffOp random_scalar_op(const JetContext& ctx, std::mt19937_64& rng, int order, int terms = 2,
                                      int coeff_order = 1)
{
    std::uniform_int_distribution<int> ord(0, order);
    ScalarCDiffOp op;
    for (int t = 0; t < terms; ++t)
        op.add(random_multi_index(ctx.n(), ord(rng), rng), random_poly(ctx, rng, coeff_order, 2, 1));
    return op;
}

inline CDiffOp random_op(const JetContextPtr& ctx, std::mt19937_64& rng, int rows, int cols, int order,
                         int coeff_order = 1)
{
    CDiffOp op(ctx, rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            op.entry(r, c) = random_scalar_op(*ctx, rng, order, 2, coeff_order);
    return op;
}

inline HorizontalForm random_form(const JetContext& ctx, int degree, std::mt19937_64& rng, int max_order = 1)
{
    std::vector<DiffPoly> v;
    for (std::size_t k = 0; k < increasing_tuples(ctx.n(), degree).size(); ++k)
        v.push_back(random_poly(ctx, rng, max_order, 2, 2));
    return HorizontalForm::from_vector(ctx.n(), degree, v);
}

inline std::vector<DiffPoly> random_vector(const JetContext& ctx, std::size_t size, std::mt19937_64& rng,
                                           int max_order = 1)
{
    std::vector<DiffPoly> v;
    for (std::size_t k = 0; k < size; ++k)
        v.push_back(random_poly(ctx, rng, max_order, 2, 2));
    return v;
}

inline JetContextPtr free_context(int n, int m = 1)
{
    static const char* xs[] = {"x", "t", "y", "z", "w"};
    static const char* us[] = {"u", "v", "w2"};
    std::vector<std::string> ind(xs, xs + n);
    std::vector<std::string> dep(us, us + m);
    return make_context(JetContext(ind, dep));
}

inline JetContextPtr kdv_free_context()
{
    return make_context(JetContext({"x", "t"}, {"u"}, {"lambda"}));
}

inline JetContextPtr kdv_evolution_context()
{
    auto free = kdv_free_context();
    auto u = DiffPoly::coord(CoordId::jet(0));
    auto ux = DiffPoly::coord(CoordId::jet(0, MultiIndex{0}));
    auto uxxx = DiffPoly::coord(CoordId::jet(0, MultiIndex{0, 0, 0}));
    return make_context(free->with_evolution({u * ux + uxxx}, 1));
}

}  // namespace cdcalc::testing
