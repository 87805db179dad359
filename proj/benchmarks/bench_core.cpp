#include <benchmark/benchmark.h>

#include <random>

#include "cdcalc/compat.hpp"
#include "cdcalc/jet_point.hpp"
#include "cdcalc/linalg.hpp"
#include "cdcalc/opalgebra.hpp"
#include "cdcalc/pform.hpp"
#include "cdcalc/spencer.hpp"

using namespace cdcalc;

namespace {

JetContextPtr context(int n)
{
    static const char* names[] = {"x", "y", "z", "w"};
    return make_context(JetContext(std::vector<std::string>(names, names + n), {"u"}));
}

CDiffOp maxwell(const JetContextPtr& ctx)
{
    return dstard_operator(ctx, Metric::euclidean(4), 1);
}

void BM_MaxwellFiberMap(benchmark::State& state)
{
    auto ctx = context(4);
    CDiffOp op = maxwell(ctx);
    const int l = static_cast<int>(state.range(0));
    JetPoint pt = generic_points(ctx, required_point_order(op, l), 0).front();
    for (auto _ : state)
        benchmark::DoNotOptimize(fiber_map(op, l, pt));
}
BENCHMARK(BM_MaxwellFiberMap)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_MaxwellRank(benchmark::State& state)
{
    auto ctx = context(4);
    CDiffOp op = maxwell(ctx);
    const int l = static_cast<int>(state.range(0));
    JetPoint pt = generic_points(ctx, required_point_order(op, l), 0).front();
    RationalMatrix m = fiber_map(op, l, pt).matrix;
    for (auto _ : state)
        benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_MaxwellRank)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_MaxwellExactness(benchmark::State& state)
{
    auto ctx = context(4);
    OperatorComplex c({maxwell(ctx), dbar_operator(ctx, 3)});
    const int l = static_cast<int>(state.range(0));
    auto pts = generic_points(ctx, exactness_point_order(c, l), 0);
    for (auto _ : state)
        benchmark::DoNotOptimize(check_formal_exactness(c, l, pts.front()));
}
BENCHMARK(BM_MaxwellExactness)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_SpencerGradient(benchmark::State& state)
{
    auto ctx = context(static_cast<int>(state.range(0)));
    CDiffOp grad = dbar_operator(ctx, 0);
    JetPoint pt = generic_points(ctx, spencer_point_order(grad), 0).front();
    for (auto _ : state)
        benchmark::DoNotOptimize(spencer_cohomology(grad, 3, pt));
}
BENCHMARK(BM_SpencerGradient)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_ComposeThirdOrder(benchmark::State& state)
{
    auto ctx = context(2);
    CDiffOp a = parse_operator_matrix("u*D_{x,x,x} + u_x*D_{x,y} - D_y", ctx);
    CDiffOp b = parse_operator_matrix("u_y*D_{y,y,y} + u^2*D_x + 1", ctx);
    for (auto _ : state)
        benchmark::DoNotOptimize(compose(a, b));
}
BENCHMARK(BM_ComposeThirdOrder)->Unit(benchmark::kMicrosecond);

void BM_AdjointThirdOrder(benchmark::State& state)
{
    auto ctx = context(2);
    CDiffOp a = parse_operator_matrix("u*D_{x,x,x} + u_x*D_{x,y} - D_y ; D_x\nu_xx ; u*D_{y,y}", ctx);
    for (auto _ : state)
        benchmark::DoNotOptimize(adjoint(a));
}
BENCHMARK(BM_AdjointThirdOrder)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
