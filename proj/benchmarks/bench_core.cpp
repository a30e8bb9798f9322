#include <benchmark/benchmark.h>

#include "cobord/divdiff.hpp"
#include "cobord/formal_group.hpp"
#include "cobord/hopf.hpp"

using namespace cobord;

namespace {

GradedSeries dense_series(int truncation)
{
    auto table = VarTable::make({{"x", 1}, {"y", 1}});
    GradedSeries s(table, truncation);
    unsigned state = 2463534242u;
    for (int i = 0; i <= truncation; ++i)
        for (int j = 0; i + j <= truncation; ++j) {
            state ^= state << 13, state ^= state >> 17, state ^= state << 5;
            s.add_term({i, j}, make_rat(static_cast<long>(state % 17) - 8, 1 + state % 5));
        }
    return s;
}

} // namespace

static void BM_SeriesMul(benchmark::State& state)
{
    auto a = dense_series(static_cast<int>(state.range(0)));
    auto b = dense_series(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(mul(a, b));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SeriesMul)->DenseRange(4, 16, 4)->Complexity();

static void BM_UniversalFgl(benchmark::State& state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(universal_fgl(static_cast<int>(state.range(0))));
}
BENCHMARK(BM_UniversalFgl)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_SeriesReversion(benchmark::State& state)
{
    int w = static_cast<int>(state.range(0));
    auto lp = log_pair(w); // warm nothing; revert dominates
    benchmark::DoNotOptimize(lp);
    for (auto _ : state)
        benchmark::DoNotOptimize(log_pair(w));
}
BENCHMARK(BM_SeriesReversion)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_StructureConstants(benchmark::State& state)
{
    int w = static_cast<int>(state.range(0));
    auto basis = basis_up_to(w);
    for (auto _ : state) {
        SElement acc;
        for (const auto& a : basis)
            for (const auto& b : basis) {
                if (a.weight() + b.weight() > w)
                    continue;
                // memoized after the first iteration: measures cache traffic
                acc = acc + multiply_basis(a, b);
            }
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_StructureConstants)->DenseRange(2, 6, 2);

static void BM_RStar(benchmark::State& state)
{
    int w = static_cast<int>(state.range(0));
    DualElement lam = star_monomial(MultiIndex(std::vector<int>(w, 1)), w, w);
    auto a = MultiIndex::single(1);
    for (auto _ : state)
        benchmark::DoNotOptimize(r_star(a, lam));
}
BENCHMARK(BM_RStar)->DenseRange(2, 10, 2);

static void BM_InvolutionOperator(benchmark::State& state)
{
    int t = static_cast<int>(state.range(0));
    auto alpha = universal_fgl(2).entry(1, 1).with_table(star_table(t)).truncate_to(t);
    auto op = root_involution_op(1, alpha, t, t);
    auto x = GradedSeries::variable(op.carrier.table, t, "x");
    for (auto _ : state)
        benchmark::DoNotOptimize(op.pi(op.pi(x)));
}
BENCHMARK(BM_InvolutionOperator)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
