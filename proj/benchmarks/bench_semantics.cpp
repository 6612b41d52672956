#include "deacp/semantics.hpp"
#include "deacp/syntax.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace deacp;

namespace {

// n independent two-step assignment chains in parallel: 3^n states.
Term chains(int n)
{
    std::string text;
    for (int i = 0; i < n; ++i) {
        if (i) text += " || ";
        std::string v = "x" + std::to_string(i);
        text += "(" + v + " := [0=1] . " + v + " := [0=0])";
    }
    return parse_term(text);
}

void BM_BuildLtsInterleaving(benchmark::State &state)
{
    Term t = chains(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        Lts l = build_lts(t, Valuation{}, 1000000);
        benchmark::DoNotOptimize(l.size());
    }
}
BENCHMARK(BM_BuildLtsInterleaving)->DenseRange(2, 6);

void BM_RootedBranchingBisim(benchmark::State &state)
{
    Lts a = build_lts(chains(static_cast<int>(state.range(0))), Valuation{}, 1000000);
    Lts b = build_lts(Term::seq(Term::tau(), chains(static_cast<int>(state.range(0)))), Valuation{}, 1000000);
    for (auto _ : state) benchmark::DoNotOptimize(rb_bisim(a, a) && !rb_bisim(a, b));
    state.counters["states"] = static_cast<double>(a.size());
}
BENCHMARK(BM_RootedBranchingBisim)->DenseRange(2, 5);

void BM_SyncMergeCounter(benchmark::State &state)
{
    Term count = parse_term("rec X {X = RM = [] :-> RM := [0=1] . X + ~RM = [] :-> eps}");
    for (auto _ : state) {
        Lts l = build_lts(sync_merge_expand(count, count), Valuation{}, 1000);
        benchmark::DoNotOptimize(l.size());
    }
}
BENCHMARK(BM_SyncMergeCounter);

} // namespace
