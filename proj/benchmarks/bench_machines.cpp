#include "deacp/complexity.hpp"
#include "deacp/machines.hpp"

#include <benchmark/benchmark.h>

using namespace deacp;

namespace {

// Counts register 1 up to register 2.
const char *kCounter = "jmp:gt:2:1:3\nhalt\nadd:1:#1:1\njmp:eq:#0:#0:1\n";

MemState counter_input(std::int64_t n) { return ims().override(1, ntob(0)).override(2, ntob(n)); }

void BM_DirectInterpreter(benchmark::State &state)
{
    Program p = parse_program(kCounter, MachineKind::BBRAM);
    MemState in = counter_input(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_bbram(p, in, 1000000).steps);
}
BENCHMARK(BM_DirectInterpreter)->RangeMultiplier(4)->Range(16, 1024);

void BM_ProcessPipeline(benchmark::State &state)
{
    Term t = proc_of_bbram(parse_program(kCounter, MachineKind::BBRAM));
    Valuation rho{{"RM", counter_input(state.range(0))}};
    for (auto _ : state) benchmark::DoNotOptimize(sutm(t, rho, 1000000));
}
BENCHMARK(BM_ProcessPipeline)->RangeMultiplier(4)->Range(16, 1024);

void BM_SpwmStraightLine(benchmark::State &state)
{
    std::vector<Program> cs(static_cast<std::size_t>(state.range(0)),
                            parse_program("mov:#1:0\nadd:0:0:1\nshl:1:2\nhalt", MachineKind::SMBRAM));
    Term t = spramp_of(cs);
    for (auto _ : state) benchmark::DoNotOptimize(spwm(t, {}, 1000000));
}
BENCHMARK(BM_SpwmStraightLine)->DenseRange(1, 4);

} // namespace

BENCHMARK_MAIN();
