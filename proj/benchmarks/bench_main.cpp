#include <benchmark/benchmark.h>

#include "noether/conserved.hpp"
#include "noether/linsolve.hpp"
#include "noether/numeric.hpp"
#include "noether/parse.hpp"
#include "noether/symmetry.hpp"

using namespace noether;

namespace {

const std::vector<std::string> xy{"x", "y"};
const char* kCs = "(y'*x'' - x'*y'') + 1/2*(x'^2 + y'^2)";
const char* kTripleCharge =
    "-9/2*x''^2 + 8*x'*x''' - 5*x*D(x,4) + (x''*x''' - 3*x'*D(x,4) + 5*x*D(x,5))*t"
    " + (-x'''^2/2 + x''*D(x,4) - x'*D(x,5))*t^2";

LagrangianSpec cs() { return LagrangianSpec::make(2, 2, parse(kCs, xy)); }

void BM_Parse(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(parse(kTripleCharge, xy));
}
BENCHMARK(BM_Parse);

void BM_TotalDerivative(benchmark::State& state) {
    const Expr e = parse(kTripleCharge, xy);
    for (auto _ : state) benchmark::DoNotOptimize(total_derivative(e));
}
BENCHMARK(BM_TotalDerivative);

void BM_EulerLagrange(benchmark::State& state) {
    const auto s = LagrangianSpec::make(1, 2, parse("x'^4 + 3*x^2*x''^2", xy));
    for (auto _ : state) benchmark::DoNotOptimize(euler_lagrange_all(s));
}
BENCHMARK(BM_EulerLagrange);

void BM_AssembleSystem(benchmark::State& state) {
    const auto s = cs();
    const auto ansatz = build_ansatz(s, AnsatzConfig{});
    for (auto _ : state) benchmark::DoNotOptimize(assemble_system(s, ansatz));
}
BENCHMARK(BM_AssembleSystem)->Unit(benchmark::kMillisecond);

void BM_Nullspace(benchmark::State& state) {
    const auto s = cs();
    const auto system = assemble_system(s, build_ansatz(s, AnsatzConfig{}));
    for (auto _ : state) benchmark::DoNotOptimize(nullspace(system.matrix));
    state.counters["unknowns"] = static_cast<double>(system.unknown_count);
}
BENCHMARK(BM_Nullspace)->Unit(benchmark::kMillisecond);

void BM_FindSymmetriesWithCharges(benchmark::State& state) {
    const auto s = cs();
    for (auto _ : state) {
        const auto search = find_symmetries(s, AnsatzConfig{});
        for (const auto& g : search.generators) benchmark::DoNotOptimize(noether_charge(s, g));
    }
}
BENCHMARK(BM_FindSymmetriesWithCharges)->Unit(benchmark::kMillisecond);

void BM_Rk4(benchmark::State& state) {
    const SystemEvaluator ev(reduce_to_first_order(cs()));
    const double step = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(integrate(ev, {0, 1, 0, 0, 0, 1}, 10.0, step));
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_Rk4)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
