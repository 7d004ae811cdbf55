// Serial reference vs OpenMP kernels, and dense vs Krylov eigen-solves.
#include "cable/config.hpp"
#include "cable/identification.hpp"
#include "cable/modal_solver.hpp"
#include "cable/sweep.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace cable;

namespace {

RunConfig cable1() { return parse_config_file(std::string(CABLE_CONFIG_DIR) + "/cable1.json"); }

void BM_Assemble(benchmark::State& state) {
    auto c = cable1();
    c.n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_cable(c.properties(), c.discretization(), c.require_H(), c.boundary));
    }
}
BENCHMARK(BM_Assemble)->Arg(99)->Arg(199)->Arg(399);

void BM_Eigen(benchmark::State& state, EigenMethod method) {
    auto c = cable1();
    c.n = static_cast<int>(state.range(0));
    const auto sys = assemble_cable(c.properties(), c.discretization(), c.require_H(), c.boundary);
    for (auto _ : state) benchmark::DoNotOptimize(lowest_frequencies(sys, 7, method));
}
BENCHMARK_CAPTURE(BM_Eigen, dense, EigenMethod::dense)->Arg(99)->Arg(199)->Arg(399)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Eigen, krylov, EigenMethod::krylov)->Arg(99)->Arg(199)->Arg(399)->Unit(benchmark::kMillisecond);

void BM_SwarmEvaluation(benchmark::State& state, pso::Execution execution) {
    const auto c = cable1();
    const auto space = c.search_space();
    const auto cable = c.known_cable();
    const auto measured = c.require_measured();
    pso::PsoConfig cfg;
    cfg.population = 100;
    pso::Rng rng(1);
    const pso::FitnessFn f = [&](const pso::Position& x) {
        std::array<double, kParamCount> a{};
        std::copy(x.begin(), x.end(), a.begin());
        return fitness(ParameterVector::from_array(a), cable, measured);
    };
    auto swarm = pso::initialize_swarm(space, cfg, rng, [](const pso::Position&) { return 0.0; });
    for (auto _ : state) {
        if (execution == pso::Execution::serial) pso::evaluate_serial(swarm.particles, f);
        else pso::evaluate_parallel(swarm.particles, f);
    }
    state.SetItemsProcessed(state.iterations() * cfg.population);
}
BENCHMARK_CAPTURE(BM_SwarmEvaluation, serial, pso::Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_SwarmEvaluation, parallel, pso::Execution::parallel)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state, pso::Execution execution) {
    const auto c = cable1();
    const SweepFixed fixed{c.exact->H, c.exact->EI, c.exact->EA};
    SweepSpec spec;
    spec.kr = {3, 7, 9, true, false};
    spec.ks = {4, 9, 11, false, false};
    for (auto _ : state) benchmark::DoNotOptimize(sweep_frequencies(c.known_cable(), fixed, spec, execution));
}
BENCHMARK_CAPTURE(BM_Sweep, serial, pso::Execution::serial)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Sweep, parallel, pso::Execution::parallel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
