#include <benchmark/benchmark.h>

#include <algorithm>

#include "lvoa/commutant.hpp"
#include "lvoa/elements.hpp"
#include "lvoa/maps.hpp"
#include "lvoa/parallel.hpp"

using namespace lvoa;

namespace {

std::vector<StateVector> low_states(const LatticeVoa& voa, const Rational& cutoff) {
    std::vector<StateVector> out;
    const GradedBasis basis = enumerate_basis(voa.lattice(), {}, cutoff);
    for (const auto& b : basis.blocks())
        for (const auto& s : b.states) out.emplace_back(s);
    return out;
}

// Every u_m v over low states of V_{A_2}; the mode range is fixed so both engines do equal work.
template <class Engine>
void run_modes(benchmark::State& state, Engine&& engine) {
    const LatticeVoa voa(build_a_tensor(3, 1, "a"));
    const auto states = low_states(voa, Rational(2));
    for (auto _ : state) {
        std::size_t terms = 0;
        for (const auto& u : states)
            for (const auto& v : states)
                for (std::int64_t m = -1; m <= 2; ++m) terms += engine(voa, u, m, v).terms().size();
        benchmark::DoNotOptimize(terms);
    }
}

void BM_ModeClosedForm(benchmark::State& state) {
    run_modes(state, [](const LatticeVoa& voa, const StateVector& u, std::int64_t m, const StateVector& v) {
        return mode(u, m, v, voa);
    });
}

// Fresh memo per iteration so the reference pays its full recursion cost.
void BM_ModeReference(benchmark::State& state) {
    run_modes(state, [](const LatticeVoa& voa, const StateVector& u, std::int64_t m, const StateVector& v) {
        ReferenceModes ref(voa);
        return ref.mode(u, m, v);
    });
}

void BM_CommutantBlocks(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const LatticeVoa voa(build_a_tensor(2, 3, "a"));
    const CurrentAlgebra cur = diagonal_currents(voa, 2, 3);
    std::vector<StateVector> gens;
    for (const auto& e : cur.basis) gens.push_back(e.value);
    for (auto _ : state) benchmark::DoNotOptimize(commutant_of_generators(voa, gens, Rational(5)).total_dim());
}

void BM_VerifyHomomorphism(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const DualityMaps maps = build_duality_maps(2, 3);
    for (auto _ : state) benchmark::DoNotOptimize(verify_homomorphism(maps.tau, Rational(4)).checks);
}

const int kParallelThreads = std::max(2, thread_count());

}  // namespace

BENCHMARK(BM_ModeClosedForm)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ModeReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CommutantBlocks)->Arg(1)->Arg(kParallelThreads)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VerifyHomomorphism)->Arg(1)->Arg(kParallelThreads)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
