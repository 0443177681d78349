#include <benchmark/benchmark.h>

#include <algorithm>
#include <string>
#include <vector>

#include "qps/grover.hpp"
#include "qps/perf_model.hpp"
#include "qps/permutation_op.hpp"
#include "qps/probabilistic.hpp"
#include "qps/reversible.hpp"
#include "qps/rules.hpp"

namespace {

// Five-symbol sorter: one swap rule per out-of-order adjacent pair.
qps::ProductionSystem sorting() {
    qps::ProductionSystem sys;
    sys.alphabet = "abcde";
    int id = 1;
    for (char high = 'b'; high <= 'e'; ++high)
        for (char low = 'a'; low < high; ++low)
            sys.rules.push_back({id++, std::string{high, low}, std::string{low, high}});
    std::sort(sys.rules.begin(), sys.rules.end(),
              [](const qps::Production& a, const qps::Production& b) { return a.id < b.id; });
    sys.initials = {"edcba"};
    sys.goals = {"abcde"};
    return sys;
}

qps::ProductionSystem swap12() {
    qps::ProductionSystem sys;
    sys.alphabet = "ab";
    sys.rules = {{1, "ab", "ba"}};
    for (uint64_t bits = 0; bits < 4096; ++bits) {
        std::string s(12, 'a');
        for (int i = 0; i < 12; ++i)
            if (bits & (uint64_t{1} << (11 - i))) s[i] = 'b';
        sys.initials.push_back(s);
    }
    sys.goals = {std::string(12, 'b')};
    return sys;
}

void BM_run_forward_all_permutations(benchmark::State& state) {
    qps::ProductionSystem sys = sorting();
    for (auto _ : state) {
        std::string memory = "abcde";
        do {
            benchmark::DoNotOptimize(qps::run_forward(sys, memory));
        } while (std::next_permutation(memory.begin(), memory.end()));
    }
}
BENCHMARK(BM_run_forward_all_permutations);

void BM_run_reversible(benchmark::State& state) {
    qps::ProductionSystem sys = sorting();
    for (auto _ : state)
        benchmark::DoNotOptimize(qps::run_reversible(sys, "edcba"));
}
BENCHMARK(BM_run_reversible);

void BM_build_operator(benchmark::State& state) {
    qps::ProductionSystem sys = sorting();
    for (auto _ : state) {
        qps::PermutationOperator op = qps::build_operator(sys);
        benchmark::DoNotOptimize(op.map.data());
    }
}
BENCHMARK(BM_build_operator);

void BM_grover_iterate_16_bits(benchmark::State& state) {
    qps::OracleSpec spec = qps::make_oracle_spec(swap12(), 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            qps::grover_search(spec, qps::GroverMode::Uncompute, static_cast<int>(state.range(0)), 0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_grover_iterate_16_bits)->Arg(1)->Arg(10)->Arg(50);

void BM_ratio_surface(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(qps::ratio_surface(qps::kSurfaceMax, 1));
}
BENCHMARK(BM_ratio_surface);

void BM_expand_tree(benchmark::State& state) {
    qps::ProductionSystem sys;
    sys.alphabet = "ab";
    sys.rules = {{1, "a", "a"}, {2, "a", "b"}, {3, "b", "a"}, {4, "b", "b"}};
    sys.initials = {"a"};
    sys.goals = {"b"};
    qps::StochasticControl control;
    control.table["a"] = {{1, "a", false, 0.5}, {2, "b", false, 0.5}};
    control.table["b"] = {{3, "a", false, 0.5}, {4, "b", false, 0.5}};
    for (auto _ : state)
        benchmark::DoNotOptimize(qps::expand_tree(sys, control, "a", static_cast<int>(state.range(0))));
}
BENCHMARK(BM_expand_tree)->Arg(3)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
