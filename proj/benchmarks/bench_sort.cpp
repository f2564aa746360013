#include <benchmark/benchmark.h>

#include "defsort/parser.hpp"
#include "defsort/reorder.hpp"

#include <sstream>
#include <string>

namespace {

// A chain of n functions where each calls the next one, declared
// caller-first so every call is a forward reference.
std::string chain_module(int n) {
    std::ostringstream out;
    out << "module Chain\nexports all\ndefinitions\nfunctions\n";
    for (int i = 0; i < n; ++i) {
        out << "    f" << i << ": nat -> nat\n";
        if (i + 1 < n)
            out << "    f" << i << "(x) == f" << i + 1 << "(x + 1);\n\n";
        else
            out << "    f" << i << "(x) == x;\n\n";
    }
    out << "end Chain\n";
    return out.str();
}

void BM_Parse(benchmark::State& state) {
    const std::string text = chain_module(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(defsort::parse_module(text, "chain.vdmsl"));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Parse)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Sort(benchmark::State& state) {
    const auto m = defsort::parse_module(chain_module(static_cast<int>(state.range(0))), "chain.vdmsl");
    for (auto _ : state)
        benchmark::DoNotOptimize(defsort::sort_module(m));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Sort)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

} // namespace

BENCHMARK_MAIN();
