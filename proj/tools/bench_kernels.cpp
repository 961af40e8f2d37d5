#include <hahnfield/couple.hpp>
#include <hahnfield/derivation.hpp>
#include <hahnfield/ranks.hpp>

#include <benchmark/benchmark.h>

using namespace hahnfield;

namespace {

AsymptoticCouple gap_couple(std::size_t q)
{
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= q; ++i) {
        labels.push_back("q" + std::to_string(i));
    }
    ChainPtr chain = Chain::product(labels);
    return couple_from_shift(chain, GroupElement::unit(chain, ChainPoint::product(q / 2, 0), -1));
}

Exec exec_of(const benchmark::State &state) { return state.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_PsiRank(benchmark::State &state)
{
    AsymptoticCouple c = gap_couple(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(psi_rank(c, {}, exec_of(state)));
    }
}

void BM_UnfoldedRank(benchmark::State &state)
{
    AsymptoticCouple c = gap_couple(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(unfolded_rank(c, {}, exec_of(state)));
    }
}

void BM_CheckAxioms(benchmark::State &state)
{
    AsymptoticCouple c = gap_couple(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_axioms(c, AxiomBudget{{}, 200, 42, exec_of(state)}));
    }
}

void BM_CheckDv(benchmark::State &state)
{
    DerivationConfig cfg(gap_couple(static_cast<std::size_t>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_dv_axioms(cfg, SampleBudget{{}, 500, 42, exec_of(state)}));
    }
}

} // namespace

BENCHMARK(BM_PsiRank)->ArgNames({"q", "parallel"})->ArgsProduct({{2, 4, 8}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_UnfoldedRank)->ArgNames({"q", "parallel"})->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckAxioms)->ArgNames({"q", "parallel"})->ArgsProduct({{2, 4}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CheckDv)->ArgNames({"q", "parallel"})->ArgsProduct({{3}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
