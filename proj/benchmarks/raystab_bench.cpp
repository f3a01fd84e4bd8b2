#include <benchmark/benchmark.h>

#include "raystab/grammar_builder.hpp"
#include "raystab/group_file.hpp"
#include "raystab/schreier.hpp"
#include "raystab/series.hpp"
#include "raystab/stab_decide.hpp"
#include "raystab/transducer.hpp"

using namespace raystab;

namespace {

GeneratingSet group(const char* name) { return load_group(std::string(RAYSTAB_DATA_DIR "/groups/") + name + ".grp"); }

const char* const kGroups[] = {"dihedral", "img_z2_i", "basilica"};
const Vertex kPeriods[] = {Vertex{1}, Vertex{1, 0}, Vertex{1, 0}};

void BM_BuildGrammars(benchmark::State& state) {
  GeneratingSet gens = group(kGroups[state.range(0)]);
  for (auto _ : state) benchmark::DoNotOptimize(build_grammars(gens, {}, kPeriods[state.range(0)]));
  state.SetLabel(kGroups[state.range(0)]);
}
BENCHMARK(BM_BuildGrammars)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_GenerateLimiting(benchmark::State& state) {
  GeneratingSet gens = group("img_z2_i");
  LimitingGrammar e = LimitingGrammar::create(build_grammars(gens, {}, Vertex{1, 0}).e);
  for (auto _ : state) benchmark::DoNotOptimize(generate_limiting(e, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_GenerateLimiting)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

void BM_Gfun(benchmark::State& state) {
  GeneratingSet gens = group("img_z2_i");
  LimitingGrammar e = LimitingGrammar::create(build_grammars(gens, {}, Vertex{1, 0}).e);
  for (auto _ : state) benchmark::DoNotOptimize(gfun_recurrence(e, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Gfun)->RangeMultiplier(2)->Range(4, 16)->Unit(benchmark::kMillisecond);

void BM_EnumerateWp(benchmark::State& state) {
  GeneratingSet gens = group("img_z2_i");
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_wp(gens, {}, Vertex{1, 0}, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_EnumerateWp)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_StableWalkCounts(benchmark::State& state) {
  GeneratingSet gens = group("basilica");
  for (auto _ : state)
    benchmark::DoNotOptimize(stable_walk_counts(gens, Ray({}, Vertex{1, 0}), static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_StableWalkCounts)->RangeMultiplier(2)->Range(8, 32)->Unit(benchmark::kMillisecond);

void BM_RestrictToSubgroup(benchmark::State& state) {
  GeneratingSet gens = group("dihedral");
  LimitingGrammar e = LimitingGrammar::create(build_grammars(gens, {}, Vertex{1}).e);
  std::vector<SubgroupGenerator> ys{{"x", gens.parse_word("ab")}, {"y", gens.parse_word("b")}};
  for (auto _ : state) benchmark::DoNotOptimize(restrict_to_subgroup(e, gens, ys, 8));
}
BENCHMARK(BM_RestrictToSubgroup)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
