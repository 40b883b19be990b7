// Serial reference paths against their OpenMP counterparts. The second argument of every
// benchmark selects the path: 0 serial, 1 parallel.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <sstream>

#include "rca/miner.hpp"
#include "rca/rank.hpp"
#include "rca/synth.hpp"

using namespace rca;

namespace {

Execution exec_of(const benchmark::State& state) {
  return state.range(0) ? Execution::parallel : Execution::serial;
}

// First eight expression measures: enough to show the scaling without a full catalog run.
const Catalog& small_catalog() {
  static const Catalog cat = [] {
    std::istringstream in(Catalog::builtin().text());
    std::string text, line;
    int kept = 0;
    while (std::getline(in, line) && kept < 8) {
      if (line.empty() || line[0] == '#' || line.find("NATIVE") != std::string::npos) continue;
      text += line + '\n';
      ++kept;
    }
    return Catalog::parse(text);
  }();
  return cat;
}

const std::vector<ContingencyTable>& sparse_tables() {
  static const auto tables = generate(GridPreset::sparse());
  return tables;
}

void BM_ClassifyCatalog(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_catalog(small_catalog(), ProbeGrid{}, exec_of(state)));
  }
}
BENCHMARK(BM_ClassifyCatalog)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RankRules(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rank_rules(sparse_tables(), Catalog::builtin(), exec_of(state)));
  }
}
BENCHMARK(BM_RankRules)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_SpearmanMatrix(benchmark::State& state) {
  const auto rm = rank_rules(sparse_tables(), Catalog::builtin());
  for (auto _ : state) benchmark::DoNotOptimize(spearman_matrix(rm, exec_of(state)));
}
BENCHMARK(BM_SpearmanMatrix)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MineRules(benchmark::State& state) {
  const auto m = load_transactions(std::filesystem::path(RCA_DATA_DIR) / "fixtures" /
                                   "adult_style.csv");
  for (auto _ : state) benchmark::DoNotOptimize(mine_rules(m, {}, exec_of(state)));
}
BENCHMARK(BM_MineRules)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
