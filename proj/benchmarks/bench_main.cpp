#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "coshare/graph/coshare_graph.hpp"
#include "coshare/graph/null_model.hpp"
#include "coshare/narrative/assemble.hpp"
#include "coshare/stats/tests.hpp"

using namespace coshare;

namespace {

graph::CoShareGraph random_graph(std::size_t n_edges) {
  std::mt19937_64 gen(1);
  std::vector<graph::CoShareEdge> edges;
  edges.reserve(n_edges);
  const std::size_t n_fake = 1 + static_cast<std::size_t>(std::sqrt(static_cast<double>(n_edges)) / 2);
  const std::size_t per_fake = (n_edges + n_fake - 1) / n_fake;
  for (std::size_t i = 0; i < n_edges; ++i)
    edges.push_back({"f" + std::to_string(i / per_fake), "r" + std::to_string(i % per_fake), 1 + gen() % 20});
  return graph::CoShareGraph::from_edges(edges);
}

void BM_ScoreEdges(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(graph::score_edges(g));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_ScoreEdges)->Arg(1000)->Arg(100000);

void BM_Wilcoxon(benchmark::State& state) {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> nd(0.1, 1.0);
  std::vector<double> x(static_cast<std::size_t>(state.range(0)));
  std::vector<double> y(x.size(), 0.0);
  for (auto& v : x) v = nd(gen);
  for (auto _ : state) benchmark::DoNotOptimize(stats::wilcoxon_signed_rank(x, y, stats::Alternative::greater));
}
BENCHMARK(BM_Wilcoxon)->Arg(20)->Arg(1000)->Arg(100000);

void BM_ExtractTuples(benchmark::State& state) {
  const std::string text =
      "The filing claims that Zostavax caused multiple people to develop shingles. Officials denied the report. "
      "Critics say the agency hid the data from parents, and the senator blamed the company for the delay.";
  for (auto _ : state) benchmark::DoNotOptimize(narrative::extract_text_tuples(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_ExtractTuples);

}  // namespace

BENCHMARK_MAIN();
