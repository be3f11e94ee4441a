// Serial reference vs OpenMP kernels: Brandes betweenness sums and per-team
// cohort metrics.

#include <map>
#include <random>

#include <benchmark/benchmark.h>

#include "commscore/betweenness.hpp"
#include "commscore/centrality.hpp"
#include "commscore/metrics.hpp"
#include "commscore/synth.hpp"

using namespace commscore;

namespace {

Digraph random_graph(std::size_t n, double mean_degree, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  const auto m = static_cast<std::size_t>(mean_degree * static_cast<double>(n));
  for (std::size_t i = 0; i < m; ++i) edges.emplace_back(pick(rng), pick(rng));
  return Digraph::from_edges(n, edges);
}

void BM_BetweennessSerial(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 4.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_sums_serial<double>(g));
  state.SetComplexityN(state.range(0));
}

void BM_BetweennessParallel(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 4.0, 7);
  for (auto _ : state) benchmark::DoNotOptimize(betweenness_sums_parallel(g));
  state.SetComplexityN(state.range(0));
}

const std::vector<TeamCorpus>& cohort() {
  static const std::vector<TeamCorpus> corpora = [] {
    SynthSpec spec;
    spec.months = 3;
    const auto data = synthesize(spec);
    std::map<std::string, std::vector<EmailEvent>> by_team;
    for (const auto& e : data.mail) by_team[e.team_id].push_back(e);
    std::vector<TeamCorpus> out;
    for (auto& [team, events] : by_team) out.push_back(build_corpus(events, team, data.period).corpus);
    return out;
  }();
  return corpora;
}

void BM_CohortMetricsSerial(benchmark::State& state) {
  const auto& corpora = cohort();
  for (auto _ : state) benchmark::DoNotOptimize(compute_cohort_metrics_serial(corpora));
}

void BM_CohortMetricsParallel(benchmark::State& state) {
  const auto& corpora = cohort();
  for (auto _ : state) benchmark::DoNotOptimize(compute_cohort_metrics(corpora));
}

}  // namespace

BENCHMARK(BM_BetweennessSerial)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BetweennessParallel)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CohortMetricsSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CohortMetricsParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
