#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "dcov/design.hpp"
#include "dcov/msc_coverage.hpp"
#include "dcov/statechart_coverage.hpp"
#include "dcov/structure_coverage.hpp"
#include "dcov/trace.hpp"

namespace {

using namespace dcov;

Statechart ring_chart(int states, int events) {
  Statechart chart;
  chart.name = "Bench";
  chart.initial = "S0";
  for (int s = 0; s < states; ++s) {
    for (int e = 0; e < events; ++e) {
      chart.transitions.push_back({"S" + std::to_string(s), "S" + std::to_string((s * 3 + e * 7 + 1) % states),
                                   "e" + std::to_string(e)});
    }
  }
  return chart;
}

Trace walk(const Statechart& chart, int events, int alphabet) {
  std::mt19937_64 rng(42);
  Trace trace;
  std::string at = chart.initial;
  trace.events.push_back({0, EventKind::State, {at}, {}});
  while (static_cast<int>(trace.events.size()) + 2 <= events) {
    std::string ev = "e" + std::to_string(std::uniform_int_distribution<int>(0, alphabet - 1)(rng));
    for (const auto& t : chart.transitions) {
      if (t.from == at && t.event == ev) {
        at = t.to;
        break;
      }
    }
    Timestamp ts = trace.events.size();
    trace.events.push_back({ts, EventKind::Event, {ev}, {}});
    trace.events.push_back({ts + 1, EventKind::State, {at}, {}});
  }
  return trace;
}

void BM_StatechartTraceLength(benchmark::State& state) {
  Statechart chart = ring_chart(10, 4);
  Trace trace = walk(chart, static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_statechart(chart, trace));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trace.events.size()));
}
BENCHMARK(BM_StatechartTraceLength)->RangeMultiplier(10)->Range(1000, 1'000'000)->Unit(benchmark::kMillisecond);

void BM_StatechartDesignSize(benchmark::State& state) {
  Statechart chart = ring_chart(static_cast<int>(state.range(0)), 8);
  Trace trace = walk(chart, 100'000, 8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_statechart(chart, trace));
  }
}
BENCHMARK(BM_StatechartDesignSize)->RangeMultiplier(4)->Range(4, 256)->Unit(benchmark::kMillisecond);

void BM_MscChain(benchmark::State& state) {
  MscChart chart;
  chart.name = "Chain";
  const int tuples = static_cast<int>(state.range(0));
  for (int i = 0; i < tuples; ++i) {
    chart.sends.push_back({"m" + std::to_string(i), "A", "B", "msg" + std::to_string(i)});
    if (i > 0) chart.follows.push_back({"m" + std::to_string(i - 1), "m" + std::to_string(i)});
  }
  Trace trace;
  for (int k = 0; k < 100'000; ++k) {
    trace.events.push_back(
        {static_cast<Timestamp>(k), EventKind::Send, {"A", "B", "msg" + std::to_string(k % tuples)}, {}});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_msc(chart, trace));
  }
}
BENCHMARK(BM_MscChain)->Arg(4)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_PatternMatch(benchmark::State& state) {
  ClassDiagram cd;
  cd.name = "G";
  cd.classes = {"N"};
  cd.assocs = {{"e", "N", "N", Multiplicity::ZeroOrMany}};
  ObjectGraph graph;
  const int objects = static_cast<int>(state.range(0));
  std::mt19937_64 rng(7);
  for (int i = 0; i < objects; ++i) graph.add_object("o" + std::to_string(i), "N");
  for (int i = 0; i < objects * 3; ++i) {
    std::uniform_int_distribution<int> pick(0, objects - 1);
    graph.add_link({"o" + std::to_string(pick(rng)), "e", "o" + std::to_string(pick(rng))});
  }
  Pattern path{"Path", {{"a", "N"}, {"b", "N"}, {"c", "N"}}, {{"a", "e", "b"}, {"b", "e", "c"}}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(match_pattern(cd, graph, path));
  }
}
BENCHMARK(BM_PatternMatch)->RangeMultiplier(2)->Range(8, 64)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
