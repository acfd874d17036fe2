#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "dcov/design.hpp"
#include "dcov/msc_coverage.hpp"
#include "oracles.hpp"

using namespace dcov;
using testing::make_trace;

namespace {

const DesignModel& model() {
  static const DesignModel m = read_design_file(testing::fixture("phone.dcov"));
  return m;
}

const MscChart& wap1() { return *model().find_msc("WAP1"); }
const MscChart& wap2() { return *model().find_msc("WAP2"); }

// Downward closure under follows.
bool downward_closed(const MscChart& chart, const std::set<std::string>& matched) {
  for (const auto& f : chart.follows) {
    if (matched.count(f.next) && !matched.count(f.first)) return false;
  }
  return true;
}

} // namespace

TEST_CASE("WAP trace covers the first chart only") {
  Trace trace = read_trace_file(testing::fixture("wap_chart1.trace"));
  MscCoverage one = match_msc(wap1(), trace);
  CHECK(one.covered);
  CHECK(one.instances == 1);
  CHECK(one.resets == 0);
  MscCoverage two = match_msc(wap2(), trace);
  CHECK_FALSE(two.covered);
  CHECK(two.instances == 0);
  CHECK(two.resets == 0);
  CHECK(two.matched == std::set<std::string>{"a1", "a2"});
}

TEST_CASE("empty trace covers no chart") {
  MscCoverage cov = match_msc(wap1(), Trace{});
  CHECK_FALSE(cov.covered);
  CHECK(cov.instances == 0);
  CHECK(cov.matched.empty());
  CHECK(cov.tuples == std::set<std::string>{"e1", "e2", "e3", "e4"});
}

TEST_CASE("reverse order is not covered and resets") {
  std::vector<std::string> reversed = {"e4", "e3", "e2", "e1"};
  MscCoverage cov = match_msc(wap1(), testing::sends_trace(wap1(), reversed));
  CHECK_FALSE(cov.covered);
  CHECK(cov.resets >= 1);
  CHECK(cov.matched == std::set<std::string>{"e1"});
}

TEST_CASE("all 24 orderings of the WAP messages agree with the reset oracle") {
  std::vector<std::string> ids = {"e1", "e2", "e3", "e4"};
  int seen = 0;
  do {
    ++seen;
    MscCoverage cov = match_msc(wap1(), testing::sends_trace(wap1(), ids));
    testing::MscOracleResult want = testing::msc_oracle(wap1(), ids);
    INFO(ids[0] << ids[1] << ids[2] << ids[3]);
    CHECK(cov.instances == want.instances);
    CHECK(cov.resets == want.resets);
    CHECK(cov.matched == want.matched);
    CHECK(cov.covered == (ids == std::vector<std::string>{"e1", "e2", "e3", "e4"}));
    CHECK((cov.matched == std::set<std::string>{"e1"}) == (ids.back() == "e1"));
  } while (std::next_permutation(ids.begin(), ids.end()));
  CHECK(seen == 24);
}

TEST_CASE("a retry after a violation still covers the chart") {
  std::vector<std::string> ids = {"e1", "e3", "e1", "e2", "e3", "e4"};
  MscCoverage cov = match_msc(wap1(), testing::sends_trace(wap1(), ids));
  CHECK(cov.covered);
  CHECK(cov.resets == 1);
  CHECK(cov.instances == 1);
}

TEST_CASE("repeated runs count instances and keep the last match until a new one starts") {
  std::vector<std::string> twice = {"e1", "e2", "e3", "e4", "e1", "e2", "e3", "e4"};
  MscCoverage cov = match_msc(wap1(), testing::sends_trace(wap1(), twice));
  CHECK(cov.instances == 2);
  CHECK(cov.resets == 0);
  CHECK(cov.matched.size() == 4);
  std::vector<std::string> restart = {"e1", "e2", "e3", "e4", "e1"};
  CHECK(match_msc(wap1(), testing::sends_trace(wap1(), restart)).matched == std::set<std::string>{"e1"});
}

TEST_CASE("non-chart sends change nothing") {
  Trace plain = testing::sends_trace(wap1(), {"e1", "e2"});
  Trace noisy = make_trace({{EventKind::Send, {"X", "Y", "hello"}},
                            {EventKind::Send, {"WAE", "WSP", "S-Method.req"}},
                            {EventKind::Send, {"WSP", "WAE", "S-Method.req"}},
                            {EventKind::State, {"Idle"}},
                            {EventKind::Send, {"WSP", "WTP", "TR-Invoke.req"}}});
  CHECK(match_msc(wap1(), plain) == match_msc(wap1(), noisy));
}

TEST_CASE("equal timestamps on chart messages are ordered by position with a warning") {
  Trace trace = parse_trace("0 send WAE WSP S-Method.req\n0 send WSP WTP TR-Invoke.req\n"
                            "1 send WTP WSP TR-Result.ind\n2 send WSP WAE S-Reply.ind\n");
  MscCoverage cov = match_msc(wap1(), trace);
  CHECK(cov.covered);
  CHECK(cov.warnings.size() == 1);
}

TEST_CASE("every linear extension of a random chart is accepted") {
  std::mt19937_64 rng(31337);
  int charts = 0;
  std::size_t extensions = 0;
  for (int round = 0; round < 1000; ++round) {
    MscChart chart = testing::random_msc(rng, 1 + round % 6, 0.35);
    ++charts;
    for (const auto& order : testing::linear_extensions(chart)) {
      ++extensions;
      Trace trace = testing::sends_trace(chart, order);
      MscMatchLog log;
      MscCoverage cov = match_msc(chart, trace, &log);
      REQUIRE(cov.covered);
      REQUIRE(cov.resets == 0);
      REQUIRE(cov.instances == 1);
      REQUIRE(testing::is_linear_extension(chart, log.last_instance_ids));
    }
  }
  CHECK(charts == 1000);
  CHECK(extensions >= 1000);
}

TEST_CASE("the consumed subsequence respects follows on random traffic") {
  std::mt19937_64 rng(2718);
  for (int round = 0; round < 1000; ++round) {
    MscChart chart = testing::random_msc(rng, 2 + round % 5, 0.4);
    std::vector<std::string> ids;
    for (int k = 0; k < 25; ++k) {
      ids.push_back(chart.sends[std::uniform_int_distribution<std::size_t>(0, chart.sends.size() - 1)(rng)].id);
    }
    Trace trace = testing::sends_trace(chart, ids);
    MscMatchLog log;
    MscCoverage cov = match_msc(chart, trace, &log);
    testing::MscOracleResult want = testing::msc_oracle(chart, ids);
    REQUIRE(cov.instances == want.instances);
    REQUIRE(cov.resets == want.resets);
    REQUIRE(cov.matched == want.matched);
    REQUIRE(downward_closed(chart, cov.matched));
    if (cov.covered) {
      REQUIRE(testing::is_linear_extension(chart, log.last_instance_ids));
      for (std::size_t k = 1; k < log.last_instance.size(); ++k) {
        REQUIRE(log.last_instance[k - 1] < log.last_instance[k]);
      }
    }
  }
}

TEST_CASE("charts sharing a trace are matched independently") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 200; ++round) {
    Trace trace = testing::random_phone_trace(rng, 40, "t");
    Trace only_sends;
    for (const auto& ev : trace.events) {
      if (ev.kind == EventKind::Send) only_sends.events.push_back(ev);
    }
    CHECK(match_msc(wap1(), trace) == match_msc(wap1(), only_sends));
    CHECK(match_msc(wap2(), trace) == match_msc(wap2(), only_sends));
  }
}
