#include <catch_amalgamated.hpp>

#include <random>

#include "dcov/activity_coverage.hpp"
#include "dcov/design.hpp"
#include "oracles.hpp"

using namespace dcov;
using testing::make_trace;

namespace {

const ActivityDiagram& phone_book() {
  static const DesignModel model = read_design_file(testing::fixture("phone.dcov"));
  return *model.find_activity("PhoneBook");
}

} // namespace

TEST_CASE("edit path covers Edit and leaves search and exit") {
  ActivityCoverage cov = match_activity(phone_book(), read_trace_file(testing::fixture("phonebook_edit.trace")));
  CHECK(cov.covered_transitions == std::set<std::string>{"t0", "Edit"});
  CHECK(cov.covered_branches == std::set<std::string>{"Start", "Action?", "End"});
  CHECK_FALSE(cov.covered_transitions.count("Search"));
  CHECK_FALSE(cov.covered_transitions.count("Exit"));
  CHECK(cov.incomplete.empty());
  CHECK(cov.transitions == std::set<std::string>{"t0", "Search", "Edit", "Exit"});
  CHECK(cov.branches == std::set<std::string>{"Start", "Action?", "End"});
}

TEST_CASE("empty trace covers nothing") {
  ActivityCoverage cov = match_activity(phone_book(), Trace{});
  CHECK(cov.covered_branches.empty());
  CHECK(cov.covered_transitions.empty());
  CHECK(cov.incomplete.empty());
}

TEST_CASE("a transition alone is an incomplete sequence") {
  ActivityCoverage cov = match_activity(phone_book(), make_trace({{EventKind::Transition, {"Edit"}}}));
  CHECK(cov.covered_transitions.empty());
  REQUIRE(cov.incomplete.size() == 1);
  CHECK(cov.incomplete[0] == IncompleteSequence{"Edit", "missing entry branch"});
}

TEST_CASE("start may be implicit for the entry transition") {
  ActivityCoverage cov = match_activity(phone_book(), make_trace({{EventKind::Transition, {"t0"}},
                                                                  {EventKind::Branch, {"Action?"}}}));
  CHECK(cov.covered_transitions == std::set<std::string>{"t0"});
  CHECK(cov.covered_branches == std::set<std::string>{"Start", "Action?"});
}

TEST_CASE("interrupted sequences are diagnosed") {
  SECTION("exit never seen") {
    ActivityCoverage cov = match_activity(phone_book(), make_trace({{EventKind::Branch, {"Action?"}},
                                                                    {EventKind::Transition, {"Search"}}}));
    CHECK(cov.covered_transitions.empty());
    REQUIRE(cov.incomplete.size() == 1);
    CHECK(cov.incomplete[0] == IncompleteSequence{"Search", "missing exit branch"});
  }
  SECTION("wrong exit") {
    ActivityCoverage cov = match_activity(phone_book(), make_trace({{EventKind::Branch, {"Action?"}},
                                                                    {EventKind::Transition, {"Search"}},
                                                                    {EventKind::Branch, {"Action?"}}}));
    REQUIRE(cov.incomplete.size() == 1);
    CHECK(cov.incomplete[0] == IncompleteSequence{"Search", "wrong exit branch Action?, expected End"});
  }
  SECTION("wrong entry") {
    ActivityCoverage cov = match_activity(phone_book(), make_trace({{EventKind::Branch, {"End"}},
                                                                    {EventKind::Transition, {"Search"}},
                                                                    {EventKind::Branch, {"End"}}}));
    CHECK(cov.covered_transitions.empty());
    REQUIRE(cov.incomplete.size() == 1);
    CHECK(cov.incomplete[0] == IncompleteSequence{"Search", "wrong entry branch End, expected Action?"});
  }
}

TEST_CASE("foreign events do not break sequences") {
  Trace trace = make_trace({{EventKind::Branch, {"Start"}},
                            {EventKind::Transition, {"t0"}},
                            {EventKind::State, {"Idle"}},
                            {EventKind::Branch, {"SomeoneElse?"}},
                            {EventKind::Branch, {"Action?"}},
                            {EventKind::Transition, {"u9"}},
                            {EventKind::Transition, {"Exit"}},
                            {EventKind::Send, {"A", "B", "m"}},
                            {EventKind::Branch, {"End"}}});
  ActivityCoverage cov = match_activity(phone_book(), trace);
  CHECK(cov.covered_transitions == std::set<std::string>{"t0", "Exit"});
  CHECK(cov.incomplete.empty());
}

TEST_CASE("coverage is sticky across a later interruption") {
  Trace trace = make_trace({{EventKind::Branch, {"Action?"}},
                            {EventKind::Transition, {"Edit"}},
                            {EventKind::Branch, {"End"}},
                            {EventKind::Branch, {"Action?"}},
                            {EventKind::Transition, {"Edit"}}});
  ActivityCoverage cov = match_activity(phone_book(), trace);
  CHECK(cov.covered_transitions.count("Edit"));
  CHECK(cov.incomplete.size() == 1);
}

TEST_CASE("matcher agrees with the triple oracle on random streams") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 1000; ++round) {
    ActivityDiagram ad = testing::random_activity(rng, "", 1 + round % 5);
    Trace trace;
    Timestamp ts = 0;
    for (auto ev : testing::random_activity_events(rng, ad, 20)) {
      ev.ts = ts++;
      trace.events.push_back(ev);
    }
    ActivityCoverage cov = match_activity(ad, trace);
    REQUIRE(cov.covered_transitions == testing::activity_oracle(ad, trace));
    for (const auto& id : cov.covered_transitions) {
      CHECK(cov.covered_branches.count(*ad.source_of(id)));
      CHECK(cov.covered_branches.count(ad.find_transition(id)->next));
    }
  }
}

TEST_CASE("interleaved diagrams match like their projections") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 500; ++round) {
    ActivityDiagram a = testing::random_activity(rng, "a", 3);
    ActivityDiagram b = testing::random_activity(rng, "b", 3);
    auto ea = testing::random_activity_events(rng, a, 15);
    auto eb = testing::random_activity_events(rng, b, 15);
    // Random merge of the two streams, keeping each one's own order.
    Trace mixed;
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
      bool take_a = j == eb.size() || (i < ea.size() && std::bernoulli_distribution(0.5)(rng));
      TraceEvent ev = take_a ? ea[i++] : eb[j++];
      ev.ts = mixed.events.size();
      mixed.events.push_back(ev);
    }
    // Start and End are shared, so only the prefixed names are compared.
    auto own = [](const ActivityCoverage& c) {
      std::set<std::string> out = c.covered_transitions;
      for (const auto& br : c.covered_branches) {
        if (br != "Start" && br != "End") out.insert(br);
      }
      return out;
    };
    Trace pa = testing::project_activity(a, mixed);
    ActivityCoverage on_mixed = match_activity(a, mixed);
    ActivityCoverage on_projection = match_activity(a, pa);
    REQUIRE(on_mixed == on_projection);
    CHECK(own(match_activity(b, mixed)) == own(match_activity(b, testing::project_activity(b, mixed))));
  }
}

TEST_CASE("coverage never shrinks under extension") {
  std::mt19937_64 rng(5);
  for (int round = 0; round < 300; ++round) {
    ActivityDiagram ad = testing::random_activity(rng, "", 4);
    Trace trace;
    for (auto ev : testing::random_activity_events(rng, ad, 30)) {
      ev.ts = trace.events.size();
      trace.events.push_back(ev);
    }
    std::size_t cut = std::uniform_int_distribution<std::size_t>(0, trace.events.size())(rng);
    Trace prefix{{trace.events.begin(), trace.events.begin() + static_cast<std::ptrdiff_t>(cut)}, ""};
    ActivityCoverage small = match_activity(ad, prefix);
    ActivityCoverage big = match_activity(ad, trace);
    CHECK(std::includes(big.covered_transitions.begin(), big.covered_transitions.end(),
                        small.covered_transitions.begin(), small.covered_transitions.end()));
    CHECK(std::includes(big.covered_branches.begin(), big.covered_branches.end(), small.covered_branches.begin(),
                        small.covered_branches.end()));
  }
}
