#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dcov/design.hpp"
#include "dcov/trace.hpp"

namespace dcov {

/// Where a statechart run diverged from the design.
struct Mismatch {
  std::size_t trace_pos = 0; // index into Trace::events
  std::string expected;      // state the design dictates
  std::string found;         // state (or event name) the trace reported
  EventKind found_kind = EventKind::State;

  friend bool operator==(const Mismatch&, const Mismatch&) = default;
};

using EventPair = std::pair<std::string, std::string>; // (state, event)

struct StatechartCoverage {
  std::string diagram;

  // Design universe, so coverage can be reported without the model.
  std::set<std::string> states;
  std::set<Transition> transitions;
  std::set<EventPair> event_pairs;

  std::set<std::string> covered_states;
  std::set<Transition> covered_transitions;
  std::set<EventPair> covered_events;

  /// At most one per matched trace; merged reports collect one per trace.
  std::vector<Mismatch> mismatches;
  /// Human-readable notes (unmatched events); moved into report diagnostics.
  std::vector<std::string> warnings;
  /// Trace events looked at before matching finished or stopped.
  std::size_t events_inspected = 0;

  friend bool operator==(const StatechartCoverage&, const StatechartCoverage&) = default;
};

struct StatechartOptions {
  /// Adopt the first observed state instead of requiring the initial state.
  bool allow_midrun = false;
};

/// Coverage with nothing covered.
StatechartCoverage empty_statechart_coverage(const Statechart& chart);

/// Walks the trace's state/event events through the chart. Matching stops at
/// the first state that disagrees with the design; coverage gathered up to
/// that point is kept.
StatechartCoverage match_statechart(const Statechart& chart, const Trace& trace, StatechartOptions options = {});

} // namespace dcov
