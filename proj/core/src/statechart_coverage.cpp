#include "dcov/statechart_coverage.hpp"

#include <map>
#include <unordered_map>

namespace dcov {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Dense (state, event) -> transition table over interned names.
class ChartIndex {
public:
  explicit ChartIndex(const Statechart& chart) {
    for (const auto& s : chart.states()) {
      state_ids_.emplace(s, state_ids_.size());
    }
    for (const auto& e : chart.events()) {
      event_ids_.emplace(e, event_ids_.size());
    }
    table_.assign(state_ids_.size() * event_ids_.size(), kNone);
    for (std::size_t i = 0; i < chart.transitions.size(); ++i) {
      const auto& t = chart.transitions[i];
      std::size_t& slot = table_[state_ids_.at(t.from) * event_ids_.size() + event_ids_.at(t.event)];
      if (slot == kNone) {
        slot = i;
      }
    }
  }

  std::size_t state(const std::string& name) const {
    auto it = state_ids_.find(name);
    return it == state_ids_.end() ? kNone : it->second;
  }

  std::size_t lookup(std::size_t state, const std::string& event) const {
    auto it = event_ids_.find(event);
    if (state == kNone || it == event_ids_.end()) {
      return kNone;
    }
    return table_[state * event_ids_.size() + it->second];
  }

  std::size_t state_count() const { return state_ids_.size(); }

private:
  std::unordered_map<std::string, std::size_t> state_ids_;
  std::unordered_map<std::string, std::size_t> event_ids_;
  std::vector<std::size_t> table_;
};

} // namespace

StatechartCoverage empty_statechart_coverage(const Statechart& chart) {
  StatechartCoverage cov;
  cov.diagram = chart.name;
  for (const auto& s : chart.states()) {
    cov.states.insert(s);
  }
  for (const auto& t : chart.transitions) {
    cov.transitions.insert(Transition{t.from, t.to, t.event});
    cov.event_pairs.emplace(t.from, t.event);
  }
  return cov;
}

StatechartCoverage match_statechart(const Statechart& chart, const Trace& trace, StatechartOptions options) {
  StatechartCoverage cov = empty_statechart_coverage(chart);
  ChartIndex index(chart);

  const auto states = chart.states();
  std::vector<char> state_hit(index.state_count(), 0);
  std::vector<char> transition_hit(chart.transitions.size(), 0);
  std::map<EventPair, std::size_t> unmatched;

  bool started = false;
  std::size_t current = kNone;
  std::size_t pending = kNone; // target of the last matched transition
  const std::size_t initial = index.state(chart.initial);

  auto stop = [&](std::size_t pos, std::size_t expected, const TraceEvent& ev) {
    cov.mismatches.push_back(Mismatch{pos, states[expected], ev.args[0], ev.kind});
  };

  std::size_t pos = 0;
  for (; pos < trace.events.size(); ++pos) {
    const TraceEvent& ev = trace.events[pos];
    ++cov.events_inspected;
    if (ev.kind != EventKind::State && ev.kind != EventKind::Event) {
      continue;
    }
    const std::string& name = ev.args[0];

    if (!started) {
      if (ev.kind != EventKind::State) {
        stop(pos, initial, ev);
        break;
      }
      std::size_t s = index.state(name);
      if (options.allow_midrun ? s == kNone : s != initial) {
        stop(pos, initial, ev);
        break;
      }
      started = true;
      current = s;
      state_hit[s] = 1;
      continue;
    }

    if (ev.kind == EventKind::State) {
      std::size_t expected = pending != kNone ? pending : current;
      if (index.state(name) != expected) {
        stop(pos, expected, ev);
        break;
      }
      current = expected;
      pending = kNone;
      state_hit[current] = 1;
      continue;
    }

    // Consecutive events: the design-determined successor becomes current.
    if (pending != kNone) {
      current = pending;
      pending = kNone;
    }
    std::size_t t = index.lookup(current, name);
    if (t == kNone) {
      ++unmatched[EventPair{states[current], name}];
      continue;
    }
    transition_hit[t] = 1;
    state_hit[current] = 1;
    pending = index.state(chart.transitions[t].to);
    state_hit[pending] = 1;
  }

  for (std::size_t i = 0; i < states.size(); ++i) {
    if (state_hit[i]) {
      cov.covered_states.insert(states[i]);
    }
  }
  for (std::size_t i = 0; i < chart.transitions.size(); ++i) {
    if (transition_hit[i]) {
      const auto& t = chart.transitions[i];
      cov.covered_transitions.insert(Transition{t.from, t.to, t.event});
      cov.covered_events.emplace(t.from, t.event);
    }
  }
  for (const auto& [pair, count] : unmatched) {
    cov.warnings.push_back("event '" + pair.second + "' has no transition from state '" + pair.first + "' (" +
                           std::to_string(count) + "x, skipped)");
  }
  return cov;
}

} // namespace dcov
