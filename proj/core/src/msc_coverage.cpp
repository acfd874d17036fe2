#include "dcov/msc_coverage.hpp"

#include <map>
#include <tuple>

namespace dcov {

MscCoverage empty_msc_coverage(const MscChart& chart) {
  MscCoverage cov;
  cov.chart = chart.name;
  for (const auto& s : chart.sends) {
    cov.tuples.insert(s.id);
  }
  return cov;
}

MscCoverage match_msc(const MscChart& chart, const Trace& trace, MscMatchLog* log) {
  MscCoverage cov = empty_msc_coverage(chart);
  const std::size_t n = chart.sends.size();
  if (n == 0) {
    return cov;
  }

  std::map<std::tuple<std::string, std::string, std::string>, std::size_t> by_triple;
  std::map<std::string, std::size_t> by_id;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = chart.sends[i];
    by_triple.emplace(std::make_tuple(s.sender, s.receiver, s.message), i);
    by_id.emplace(s.id, i);
  }
  std::vector<std::vector<std::size_t>> successors(n);
  std::vector<std::size_t> predecessor_count(n, 0);
  for (const auto& f : chart.follows) {
    auto a = by_id.find(f.first);
    auto b = by_id.find(f.next);
    if (a == by_id.end() || b == by_id.end()) {
      continue;
    }
    successors[a->second].push_back(b->second);
    ++predecessor_count[b->second];
  }

  // missing[i] = unmatched predecessors of tuple i; a tuple is enabled when
  // it is unmatched and missing[i] == 0.
  std::vector<std::size_t> missing;
  std::vector<char> matched;
  std::size_t matched_count = 0;
  bool complete = false;
  std::vector<std::size_t> consumed;

  auto restart = [&] {
    missing = predecessor_count;
    matched.assign(n, 0);
    matched_count = 0;
    complete = false;
    consumed.clear();
  };
  auto enabled = [&](std::size_t i) { return !matched[i] && missing[i] == 0; };
  auto take = [&](std::size_t i, std::size_t pos) {
    matched[i] = 1;
    ++matched_count;
    consumed.push_back(pos);
    for (std::size_t next : successors[i]) {
      --missing[next];
    }
  };
  restart();

  bool have_last = false;
  Timestamp last_ts = 0;
  std::size_t tied = 0;

  for (std::size_t pos = 0; pos < trace.events.size(); ++pos) {
    const auto& ev = trace.events[pos];
    if (ev.kind != EventKind::Send) {
      continue;
    }
    auto it = by_triple.find(std::make_tuple(ev.args[0], ev.args[1], ev.args[2]));
    if (it == by_triple.end()) {
      continue;
    }
    std::size_t i = it->second;
    if (have_last && ev.ts == last_ts) {
      ++tied;
    }
    have_last = true;
    last_ts = ev.ts;

    if (complete) {
      restart();
    }
    if (!enabled(i)) {
      ++cov.resets;
      restart();
      if (!enabled(i)) {
        continue;
      }
    }
    take(i, pos);
    if (matched_count == n) {
      ++cov.instances;
      complete = true;
      if (log) {
        log->last_instance = consumed;
        log->last_instance_ids.clear();
        for (std::size_t p : consumed) {
          const auto& e = trace.events[p];
          log->last_instance_ids.push_back(
              chart.sends[by_triple.at(std::make_tuple(e.args[0], e.args[1], e.args[2]))].id);
        }
      }
    }
  }

  cov.covered = cov.instances > 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (matched[i]) {
      cov.matched.insert(chart.sends[i].id);
    }
  }
  if (tied != 0) {
    cov.warnings.push_back(std::to_string(tied) +
                           " chart message(s) share a timestamp with the previous one; ordered by file position");
  }
  return cov;
}

} // namespace dcov
