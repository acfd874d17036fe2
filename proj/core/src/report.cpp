#include "dcov/report.hpp"

#include <algorithm>

#include "dcov/error.hpp"
#include "dcov/token.hpp"

namespace dcov {

namespace {

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <typename Set>
void unite(Set& into, const Set& from) {
  into.insert(from.begin(), from.end());
}

template <typename Vec>
void append(Vec& into, const Vec& from) {
  into.insert(into.end(), from.begin(), from.end());
}

std::string prefix(const std::string& source, const std::string& diagram) {
  std::string out;
  if (!source.empty()) {
    out += source + ": ";
  }
  return out + diagram + ": ";
}

bool selected(const AnalysisOptions& options, const std::string& name) {
  return !options.diagram || *options.diagram == name;
}

void check_selection(const DesignModel& model, const AnalysisOptions& options) {
  if (options.diagram && !model.kind_of(*options.diagram)) {
    throw ReportError("unknown diagram '" + *options.diagram + "'");
  }
}

DiagramCoverage merge_coverage(const DiagramCoverage& a, const DiagramCoverage& b) {
  return std::visit(
      [&](const auto& lhs) -> DiagramCoverage {
        using T = std::decay_t<decltype(lhs)>;
        const T& rhs = std::get<T>(b);
        T out = lhs;
        if constexpr (std::is_same_v<T, StatechartCoverage>) {
          unite(out.states, rhs.states);
          unite(out.transitions, rhs.transitions);
          unite(out.event_pairs, rhs.event_pairs);
          unite(out.covered_states, rhs.covered_states);
          unite(out.covered_transitions, rhs.covered_transitions);
          unite(out.covered_events, rhs.covered_events);
          append(out.mismatches, rhs.mismatches);
          append(out.warnings, rhs.warnings);
          out.events_inspected += rhs.events_inspected;
        } else if constexpr (std::is_same_v<T, ActivityCoverage>) {
          unite(out.branches, rhs.branches);
          unite(out.transitions, rhs.transitions);
          unite(out.covered_branches, rhs.covered_branches);
          unite(out.covered_transitions, rhs.covered_transitions);
          append(out.incomplete, rhs.incomplete);
        } else if constexpr (std::is_same_v<T, MscCoverage>) {
          unite(out.tuples, rhs.tuples);
          out.instances += rhs.instances;
          out.resets += rhs.resets;
          out.covered = out.instances > 0;
          unite(out.matched, rhs.matched);
          append(out.warnings, rhs.warnings);
        } else {
          unite(out.feasible, rhs.feasible);
          unite(out.covered, rhs.covered);
          unite(out.patterns, rhs.patterns);
          unite(out.covered_patterns, rhs.covered_patterns);
          append(out.violations, rhs.violations);
          append(out.warnings, rhs.warnings);
        }
        return out;
      },
      a);
}

Ratio ratio(std::size_t num, std::size_t den) { return Ratio{num, den}; }

template <typename Set>
std::size_t count_in(const Set& covered, const Set& universe) {
  std::size_t n = 0;
  for (const auto& e : covered) {
    n += universe.count(e);
  }
  return n;
}

} // namespace

DiagramKind kind_of(const DiagramCoverage& coverage) noexcept {
  return std::visit(Overloaded{
                        [](const StatechartCoverage&) { return DiagramKind::Statechart; },
                        [](const ActivityCoverage&) { return DiagramKind::Activity; },
                        [](const MscCoverage&) { return DiagramKind::Msc; },
                        [](const StructureCoverage&) { return DiagramKind::ClassDiagram; },
                    },
                    coverage);
}

bool CoverageReport::clean() const {
  for (const auto& [name, cov] : diagrams) {
    bool dirty = std::visit(Overloaded{
                                [](const StatechartCoverage& c) { return !c.mismatches.empty(); },
                                [](const ActivityCoverage&) { return false; },
                                [](const MscCoverage& c) { return c.resets != 0; },
                                [](const StructureCoverage& c) { return !c.violations.empty(); },
                            },
                            cov);
    if (dirty) {
      return false;
    }
  }
  return true;
}

CoverageReport empty_report(const DesignModel& model, const AnalysisOptions& options) {
  check_selection(model, options);
  CoverageReport report;
  report.digest = design_digest(model);
  for (const auto& d : model.statecharts) {
    if (selected(options, d.name)) report.diagrams.emplace(d.name, empty_statechart_coverage(d));
  }
  for (const auto& d : model.activities) {
    if (selected(options, d.name)) report.diagrams.emplace(d.name, empty_activity_coverage(d));
  }
  for (const auto& d : model.mscs) {
    if (selected(options, d.name)) report.diagrams.emplace(d.name, empty_msc_coverage(d));
  }
  for (const auto& d : model.classdiagrams) {
    if (selected(options, d.name)) report.diagrams.emplace(d.name, empty_structure_coverage(d));
  }
  return report;
}

CoverageReport analyze(const DesignModel& model, const Trace& trace, const AnalysisOptions& options) {
  check_selection(model, options);
  CoverageReport report;
  report.digest = design_digest(model);
  report.sources.push_back(trace.source);
  auto& diags = report.diagnostics;

  for (const auto& d : model.statecharts) {
    if (!selected(options, d.name)) continue;
    auto cov = match_statechart(d, trace, options.statechart);
    std::string pre = prefix(trace.source, d.name);
    for (const auto& m : cov.mismatches) {
      diags.push_back(pre + "mismatch at trace event " + std::to_string(m.trace_pos) + ": expected state " +
                      m.expected + ", found " + std::string(to_string(m.found_kind)) + " " + m.found);
    }
    for (auto& w : cov.warnings) {
      diags.push_back(pre + "warning: " + w);
    }
    cov.warnings.clear();
    report.diagrams.emplace(d.name, std::move(cov));
  }
  for (const auto& d : model.activities) {
    if (!selected(options, d.name)) continue;
    auto cov = match_activity(d, trace);
    std::string pre = prefix(trace.source, d.name);
    for (const auto& s : cov.incomplete) {
      diags.push_back(pre + "incomplete sequence " + s.transition + ": " + s.reason);
    }
    report.diagrams.emplace(d.name, std::move(cov));
  }
  for (const auto& d : model.mscs) {
    if (!selected(options, d.name)) continue;
    auto cov = match_msc(d, trace);
    std::string pre = prefix(trace.source, d.name);
    if (cov.resets != 0) {
      diags.push_back(pre + std::to_string(cov.resets) + " order violation(s) restarted the match");
    }
    for (auto& w : cov.warnings) {
      diags.push_back(pre + "warning: " + w);
    }
    cov.warnings.clear();
    report.diagrams.emplace(d.name, std::move(cov));
  }
  for (const auto& d : model.classdiagrams) {
    if (!selected(options, d.name)) continue;
    auto cov = replay_objects(d, trace, options.structure).coverage;
    std::string pre = prefix(trace.source, d.name);
    for (const auto& v : cov.violations) {
      diags.push_back(pre + "violation: " + v);
    }
    for (auto& w : cov.warnings) {
      diags.push_back(pre + "warning: " + w);
    }
    cov.warnings.clear();
    report.diagrams.emplace(d.name, std::move(cov));
  }
  return report;
}

CoverageReport merge(const CoverageReport& a, const CoverageReport& b) {
  if (a.digest != b.digest) {
    throw ReportError("cannot merge reports of different design models (" + a.digest + " vs " + b.digest + ")");
  }
  CoverageReport out = a;
  append(out.sources, b.sources);
  append(out.diagnostics, b.diagnostics);
  for (const auto& [name, cov] : b.diagrams) {
    auto it = out.diagrams.find(name);
    if (it == out.diagrams.end()) {
      out.diagrams.emplace(name, cov);
      continue;
    }
    if (kind_of(it->second) != kind_of(cov)) {
      throw ReportError("diagram '" + name + "' has different kinds in the merged reports");
    }
    it->second = merge_coverage(it->second, cov);
  }
  return out;
}

std::string Ratio::fraction() const { return std::to_string(num) + "/" + std::to_string(den); }

std::string Ratio::decimal() const {
  if (den == 0) {
    return "n/a";
  }
  std::uint64_t thousandths = (num * 2000 + den) / (2 * den);
  std::string frac = std::to_string(thousandths % 1000);
  frac.insert(0, 3 - frac.size(), '0');
  return std::to_string(thousandths / 1000) + "." + frac;
}

bool Ratio::operator<=(const Ratio& other) const {
  // a/b <= c/d  <=>  a*d <= c*b (denominators are non-negative)
  return num * other.den <= other.num * den;
}

ReportMetrics metrics(const CoverageReport& report) {
  ReportMetrics out;
  for (const auto& [name, cov] : report.diagrams) {
    DiagramMetrics dm{name, kind_of(cov), {}};
    std::visit(Overloaded{
                   [&](const StatechartCoverage& c) {
                     dm.metrics.push_back({"stateRatio", ratio(count_in(c.covered_states, c.states), c.states.size())});
                     dm.metrics.push_back({"transitionRatio", ratio(count_in(c.covered_transitions, c.transitions),
                                                                    c.transitions.size())});
                     dm.metrics.push_back({"eventPairRatio", ratio(count_in(c.covered_events, c.event_pairs),
                                                                   c.event_pairs.size())});
                   },
                   [&](const ActivityCoverage& c) {
                     dm.metrics.push_back(
                         {"branchRatio", ratio(count_in(c.covered_branches, c.branches), c.branches.size())});
                     dm.metrics.push_back({"transitionRatio", ratio(count_in(c.covered_transitions, c.transitions),
                                                                    c.transitions.size())});
                   },
                   [&](const MscCoverage& c) {
                     dm.metrics.push_back({"chartCovered", ratio(c.covered ? 1 : 0, 1)});
                     ++out.charts.den;
                     out.charts.num += c.covered ? 1 : 0;
                   },
                   [&](const StructureCoverage& c) {
                     dm.metrics.push_back({"configRatio", ratio(count_in(c.covered, c.feasible), c.feasible.size())});
                     if (!c.patterns.empty()) {
                       dm.metrics.push_back({"patternRatio", ratio(count_in(c.covered_patterns, c.patterns),
                                                                   c.patterns.size())});
                     }
                   },
               },
               cov);
    out.diagrams.push_back(std::move(dm));
  }
  return out;
}

std::vector<TableRow> table_rows(const CoverageReport& report) {
  std::vector<TableRow> rows;
  for (const auto& [name, cov] : report.diagrams) {
    auto add = [&, diagram = name](const char* kind, std::string element, bool covered) {
      rows.push_back(TableRow{kind, diagram, std::move(element), covered});
    };
    std::visit(Overloaded{
                   [&](const StatechartCoverage& c) {
                     for (const auto& s : c.states) {
                       add("state", s, c.covered_states.count(s) != 0);
                     }
                     for (const auto& t : c.transitions) {
                       add("transition", token::join({t.from, t.to, t.event}), c.covered_transitions.count(t) != 0);
                     }
                     for (const auto& p : c.event_pairs) {
                       add("event", token::join({p.first, p.second}), c.covered_events.count(p) != 0);
                     }
                   },
                   [&](const ActivityCoverage& c) {
                     for (const auto& b : c.branches) {
                       add("branch", b, c.covered_branches.count(b) != 0);
                     }
                     for (const auto& t : c.transitions) {
                       add("branch-transition", t, c.covered_transitions.count(t) != 0);
                     }
                   },
                   [&](const MscCoverage& c) {
                     add("msc", "chart", c.covered);
                     for (const auto& t : c.tuples) {
                       add("msc-tuple", t, c.matched.count(t) != 0);
                     }
                   },
                   [&](const StructureCoverage& c) {
                     for (const auto& v : c.feasible) {
                       add("config", render_config(v), c.covered.count(v) != 0);
                     }
                     for (const auto& p : c.patterns) {
                       add("pattern", p, c.covered_patterns.count(p) != 0);
                     }
                   },
               },
               cov);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

std::string render_table(const CoverageReport& report) {
  std::string out = "kind\tdiagram\telement\tcovered\n";
  for (const auto& row : table_rows(report)) {
    out += row.kind + '\t' + row.diagram + '\t' + row.element + '\t' + (row.covered ? "1" : "0") + '\n';
  }
  return out;
}

} // namespace dcov
