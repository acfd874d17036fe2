#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dcov/activity_coverage.hpp"
#include "dcov/design.hpp"
#include "dcov/msc_coverage.hpp"
#include "dcov/statechart_coverage.hpp"
#include "dcov/structure_coverage.hpp"
#include "dcov/trace.hpp"

namespace dcov {

using DiagramCoverage = std::variant<StatechartCoverage, ActivityCoverage, MscCoverage, StructureCoverage>;

DiagramKind kind_of(const DiagramCoverage& coverage) noexcept;

/// Coverage of one design model by one trace or a merged set of traces.
/// Matcher warnings live in `diagnostics`; the per-diagram `warnings` fields
/// are always empty inside a report.
struct CoverageReport {
  std::string digest; // design_digest of the analyzed model
  std::vector<std::string> sources;
  std::map<std::string, DiagramCoverage> diagrams;
  std::vector<std::string> diagnostics;

  /// False when any statechart mismatched, any MSC saw an order violation,
  /// or any object replay hit a type/multiplicity violation.
  bool clean() const;

  friend bool operator==(const CoverageReport&, const CoverageReport&) = default;
};

struct AnalysisOptions {
  /// Restrict matching to a single diagram.
  std::optional<std::string> diagram;
  StatechartOptions statechart;
  StructureOptions structure;
};

/// Report over the model with nothing covered; the identity for merge.
CoverageReport empty_report(const DesignModel& model, const AnalysisOptions& options = {});

/// Runs every matcher over one trace. Throws ReportError if options.diagram
/// names no diagram of the model.
CoverageReport analyze(const DesignModel& model, const Trace& trace, const AnalysisOptions& options = {});

/// Union of covered sets, sums of counters, concatenation of sources and
/// diagnostics. Throws ReportError if the reports come from different models.
CoverageReport merge(const CoverageReport& a, const CoverageReport& b);

/// Exact ratio; den == 0 means there is nothing to cover.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 0;

  std::string fraction() const;
  /// Rounded half-up to three decimals.
  std::string decimal() const;
  bool operator<=(const Ratio& other) const; // by value

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct Metric {
  std::string name;
  Ratio value;
};

struct DiagramMetrics {
  std::string diagram;
  DiagramKind kind = DiagramKind::Statechart;
  std::vector<Metric> metrics;
};

struct ReportMetrics {
  std::vector<DiagramMetrics> diagrams; // sorted by diagram name
  Ratio charts;                         // covered MSCs / all MSCs
};

ReportMetrics metrics(const CoverageReport& report);

struct TableRow {
  std::string kind;
  std::string diagram;
  std::string element;
  bool covered = false;

  friend bool operator==(const TableRow&, const TableRow&) = default;
  friend auto operator<=>(const TableRow&, const TableRow&) = default;
};

/// One row per design element, sorted by (kind, diagram, element).
std::vector<TableRow> table_rows(const CoverageReport& report);

/// `kind<TAB>diagram<TAB>element<TAB>covered` with a header line.
std::string render_table(const CoverageReport& report);

/// Report file: `#` metadata lines (digest, sources, counters, diagnostics)
/// followed by render_table. parse_report inverts it exactly.
std::string serialize_report(const CoverageReport& report);
CoverageReport parse_report(std::string_view text);
CoverageReport read_report_file(const std::string& path);

struct TextStyle {
  bool color = false;
};

/// Human summary: per diagram, metrics then uncovered elements then covered
/// ones, followed by diagnostics.
std::string render_text(const CoverageReport& report, TextStyle style = {});

/// Graphviz rendering of a statechart, activity or class diagram with covered
/// elements filled/bold. Throws ReportError for MSCs or unknown diagrams.
std::string render_dot(const DesignModel& model, const CoverageReport& report, std::string_view diagram);

} // namespace dcov
