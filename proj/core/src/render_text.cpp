#include <algorithm>
#include <sstream>

#include "dcov/report.hpp"

namespace dcov {

namespace {

constexpr const char* kBold = "\x1b[1m";
constexpr const char* kRed = "\x1b[31m";
constexpr const char* kGreen = "\x1b[32m";
constexpr const char* kReset = "\x1b[0m";

} // namespace

std::string render_text(const CoverageReport& report, TextStyle style) {
  auto paint = [&](const char* code, const std::string& text) {
    return style.color ? std::string(code) + text + kReset : text;
  };

  std::ostringstream out;
  out << paint(kBold, "design coverage") << '\n';
  out << "digest: " << report.digest << '\n';
  out << "traces: " << report.sources.size() << '\n';
  for (const auto& s : report.sources) {
    out << "  " << (s.empty() ? std::string("<unnamed>") : s) << '\n';
  }
  out << "status: " << (report.clean() ? "clean" : "mismatch or violation present") << '\n';

  auto rows = table_rows(report);
  auto summary = metrics(report);
  std::stable_sort(summary.diagrams.begin(), summary.diagrams.end(),
                   [](const DiagramMetrics& a, const DiagramMetrics& b) { return a.kind < b.kind; });

  for (const auto& dm : summary.diagrams) {
    out << '\n' << paint(kBold, std::string(to_string(dm.kind)) + " " + dm.diagram) << '\n';
    for (const auto& m : dm.metrics) {
      out << "  " << m.name << ' ' << m.value.fraction() << ' ' << m.value.decimal() << '\n';
    }
    for (bool covered : {false, true}) {
      bool any = false;
      for (const auto& row : rows) {
        if (row.diagram != dm.diagram || row.covered != covered) {
          continue;
        }
        if (!any) {
          out << (covered ? "  covered:\n" : "  uncovered:\n");
          any = true;
        }
        out << "    " << paint(covered ? kGreen : kRed, row.kind + " " + row.element) << '\n';
      }
    }
  }

  if (summary.charts.den != 0) {
    out << "\nmsc charts covered: " << summary.charts.fraction() << ' ' << summary.charts.decimal() << '\n';
  }
  if (!report.diagnostics.empty()) {
    out << "\ndiagnostics:\n";
    for (const auto& d : report.diagnostics) {
      out << "  " << d << '\n';
    }
  }
  return out.str();
}

} // namespace dcov
