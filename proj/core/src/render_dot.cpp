#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "dcov/error.hpp"
#include "dcov/report.hpp"

namespace dcov {

namespace {

constexpr std::string_view kCoveredNode = "style=filled, fillcolor=gray";
constexpr std::string_view kCoveredEdge = "style=bold, fontname=\"Helvetica-Bold\"";

bool is_keyword(std::string_view id) {
  static const std::set<std::string> kKeywords = {"node", "edge", "graph", "digraph", "subgraph", "strict"};
  std::string lower(id);
  for (auto& c : lower) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return kKeywords.count(lower) != 0;
}

std::string quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string id(std::string_view text) {
  bool plain = !text.empty() && !std::isdigit(static_cast<unsigned char>(text[0])) && !is_keyword(text);
  for (char c : text) {
    plain = plain && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  }
  return plain ? std::string(text) : quoted(text);
}

std::string html(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
    case '&':
      out += "&amp;";
      break;
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out.push_back(c);
    }
  }
  return out;
}

std::string attrs(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) {
    if (p.empty()) {
      continue;
    }
    out += out.empty() ? " [" : ", ";
    out += p;
  }
  return out.empty() ? out : out + "]";
}

std::string edge_label(std::string_view text) { return "label=" + quoted(text); }

void render_statechart(std::ostream& out, const Statechart& sc, const StatechartCoverage& cov) {
  auto states = sc.states();
  std::string start = "__initial";
  while (std::find(states.begin(), states.end(), start) != states.end()) {
    start.push_back('_');
  }
  out << "digraph " << id(sc.name) << " {\n";
  out << "  rankdir=LR;\n";
  out << "  " << id(start) << " [shape=point];\n";
  for (const auto& s : states) {
    out << "  " << id(s) << attrs({cov.covered_states.count(s) ? kCoveredNode : ""}) << ";\n";
  }
  out << "  " << id(start) << " -> " << id(sc.initial) << ";\n";
  for (const auto& t : sc.transitions) {
    bool covered = cov.covered_transitions.count(t) != 0;
    out << "  " << id(t.from) << " -> " << id(t.to)
        << attrs({edge_label(t.event), covered ? kCoveredEdge : ""}) << ";\n";
  }
  out << "}\n";
}

void render_activity(std::ostream& out, const ActivityDiagram& ad, const ActivityCoverage& cov) {
  out << "digraph " << id(ad.name) << " {\n";
  for (const auto& b : ad.branches()) {
    std::string_view shape = "shape=diamond";
    std::string_view label;
    if (b == kStartBranch) {
      shape = "shape=circle, width=0.3";
      label = "label=\"\"";
    } else if (b == kEndBranch) {
      shape = "shape=doublecircle, width=0.2";
      label = "label=\"\"";
    }
    out << "  " << id(b) << attrs({shape, label, cov.covered_branches.count(b) ? kCoveredNode : ""}) << ";\n";
  }
  auto edge = [&](const std::string& from, const BranchTransition& t) {
    bool covered = cov.covered_transitions.count(t.id) != 0;
    out << "  " << id(from) << " -> " << id(t.next) << attrs({edge_label(t.id), covered ? kCoveredEdge : ""})
        << ";\n";
  };
  edge(std::string(kStartBranch), ad.entry);
  for (const auto& d : ad.decisions) {
    for (const auto& t : d.outgoing) {
      edge(d.branch, t);
    }
  }
  out << "}\n";
}

void render_classdiagram(std::ostream& out, const ClassDiagram& cd, const StructureCoverage& cov) {
  out << "digraph " << id(cd.name) << " {\n";
  out << "  node [shape=box];\n";
  for (const auto& c : cd.classes) {
    out << "  " << id(c) << ";\n";
  }
  for (const auto& g : cd.isa) {
    out << "  " << id(g.sub) << " -> " << id(g.super) << " [arrowhead=empty];\n";
  }
  for (const auto& a : cd.assocs) {
    out << "  " << id(a.src) << " -> " << id(a.dst)
        << attrs({edge_label(a.name + " " + std::string(to_string(a.mult)))}) << ";\n";
  }
  for (const auto& c : cd.classes) {
    std::string rows;
    for (const auto& v : cov.feasible) {
      if (v.cls != c) {
        continue;
      }
      std::string cell;
      for (const auto& [assoc, bucket] : v.counts) {
        cell += (cell.empty() ? "" : " ") + assoc + "=" + std::string(to_string(bucket));
      }
      bool covered = cov.covered.count(v) != 0;
      rows += "<tr><td" + std::string(covered ? " bgcolor=\"gray\"" : "") + ">" + html(cell) + "</td></tr>";
    }
    if (rows.empty()) {
      continue;
    }
    std::string node = "configs:" + c;
    out << "  " << id(node) << " [shape=plaintext, label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">"
        << "<tr><td><b>" << html(c) << "</b></td></tr>" << rows << "</table>>];\n";
    out << "  " << id(c) << " -> " << id(node) << " [style=dotted, arrowhead=none];\n";
  }
  for (const auto& p : cd.patterns) {
    std::string node = "pattern:" + p.name;
    out << "  " << id(node) << " [shape=note, " << edge_label(p.name)
        << (cov.covered_patterns.count(p.name) ? ", " + std::string(kCoveredNode) : std::string()) << "];\n";
  }
  out << "}\n";
}

template <typename T>
const T& coverage_for(const CoverageReport& report, std::string_view diagram) {
  auto it = report.diagrams.find(std::string(diagram));
  if (it == report.diagrams.end()) {
    throw ReportError("diagram '" + std::string(diagram) + "' is not in the report");
  }
  const T* cov = std::get_if<T>(&it->second);
  if (!cov) {
    throw ReportError("diagram '" + std::string(diagram) + "' has a different kind in the report");
  }
  return *cov;
}

} // namespace

std::string render_dot(const DesignModel& model, const CoverageReport& report, std::string_view diagram) {
  std::ostringstream out;
  if (const auto* sc = model.find_statechart(diagram)) {
    render_statechart(out, *sc, coverage_for<StatechartCoverage>(report, diagram));
  } else if (const auto* ad = model.find_activity(diagram)) {
    render_activity(out, *ad, coverage_for<ActivityCoverage>(report, diagram));
  } else if (const auto* cd = model.find_classdiagram(diagram)) {
    render_classdiagram(out, *cd, coverage_for<StructureCoverage>(report, diagram));
  } else if (model.find_msc(diagram)) {
    throw ReportError("DOT rendering is not supported for msc '" + std::string(diagram) +
                      "'; supported kinds: statechart, activity, classdiagram");
  } else {
    throw ReportError("unknown diagram '" + std::string(diagram) + "'");
  }
  return out.str();
}

} // namespace dcov
