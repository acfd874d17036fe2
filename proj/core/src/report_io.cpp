#include <charconv>
#include <fstream>
#include <sstream>

#include "dcov/error.hpp"
#include "dcov/report.hpp"
#include "dcov/token.hpp"

namespace dcov {

namespace {

constexpr std::string_view kMagic = "designcov-report";
constexpr std::string_view kVersion = "1";
constexpr std::string_view kHeader = "kind\tdiagram\telement\tcovered";

std::string meta(std::initializer_list<std::string> tokens) {
  std::string out = "#";
  for (const auto& t : tokens) {
    out.push_back(' ');
    out += token::quote(t);
  }
  out.push_back('\n');
  return out;
}

std::size_t to_count(const std::string& text, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(line, "expected a count, found '" + text + "'");
  }
  return value;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    out.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) {
      break;
    }
    start = tab + 1;
  }
  return out;
}

class ReportReader {
public:
  CoverageReport read(std::string_view text) {
    std::size_t start = 0;
    while (start < text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      std::string_view line = text.substr(start, end - start);
      start = end + 1;
      ++line_;
      if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
      }
      if (line.empty()) {
        continue;
      }
      if (line.front() == '#') {
        if (seen_header_) {
          fail("metadata after the table header");
        }
        meta_line(line);
      } else if (!seen_header_) {
        if (line != kHeader) {
          fail("expected table header");
        }
        if (!seen_magic_) {
          fail("missing report marker");
        }
        seen_header_ = true;
      } else {
        row(line);
      }
    }
    if (!seen_header_) {
      fail("missing table header");
    }
    for (const auto& [name, cov] : report_.diagrams) {
      if (const auto* msc = std::get_if<MscCoverage>(&cov); msc && msc->covered != (msc->instances > 0)) {
        throw ParseError(0, "diagram " + name + ": covered flag disagrees with instance count");
      }
    }
    return std::move(report_);
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, what); }

  DiagramCoverage& diagram(const std::string& name) {
    auto it = report_.diagrams.find(name);
    if (it == report_.diagrams.end()) {
      fail("undeclared diagram '" + name + "'");
    }
    return it->second;
  }

  template <typename T>
  T& diagram_as(const std::string& name) {
    auto* cov = std::get_if<T>(&diagram(name));
    if (!cov) {
      fail("record does not fit the kind of diagram '" + name + "'");
    }
    return *cov;
  }

  void meta_line(std::string_view line) {
    if (line.size() < 2 || line[1] != ' ') {
      fail("malformed metadata line");
    }
    std::string error;
    auto tokens = token::split(line.substr(2), error);
    if (!tokens || tokens->empty()) {
      fail("malformed metadata line: " + (tokens ? std::string("empty") : error));
    }
    auto& t = *tokens;
    const std::string& key = t[0];
    auto need = [&](std::size_t n) {
      if (t.size() != n) {
        fail("'" + key + "' expects " + std::to_string(n - 1) + " field(s)");
      }
    };

    if (key == kMagic) {
      need(2);
      if (t[1] != kVersion) {
        fail("unsupported report version " + t[1]);
      }
      seen_magic_ = true;
      return;
    }
    if (!seen_magic_) {
      fail("missing report marker");
    }
    if (key == "digest") {
      need(2);
      report_.digest = t[1];
    } else if (key == "source") {
      if (t.size() > 2) {
        fail("'source' expects at most 1 field");
      }
      report_.sources.push_back(t.size() == 2 ? t[1] : std::string());
    } else if (key == "diagram") {
      need(3);
      auto kind = parse_diagram_kind(t[1]);
      if (!kind) {
        fail("unknown diagram kind " + t[1]);
      }
      DiagramCoverage cov;
      switch (*kind) {
      case DiagramKind::Statechart:
        cov.emplace<StatechartCoverage>().diagram = t[2];
        break;
      case DiagramKind::Activity:
        cov.emplace<ActivityCoverage>().diagram = t[2];
        break;
      case DiagramKind::Msc:
        cov.emplace<MscCoverage>().chart = t[2];
        break;
      case DiagramKind::ClassDiagram:
        cov.emplace<StructureCoverage>().diagram = t[2];
        break;
      }
      if (!report_.diagrams.emplace(t[2], std::move(cov)).second) {
        fail("duplicate diagram " + t[2]);
      }
    } else if (key == "counter") {
      need(4);
      std::size_t n = to_count(t[3], line_);
      auto& cov = diagram(t[1]);
      if (auto* sc = std::get_if<StatechartCoverage>(&cov); sc && t[2] == "inspected") {
        sc->events_inspected = n;
      } else if (auto* msc = std::get_if<MscCoverage>(&cov); msc && t[2] == "instances") {
        msc->instances = n;
      } else if (msc && t[2] == "resets") {
        msc->resets = n;
      } else {
        fail("unknown counter " + t[2]);
      }
    } else if (key == "mismatch") {
      need(6);
      auto kind = parse_event_kind(t[4]);
      if (!kind) {
        fail("unknown event kind " + t[4]);
      }
      diagram_as<StatechartCoverage>(t[1]).mismatches.push_back(Mismatch{to_count(t[2], line_), t[3], t[5], *kind});
    } else if (key == "incomplete") {
      need(4);
      diagram_as<ActivityCoverage>(t[1]).incomplete.push_back({t[2], t[3]});
    } else if (key == "violation") {
      need(3);
      diagram_as<StructureCoverage>(t[1]).violations.push_back(t[2]);
    } else if (key == "diag") {
      need(2);
      report_.diagnostics.push_back(t[1]);
    } else {
      fail("unknown metadata '" + key + "'");
    }
  }

  std::vector<std::string> element_tokens(const std::string& element, std::size_t n) {
    std::string error;
    auto tokens = token::split(element, error);
    if (!tokens) {
      fail("bad element '" + element + "': " + error);
    }
    if (tokens->size() != n) {
      fail("element '" + element + "' should have " + std::to_string(n) + " tokens");
    }
    return *tokens;
  }

  void row(std::string_view line) {
    auto fields = split_tabs(line);
    if (fields.size() != 4) {
      fail("expected 4 tab-separated fields");
    }
    const std::string& kind = fields[0];
    const std::string& name = fields[1];
    const std::string& element = fields[2];
    if (fields[3] != "0" && fields[3] != "1") {
      fail("covered flag must be 0 or 1");
    }
    bool covered = fields[3] == "1";
    if (element.empty()) {
      fail("empty element");
    }

    if (kind == "state") {
      auto& c = diagram_as<StatechartCoverage>(name);
      c.states.insert(element);
      if (covered) c.covered_states.insert(element);
    } else if (kind == "transition") {
      auto& c = diagram_as<StatechartCoverage>(name);
      auto tk = element_tokens(element, 3);
      Transition t{tk[0], tk[1], tk[2]};
      c.transitions.insert(t);
      if (covered) c.covered_transitions.insert(t);
    } else if (kind == "event") {
      auto& c = diagram_as<StatechartCoverage>(name);
      auto tk = element_tokens(element, 2);
      EventPair p{tk[0], tk[1]};
      c.event_pairs.insert(p);
      if (covered) c.covered_events.insert(p);
    } else if (kind == "branch") {
      auto& c = diagram_as<ActivityCoverage>(name);
      c.branches.insert(element);
      if (covered) c.covered_branches.insert(element);
    } else if (kind == "branch-transition") {
      auto& c = diagram_as<ActivityCoverage>(name);
      c.transitions.insert(element);
      if (covered) c.covered_transitions.insert(element);
    } else if (kind == "msc") {
      auto& c = diagram_as<MscCoverage>(name);
      if (element != "chart") {
        fail("msc rows describe the chart");
      }
      c.covered = covered;
    } else if (kind == "msc-tuple") {
      auto& c = diagram_as<MscCoverage>(name);
      c.tuples.insert(element);
      if (covered) c.matched.insert(element);
    } else if (kind == "config") {
      auto& c = diagram_as<StructureCoverage>(name);
      std::string error;
      auto v = parse_config(element, error);
      if (!v) {
        fail("bad configuration '" + element + "': " + error);
      }
      c.feasible.insert(*v);
      if (covered) c.covered.insert(*v);
    } else if (kind == "pattern") {
      auto& c = diagram_as<StructureCoverage>(name);
      c.patterns.insert(element);
      if (covered) c.covered_patterns.insert(element);
    } else {
      fail("unknown row kind '" + kind + "'");
    }
  }

  CoverageReport report_;
  std::size_t line_ = 0;
  bool seen_magic_ = false;
  bool seen_header_ = false;
};

} // namespace

std::string serialize_report(const CoverageReport& report) {
  std::string out = meta({std::string(kMagic), std::string(kVersion)});
  out += meta({"digest", report.digest});
  for (const auto& s : report.sources) {
    out += s.empty() ? std::string("# source\n") : meta({"source", s});
  }
  for (const auto& [name, cov] : report.diagrams) {
    out += meta({"diagram", std::string(to_string(kind_of(cov))), name});
    if (const auto* sc = std::get_if<StatechartCoverage>(&cov)) {
      out += meta({"counter", name, "inspected", std::to_string(sc->events_inspected)});
      for (const auto& m : sc->mismatches) {
        out += meta({"mismatch", name, std::to_string(m.trace_pos), m.expected, std::string(to_string(m.found_kind)),
                     m.found});
      }
    } else if (const auto* ac = std::get_if<ActivityCoverage>(&cov)) {
      for (const auto& s : ac->incomplete) {
        out += meta({"incomplete", name, s.transition, s.reason});
      }
    } else if (const auto* mc = std::get_if<MscCoverage>(&cov)) {
      out += meta({"counter", name, "instances", std::to_string(mc->instances)});
      out += meta({"counter", name, "resets", std::to_string(mc->resets)});
    } else if (const auto* st = std::get_if<StructureCoverage>(&cov)) {
      for (const auto& v : st->violations) {
        out += meta({"violation", name, v});
      }
    }
  }
  for (const auto& d : report.diagnostics) {
    out += meta({"diag", d});
  }
  out += render_table(report);
  return out;
}

CoverageReport parse_report(std::string_view text) { return ReportReader().read(text); }

CoverageReport read_report_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(0, "cannot open report file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_report(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.reason());
  }
}

} // namespace dcov
