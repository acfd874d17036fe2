#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "dcov/design.hpp"
#include "dcov/error.hpp"
#include "dcov/token.hpp"

namespace dcov {

namespace {

void add_unique(std::vector<std::string>& out, std::unordered_set<std::string>& seen, const std::string& s) {
  if (seen.insert(s).second) {
    out.push_back(s);
  }
}

template <typename Diagram>
const Diagram* find_named(const std::vector<Diagram>& diagrams, std::string_view name) {
  for (const auto& d : diagrams) {
    if (d.name == name) {
      return &d;
    }
  }
  return nullptr;
}

template <typename Diagram>
std::vector<Diagram> keep_named(const std::vector<Diagram>& diagrams, std::string_view name) {
  std::vector<Diagram> out;
  for (const auto& d : diagrams) {
    if (d.name == name) {
      out.push_back(d);
    }
  }
  return out;
}

std::string q(const std::string& s) { return token::quote(s); }

} // namespace

std::vector<std::string> Statechart::states() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  if (!initial.empty()) {
    add_unique(out, seen, initial);
  }
  for (const auto& t : transitions) {
    add_unique(out, seen, t.from);
    add_unique(out, seen, t.to);
  }
  return out;
}

std::vector<std::string> Statechart::events() const {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& t : transitions) {
    add_unique(out, seen, t.event);
  }
  return out;
}

std::vector<std::string> ActivityDiagram::branches() const {
  std::vector<std::string> out;
  out.emplace_back(kStartBranch);
  for (const auto& d : decisions) {
    out.push_back(d.branch);
  }
  out.emplace_back(kEndBranch);
  return out;
}

std::vector<std::string> ActivityDiagram::transition_ids() const {
  std::vector<std::string> out{entry.id};
  for (const auto& d : decisions) {
    for (const auto& t : d.outgoing) {
      out.push_back(t.id);
    }
  }
  return out;
}

std::optional<std::string> ActivityDiagram::source_of(std::string_view id) const {
  if (entry.id == id) {
    return std::string(kStartBranch);
  }
  for (const auto& d : decisions) {
    for (const auto& t : d.outgoing) {
      if (t.id == id) {
        return d.branch;
      }
    }
  }
  return std::nullopt;
}

const BranchTransition* ActivityDiagram::find_transition(std::string_view id) const {
  if (entry.id == id) {
    return &entry;
  }
  for (const auto& d : decisions) {
    for (const auto& t : d.outgoing) {
      if (t.id == id) {
        return &t;
      }
    }
  }
  return nullptr;
}

std::string_view to_string(Multiplicity m) noexcept {
  switch (m) {
  case Multiplicity::ZeroOrOne:
    return "0..1";
  case Multiplicity::ExactlyOne:
    return "1";
  case Multiplicity::ZeroOrMany:
    return "0..*";
  case Multiplicity::OneOrMany:
    return "1..*";
  }
  return "?";
}

std::optional<Multiplicity> parse_multiplicity(std::string_view text) noexcept {
  if (text == "0..1") return Multiplicity::ZeroOrOne;
  if (text == "1") return Multiplicity::ExactlyOne;
  if (text == "0..*") return Multiplicity::ZeroOrMany;
  if (text == "1..*") return Multiplicity::OneOrMany;
  return std::nullopt;
}

bool has_upper_bound_one(Multiplicity m) noexcept {
  return m == Multiplicity::ZeroOrOne || m == Multiplicity::ExactlyOne;
}

bool has_lower_bound_one(Multiplicity m) noexcept {
  return m == Multiplicity::ExactlyOne || m == Multiplicity::OneOrMany;
}

bool ClassDiagram::has_class(std::string_view cls) const {
  return std::find(classes.begin(), classes.end(), cls) != classes.end();
}

const Association* ClassDiagram::find_assoc(std::string_view assoc) const {
  for (const auto& a : assocs) {
    if (a.name == assoc) {
      return &a;
    }
  }
  return nullptr;
}

const Pattern* ClassDiagram::find_pattern(std::string_view pattern) const {
  for (const auto& p : patterns) {
    if (p.name == pattern) {
      return &p;
    }
  }
  return nullptr;
}

bool ClassDiagram::conforms(std::string_view cls, std::string_view ancestor) const {
  if (cls == ancestor) {
    return true;
  }
  // Breadth-first over isa edges; the visited set keeps cyclic (invalid)
  // diagrams from looping.
  std::set<std::string, std::less<>> visited{std::string(cls)};
  std::vector<std::string> frontier{std::string(cls)};
  while (!frontier.empty()) {
    std::vector<std::string> next;
    for (const auto& c : frontier) {
      for (const auto& g : isa) {
        if (g.sub != c) {
          continue;
        }
        if (g.super == ancestor) {
          return true;
        }
        if (visited.insert(g.super).second) {
          next.push_back(g.super);
        }
      }
    }
    frontier = std::move(next);
  }
  return false;
}

std::vector<const Association*> ClassDiagram::outgoing_assocs(std::string_view cls) const {
  std::vector<const Association*> out;
  for (const auto& a : assocs) {
    if (conforms(cls, a.src)) {
      out.push_back(&a);
    }
  }
  return out;
}

std::string_view to_string(DiagramKind kind) noexcept {
  switch (kind) {
  case DiagramKind::Statechart:
    return "statechart";
  case DiagramKind::Activity:
    return "activity";
  case DiagramKind::Msc:
    return "msc";
  case DiagramKind::ClassDiagram:
    return "classdiagram";
  }
  return "?";
}

std::optional<DiagramKind> parse_diagram_kind(std::string_view text) noexcept {
  if (text == "statechart") return DiagramKind::Statechart;
  if (text == "activity") return DiagramKind::Activity;
  if (text == "msc") return DiagramKind::Msc;
  if (text == "classdiagram") return DiagramKind::ClassDiagram;
  return std::nullopt;
}

const Statechart* DesignModel::find_statechart(std::string_view name) const {
  return find_named(statecharts, name);
}

const ActivityDiagram* DesignModel::find_activity(std::string_view name) const {
  return find_named(activities, name);
}

const MscChart* DesignModel::find_msc(std::string_view name) const { return find_named(mscs, name); }

const ClassDiagram* DesignModel::find_classdiagram(std::string_view name) const {
  return find_named(classdiagrams, name);
}

std::optional<DiagramKind> DesignModel::kind_of(std::string_view name) const {
  if (find_statechart(name)) return DiagramKind::Statechart;
  if (find_activity(name)) return DiagramKind::Activity;
  if (find_msc(name)) return DiagramKind::Msc;
  if (find_classdiagram(name)) return DiagramKind::ClassDiagram;
  return std::nullopt;
}

std::vector<std::string> DesignModel::diagram_names() const {
  std::vector<std::string> out;
  for (const auto& d : statecharts) out.push_back(d.name);
  for (const auto& d : activities) out.push_back(d.name);
  for (const auto& d : mscs) out.push_back(d.name);
  for (const auto& d : classdiagrams) out.push_back(d.name);
  std::sort(out.begin(), out.end());
  return out;
}

bool DesignModel::empty() const {
  return statecharts.empty() && activities.empty() && mscs.empty() && classdiagrams.empty();
}

std::string Diagnostic::message() const {
  std::string out;
  if (line != 0) {
    out += "line " + std::to_string(line) + ": ";
  }
  out += diagram.empty() ? std::string("model") : diagram;
  out += ": ";
  out += rule;
  if (!element.empty()) {
    out += " [" + element + "]";
  }
  return out;
}

DesignModel parse_design(std::string_view text) {
  DesignModel model = parse_design_syntax(text);
  auto diagnostics = validate_design(model);
  if (!diagnostics.empty()) {
    const auto& first = diagnostics.front();
    std::string reason = (first.diagram.empty() ? std::string("model") : first.diagram) + ": " + first.rule;
    if (!first.element.empty()) {
      reason += " [" + first.element + "]";
    }
    throw ParseError(first.line, reason);
  }
  return model;
}

DesignModel read_design_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(0, "cannot open design file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_design(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path + ": " + e.reason());
  }
}

std::string render_design(const DesignModel& model) {
  std::ostringstream out;
  bool first = true;
  auto separate = [&] {
    if (!first) {
      out << '\n';
    }
    first = false;
  };

  for (const auto& sc : model.statecharts) {
    separate();
    out << "statechart " << q(sc.name) << " {\n";
    out << "  initial " << q(sc.initial) << ";\n";
    for (const auto& t : sc.transitions) {
      out << "  transition(" << q(t.from) << ", " << q(t.to) << ", " << q(t.event) << ");\n";
    }
    out << "}\n";
  }
  for (const auto& ad : model.activities) {
    separate();
    out << "activity " << q(ad.name) << " {\n";
    out << "  entry(" << q(ad.entry.id) << ':' << q(ad.entry.next) << ");\n";
    for (const auto& d : ad.decisions) {
      out << "  decision(" << q(d.branch);
      for (const auto& t : d.outgoing) {
        out << ", " << q(t.id) << ':' << q(t.next);
      }
      out << ");\n";
    }
    out << "}\n";
  }
  for (const auto& msc : model.mscs) {
    separate();
    out << "msc " << q(msc.name) << " {\n";
    for (const auto& s : msc.sends) {
      out << "  sends(" << q(s.sender) << ", " << q(s.receiver) << ", " << q(s.message) << ", " << q(s.id)
          << ");\n";
    }
    for (const auto& f : msc.follows) {
      out << "  follows(" << q(f.first) << ", " << q(f.next) << ");\n";
    }
    out << "}\n";
  }
  for (const auto& cd : model.classdiagrams) {
    separate();
    out << "classdiagram " << q(cd.name) << " {\n";
    for (const auto& c : cd.classes) {
      out << "  class " << q(c) << ";\n";
    }
    for (const auto& g : cd.isa) {
      out << "  isa(" << q(g.sub) << ", " << q(g.super) << ");\n";
    }
    for (const auto& a : cd.assocs) {
      out << "  assoc " << q(a.name) << '(' << q(a.src) << " -> " << q(a.dst) << ", " << to_string(a.mult)
          << ");\n";
    }
    for (const auto& p : cd.patterns) {
      out << "  pattern " << q(p.name) << " {\n";
      for (const auto& n : p.nodes) {
        out << "    node " << q(n.id) << ": " << q(n.cls) << ";\n";
      }
      for (const auto& e : p.edges) {
        out << "    edge(" << q(e.src) << ", " << q(e.assoc) << ", " << q(e.dst) << ");\n";
      }
      out << "  }\n";
    }
    out << "}\n";
  }
  return out.str();
}

std::string design_digest(const DesignModel& model) {
  // FNV-1a, 64 bit.
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : render_design(model)) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kHex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

DesignModel filter_design(const DesignModel& model, std::string_view diagram) {
  DesignModel out;
  out.statecharts = keep_named(model.statecharts, diagram);
  out.activities = keep_named(model.activities, diagram);
  out.mscs = keep_named(model.mscs, diagram);
  out.classdiagrams = keep_named(model.classdiagrams, diagram);
  return out;
}

} // namespace dcov
