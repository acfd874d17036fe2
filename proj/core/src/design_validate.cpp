#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "dcov/design.hpp"
#include "dcov/token.hpp"

namespace dcov {

namespace {

using Graph = std::map<std::string, std::vector<std::string>>;

// Returns one cycle (as a closed path) if the graph has any.
std::vector<std::string> find_cycle(const Graph& graph) {
  enum class Mark { None, Active, Done };
  std::map<std::string, Mark> mark;
  std::vector<std::string> stack;
  std::vector<std::string> cycle;

  auto visit = [&](auto&& self, const std::string& node) -> bool {
    mark[node] = Mark::Active;
    stack.push_back(node);
    if (auto it = graph.find(node); it != graph.end()) {
      for (const auto& next : it->second) {
        Mark m = mark.count(next) ? mark[next] : Mark::None;
        if (m == Mark::Active) {
          auto start = std::find(stack.begin(), stack.end(), next);
          cycle.assign(start, stack.end());
          cycle.push_back(next);
          return true;
        }
        if (m == Mark::None && self(self, next)) {
          return true;
        }
      }
    }
    stack.pop_back();
    mark[node] = Mark::Done;
    return false;
  };

  for (const auto& [node, _] : graph) {
    if (!mark.count(node) && visit(visit, node)) {
      return cycle;
    }
  }
  return {};
}

std::string path_text(const std::vector<std::string>& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i != 0) {
      out += " -> ";
    }
    out += path[i];
  }
  return out;
}

std::string tuple_text(std::string_view head, std::initializer_list<std::string_view> parts) {
  std::string out(head);
  out.push_back('(');
  bool first = true;
  for (auto p : parts) {
    if (!first) {
      out += ", ";
    }
    first = false;
    out += token::quote(p);
  }
  out.push_back(')');
  return out;
}

void check_statechart(const Statechart& sc, std::vector<Diagnostic>& out) {
  std::map<std::pair<std::string, std::string>, const Transition*> by_source;
  for (const auto& t : sc.transitions) {
    auto element = tuple_text("transition", {t.from, t.to, t.event});
    auto [it, inserted] = by_source.emplace(std::make_pair(t.from, t.event), &t);
    if (inserted) {
      continue;
    }
    if (it->second->to == t.to) {
      out.push_back({sc.name, element, "duplicate transition", t.line});
    } else {
      out.push_back({sc.name, element,
                     "nondeterministic transitions on (" + t.from + ", " + t.event + ")", t.line});
    }
  }
}

void check_activity(const ActivityDiagram& ad, std::vector<Diagnostic>& out) {
  std::set<std::string> decisions;
  for (const auto& d : ad.decisions) {
    if (d.branch == kStartBranch || d.branch == kEndBranch) {
      out.push_back({ad.name, d.branch, "reserved branch id used as decision", d.line});
    } else if (!decisions.insert(d.branch).second) {
      out.push_back({ad.name, d.branch, "duplicate decision", d.line});
    }
  }

  std::set<std::string> ids;
  auto check_transition = [&](const BranchTransition& t) {
    if (!ids.insert(t.id).second) {
      out.push_back({ad.name, t.id, "duplicate transition id", t.line});
    }
    if (t.next != kEndBranch && !decisions.count(t.next)) {
      out.push_back({ad.name, t.id + ":" + t.next, "undeclared branch " + t.next, t.line});
    }
  };
  check_transition(ad.entry);
  for (const auto& d : ad.decisions) {
    for (const auto& t : d.outgoing) {
      check_transition(t);
    }
  }
}

void check_msc(const MscChart& msc, std::vector<Diagnostic>& out) {
  std::set<std::string> ids;
  std::set<std::tuple<std::string, std::string, std::string>> triples;
  for (const auto& s : msc.sends) {
    auto element = tuple_text("sends", {s.sender, s.receiver, s.message, s.id});
    if (!ids.insert(s.id).second) {
      out.push_back({msc.name, element, "duplicate EventId " + s.id, s.line});
    }
    if (!triples.emplace(s.sender, s.receiver, s.message).second) {
      out.push_back({msc.name, element, "duplicate sends triple", s.line});
    }
  }

  Graph order;
  for (const auto& f : msc.follows) {
    auto element = tuple_text("follows", {f.first, f.next});
    bool ok = true;
    for (const auto* id : {&f.first, &f.next}) {
      if (!ids.count(*id)) {
        out.push_back({msc.name, element, "undeclared EventId " + *id, f.line});
        ok = false;
      }
    }
    if (ok) {
      order[f.first].push_back(f.next);
    }
  }
  if (auto cycle = find_cycle(order); !cycle.empty()) {
    out.push_back({msc.name, path_text(cycle), "follows cycle", msc.line});
  }
}

void check_classdiagram(const ClassDiagram& cd, std::vector<Diagnostic>& out) {
  std::set<std::string> classes;
  for (const auto& c : cd.classes) {
    if (!classes.insert(c).second) {
      out.push_back({cd.name, c, "duplicate class", cd.line});
    }
  }
  auto require_class = [&](const std::string& cls, const std::string& element, std::size_t line) {
    if (!classes.count(cls)) {
      out.push_back({cd.name, element, "undeclared class " + cls, line});
      return false;
    }
    return true;
  };

  Graph hierarchy;
  for (const auto& g : cd.isa) {
    auto element = tuple_text("isa", {g.sub, g.super});
    bool ok = require_class(g.sub, element, g.line);
    ok = require_class(g.super, element, g.line) && ok;
    if (ok) {
      hierarchy[g.sub].push_back(g.super);
    }
  }
  if (auto cycle = find_cycle(hierarchy); !cycle.empty()) {
    out.push_back({cd.name, path_text(cycle), "isa cycle", cd.line});
  }

  std::set<std::string> assocs;
  for (const auto& a : cd.assocs) {
    if (!assocs.insert(a.name).second) {
      out.push_back({cd.name, a.name, "duplicate association", a.line});
    }
    require_class(a.src, a.name, a.line);
    require_class(a.dst, a.name, a.line);
  }

  std::set<std::string> patterns;
  for (const auto& p : cd.patterns) {
    if (!patterns.insert(p.name).second) {
      out.push_back({cd.name, p.name, "duplicate pattern", p.line});
    }
    if (p.nodes.empty()) {
      out.push_back({cd.name, p.name, "pattern has no nodes", p.line});
    }
    std::set<std::string> nodes;
    for (const auto& n : p.nodes) {
      if (!nodes.insert(n.id).second) {
        out.push_back({cd.name, p.name + "." + n.id, "duplicate pattern node", n.line});
      }
      require_class(n.cls, p.name + "." + n.id, n.line);
    }
    for (const auto& e : p.edges) {
      auto element = p.name + "." + tuple_text("edge", {e.src, e.assoc, e.dst});
      for (const auto* id : {&e.src, &e.dst}) {
        if (!nodes.count(*id)) {
          out.push_back({cd.name, element, "undeclared pattern node " + *id, e.line});
        }
      }
      if (!assocs.count(e.assoc)) {
        out.push_back({cd.name, element, "undeclared association " + e.assoc, e.line});
      }
    }
  }
}

} // namespace

std::vector<Diagnostic> validate_design(const DesignModel& model) {
  std::vector<Diagnostic> out;

  std::map<std::string, int> names;
  auto note_name = [&](const std::string& name, std::size_t line) {
    if (++names[name] == 2) {
      out.push_back({name, "", "duplicate diagram name", line});
    }
  };
  for (const auto& d : model.statecharts) note_name(d.name, d.line);
  for (const auto& d : model.activities) note_name(d.name, d.line);
  for (const auto& d : model.mscs) note_name(d.name, d.line);
  for (const auto& d : model.classdiagrams) note_name(d.name, d.line);

  for (const auto& d : model.statecharts) check_statechart(d, out);
  for (const auto& d : model.activities) check_activity(d, out);
  for (const auto& d : model.mscs) check_msc(d, out);
  for (const auto& d : model.classdiagrams) check_classdiagram(d, out);
  return out;
}

} // namespace dcov
