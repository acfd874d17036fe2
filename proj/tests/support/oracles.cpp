#include "oracles.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#ifndef DCOV_FIXTURE_DIR
#error "DCOV_FIXTURE_DIR must be defined"
#endif

namespace dcov::testing {

namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<std::size_t>(0, items.size() - 1)(rng)];
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

void push(Trace& trace, EventKind kind, std::vector<std::string> args) {
  Timestamp ts = trace.events.empty() ? 0 : trace.events.back().ts + 1;
  trace.events.push_back(TraceEvent{ts, kind, std::move(args), {}});
}

std::set<std::string> ancestors(const ClassDiagram& diagram, const std::string& cls) {
  std::set<std::string> out{cls};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& g : diagram.isa) {
      if (out.count(g.sub) && out.insert(g.super).second) {
        grew = true;
      }
    }
  }
  return out;
}

} // namespace

std::string fixture(const std::string& name) { return std::string(DCOV_FIXTURE_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Trace make_trace(std::initializer_list<std::pair<EventKind, std::vector<std::string>>> events) {
  Trace trace;
  for (const auto& [kind, args] : events) {
    push(trace, kind, args);
  }
  return trace;
}

Statechart random_chart(std::mt19937_64& rng, int states, int events, double density) {
  Statechart chart;
  chart.name = "Random";
  chart.initial = "S0";
  for (int s = 0; s < states; ++s) {
    for (int e = 0; e < events; ++e) {
      if (chance(rng, density)) {
        chart.transitions.push_back(
            {"S" + std::to_string(s), "S" + std::to_string(uniform(rng, 0, states - 1)), "e" + std::to_string(e)});
      }
    }
  }
  return chart;
}

Walk random_walk(std::mt19937_64& rng, const Statechart& chart, int steps, bool noise) {
  Walk walk;
  std::string current = chart.initial;
  push(walk.trace, EventKind::State, {current});
  walk.states.insert(current);
  for (int i = 0; i < steps; ++i) {
    std::vector<const Transition*> out;
    std::set<std::string> used_events;
    for (const auto& t : chart.transitions) {
      if (t.from == current) {
        out.push_back(&t);
        used_events.insert(t.event);
      }
    }
    if (noise && chance(rng, 0.2)) {
      push(walk.trace, EventKind::Branch, {"elsewhere"});
    }
    if (noise && chance(rng, 0.2)) {
      // An event name with no transition out of the current state.
      std::string name = "e" + std::to_string(uniform(rng, 0, 9));
      if (!used_events.count(name)) {
        push(walk.trace, EventKind::Event, {name});
      }
    }
    if (out.empty()) {
      break;
    }
    const Transition& t = *pick(rng, out);
    push(walk.trace, EventKind::Event, {t.event});
    if (noise && chance(rng, 0.1)) {
      push(walk.trace, EventKind::Send, {"X", "Y", "noise"});
    }
    push(walk.trace, EventKind::State, {t.to});
    walk.states.insert(t.from);
    walk.states.insert(t.to);
    walk.transitions.insert(Transition{t.from, t.to, t.event});
    walk.pairs.emplace(t.from, t.event);
    current = t.to;
  }
  return walk;
}

std::pair<Statechart, Trace> covering_chart_and_trace(int states) {
  Statechart chart;
  chart.name = "Ring";
  chart.initial = "S0";
  auto name = [](int i) { return "S" + std::to_string(i); };
  for (int i = 0; i < states; ++i) {
    chart.transitions.push_back({name(i), name((i + 1) % states), "next"});
    chart.transitions.push_back({name(i), name((i + states - 1) % states), "back"});
  }
  Trace trace;
  push(trace, EventKind::State, {"S0"});
  int at = 0;
  for (int i = 0; i < states; ++i) {
    push(trace, EventKind::Event, {"next"});
    at = (at + 1) % states;
    push(trace, EventKind::State, {name(at)});
  }
  for (int i = 0; i < states; ++i) {
    push(trace, EventKind::Event, {"back"});
    at = (at + states - 1) % states;
    push(trace, EventKind::State, {name(at)});
  }
  return {chart, trace};
}

Trace project_activity(const ActivityDiagram& diagram, const Trace& trace) {
  auto branches = diagram.branches();
  auto ids = diagram.transition_ids();
  std::set<std::string> branch_set(branches.begin(), branches.end());
  std::set<std::string> id_set(ids.begin(), ids.end());
  Trace out;
  out.source = trace.source;
  for (const auto& ev : trace.events) {
    if ((ev.kind == EventKind::Branch && branch_set.count(ev.args[0])) ||
        (ev.kind == EventKind::Transition && id_set.count(ev.args[0]))) {
      out.events.push_back(ev);
    }
  }
  return out;
}

std::set<std::string> activity_oracle(const ActivityDiagram& diagram, const Trace& trace) {
  Trace p = project_activity(diagram, trace);
  auto is = [&](std::size_t i, EventKind kind, const std::string& name) {
    return i < p.events.size() && p.events[i].kind == kind && p.events[i].args[0] == name;
  };
  std::set<std::string> covered;
  auto check = [&](const std::string& source, const BranchTransition& t, bool is_entry) {
    if (is_entry && is(0, EventKind::Transition, t.id) && is(1, EventKind::Branch, t.next)) {
      covered.insert(t.id);
    }
    for (std::size_t i = 0; i < p.events.size(); ++i) {
      if (is(i, EventKind::Branch, source) && is(i + 1, EventKind::Transition, t.id) &&
          is(i + 2, EventKind::Branch, t.next)) {
        covered.insert(t.id);
      }
    }
  };
  check(std::string(kStartBranch), diagram.entry, true);
  for (const auto& d : diagram.decisions) {
    for (const auto& t : d.outgoing) {
      check(d.branch, t, false);
    }
  }
  return covered;
}

ActivityDiagram random_activity(std::mt19937_64& rng, const std::string& prefix, int decisions) {
  ActivityDiagram ad;
  ad.name = prefix + "Activity";
  int next_id = 0;
  auto fresh_id = [&] { return prefix + "t" + std::to_string(next_id++); };
  auto branch_name = [&](int i) { return prefix + "D" + std::to_string(i) + "?"; };
  auto random_target = [&] {
    int k = uniform(rng, 0, decisions);
    return k == decisions ? std::string(kEndBranch) : branch_name(k);
  };
  ad.entry = {fresh_id(), decisions > 0 ? branch_name(0) : std::string(kEndBranch)};
  for (int i = 0; i < decisions; ++i) {
    Decision d;
    d.branch = branch_name(i);
    int n = uniform(rng, 1, 3);
    for (int k = 0; k < n; ++k) {
      d.outgoing.push_back({fresh_id(), random_target()});
    }
    ad.decisions.push_back(std::move(d));
  }
  return ad;
}

std::vector<TraceEvent> random_activity_events(std::mt19937_64& rng, const ActivityDiagram& diagram, int steps) {
  std::vector<TraceEvent> out;
  auto emit = [&](EventKind kind, const std::string& name) {
    if (chance(rng, 0.05)) {
      return; // dropped, e.g. an interrupted sequence
    }
    out.push_back(TraceEvent{0, kind, {name}, {}});
    if (chance(rng, 0.05)) {
      auto ids = diagram.transition_ids();
      out.push_back(TraceEvent{0, EventKind::Transition, {pick(rng, ids)}, {}});
    }
  };
  int budget = steps;
  while (budget > 0) {
    if (chance(rng, 0.7)) {
      emit(EventKind::Branch, std::string(kStartBranch));
    }
    emit(EventKind::Transition, diagram.entry.id);
    std::string at = diagram.entry.next;
    emit(EventKind::Branch, at);
    while (at != kEndBranch && budget-- > 0) {
      const Decision* d = nullptr;
      for (const auto& dec : diagram.decisions) {
        if (dec.branch == at) d = &dec;
      }
      const auto& t = pick(rng, d->outgoing);
      emit(EventKind::Transition, t.id);
      at = t.next;
      emit(EventKind::Branch, at);
    }
    --budget;
  }
  return out;
}

MscChart random_msc(std::mt19937_64& rng, int tuples, double edge_probability) {
  MscChart chart;
  chart.name = "RandomMsc";
  std::vector<std::string> ids;
  for (int i = 0; i < tuples; ++i) {
    ids.push_back("m" + std::to_string(i));
    chart.sends.push_back({ids.back(), "A" + std::to_string(i % 3), "B" + std::to_string(i % 2),
                           "msg" + std::to_string(i)});
  }
  std::vector<std::string> order = ids;
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 0; i < tuples; ++i) {
    for (int j = i + 1; j < tuples; ++j) {
      if (chance(rng, edge_probability)) {
        chart.follows.push_back({order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]});
      }
    }
  }
  return chart;
}

bool is_linear_extension(const MscChart& chart, const std::vector<std::string>& order) {
  if (order.size() != chart.sends.size()) {
    return false;
  }
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) {
    pos[order[i]] = i;
  }
  for (const auto& s : chart.sends) {
    if (!pos.count(s.id)) return false;
  }
  for (const auto& f : chart.follows) {
    if (pos.at(f.first) >= pos.at(f.next)) {
      return false;
    }
  }
  return true;
}

std::vector<std::vector<std::string>> linear_extensions(const MscChart& chart) {
  std::vector<std::string> ids;
  for (const auto& s : chart.sends) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  std::vector<std::vector<std::string>> out;
  do {
    if (is_linear_extension(chart, ids)) {
      out.push_back(ids);
    }
  } while (std::next_permutation(ids.begin(), ids.end()));
  return out;
}

MscOracleResult msc_oracle(const MscChart& chart, const std::vector<std::string>& ids) {
  MscOracleResult r;
  bool done = false;
  auto enabled = [&](const std::string& id) {
    if (r.matched.count(id)) return false;
    for (const auto& f : chart.follows) {
      if (f.next == id && !r.matched.count(f.first)) return false;
    }
    return true;
  };
  for (const auto& id : ids) {
    if (done) {
      r.matched.clear();
      done = false;
    }
    if (!enabled(id)) {
      ++r.resets;
      r.matched.clear();
      if (!enabled(id)) continue;
    }
    r.matched.insert(id);
    if (r.matched.size() == chart.sends.size()) {
      ++r.instances;
      done = true;
    }
  }
  return r;
}

Trace sends_trace(const MscChart& chart, const std::vector<std::string>& ids) {
  Trace trace;
  for (const auto& id : ids) {
    for (const auto& s : chart.sends) {
      if (s.id == id) {
        push(trace, EventKind::Send, {s.sender, s.receiver, s.message});
      }
    }
  }
  return trace;
}

ClassDiagram random_structure_diagram() {
  ClassDiagram cd;
  cd.name = "Shapes";
  cd.classes = {"A", "B", "C", "D"};
  cd.isa = {{"B", "A"}};
  cd.assocs = {{"a_c", "A", "C", Multiplicity::ZeroOrOne},
               {"a_d", "A", "D", Multiplicity::ExactlyOne},
               {"b_c", "B", "C", Multiplicity::ZeroOrMany},
               {"c_d", "C", "D", Multiplicity::OneOrMany},
               {"d_a", "D", "A", Multiplicity::ZeroOrMany}};
  return cd;
}

std::vector<TraceEvent> random_object_script(std::mt19937_64& rng, int objects, int steps) {
  static const std::vector<std::string> kClasses = {"A", "B", "C", "D", "Nope"};
  static const std::vector<std::string> kAssocs = {"a_c", "a_d", "b_c", "c_d", "d_a", "zz"};
  std::vector<TraceEvent> out;
  std::vector<std::vector<std::string>> linked;
  auto object = [&] { return "o" + std::to_string(uniform(rng, 0, objects - 1)); };
  for (int i = 0; i < steps; ++i) {
    double roll = std::uniform_real_distribution<double>(0, 1)(rng);
    if (roll < 0.3) {
      out.push_back({0, EventKind::New, {object(), pick(rng, kClasses)}, {}});
    } else if (roll < 0.75 || linked.empty()) {
      std::vector<std::string> args{object(), pick(rng, kAssocs), object()};
      linked.push_back(args);
      out.push_back({0, EventKind::Link, args, {}});
    } else {
      out.push_back({0, EventKind::Unlink, pick(rng, linked), {}});
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].ts = i;
  }
  return out;
}

RecomputeResult recompute_oracle(const ClassDiagram& diagram, const Trace& trace, bool ignore_initial) {
  RecomputeResult r;
  std::set<std::string> touched;
  auto count = [&](const std::string& src, const std::string& assoc) {
    std::size_t n = 0;
    for (const auto& l : r.links) {
      n += (l.src == src && l.assoc == assoc) ? 1 : 0;
    }
    return n;
  };
  for (const auto& ev : trace.events) {
    if (ev.kind == EventKind::New) {
      bool known = std::find(diagram.classes.begin(), diagram.classes.end(), ev.args[1]) != diagram.classes.end();
      if (known && !r.objects.count(ev.args[0])) {
        r.objects[ev.args[0]] = ev.args[1];
      }
    } else if (ev.kind == EventKind::Link || ev.kind == EventKind::Unlink) {
      Link link{ev.args[0], ev.args[1], ev.args[2]};
      const Association* a = nullptr;
      for (const auto& as : diagram.assocs) {
        if (as.name == link.assoc) a = &as;
      }
      if (a && r.objects.count(link.src) && r.objects.count(link.dst)) {
        if (ev.kind == EventKind::Unlink) {
          auto it = r.links.find(link);
          if (it != r.links.end()) {
            r.links.erase(it);
            touched.insert(link.src);
          }
        } else {
          bool types = ancestors(diagram, r.objects[link.src]).count(a->src) &&
                       ancestors(diagram, r.objects[link.dst]).count(a->dst);
          bool room = !(a->mult == Multiplicity::ZeroOrOne || a->mult == Multiplicity::ExactlyOne) ||
                      count(link.src, link.assoc) == 0;
          if (types && room) {
            r.links.insert(link);
            touched.insert(link.src);
          }
        }
      }
    }
    for (const auto& [id, cls] : r.objects) {
      if (ignore_initial && !touched.count(id)) {
        continue;
      }
      ConfigVector v{cls, {}};
      auto up = ancestors(diagram, cls);
      for (const auto& a : diagram.assocs) {
        if (up.count(a.src)) {
          std::size_t n = count(id, a.name);
          v.counts[a.name] = n == 0 ? Bucket::Zero : n == 1 ? Bucket::One : Bucket::Many;
        }
      }
      if (!v.counts.empty()) {
        r.covered.insert(v);
      }
    }
  }
  return r;
}

std::vector<std::vector<std::string>> embeddings_oracle(const ClassDiagram& diagram, const ObjectGraph& graph,
                                                       const Pattern& pattern) {
  std::vector<std::string> objects;
  for (const auto& [id, cls] : graph.objects()) objects.push_back(id);
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> assignment;
  std::function<void()> rec = [&] {
    if (assignment.size() == pattern.nodes.size()) {
      std::map<std::string, std::string> by_node;
      for (std::size_t i = 0; i < assignment.size(); ++i) {
        by_node[pattern.nodes[i].id] = assignment[i];
        if (!ancestors(diagram, graph.objects().at(assignment[i])).count(pattern.nodes[i].cls)) return;
      }
      for (const auto& e : pattern.edges) {
        if (!graph.links().count(Link{by_node[e.src], e.assoc, by_node[e.dst]})) return;
      }
      out.push_back(assignment);
      return;
    }
    for (const auto& o : objects) {
      if (std::find(assignment.begin(), assignment.end(), o) != assignment.end()) continue;
      assignment.push_back(o);
      rec();
      assignment.pop_back();
    }
  };
  if (!pattern.nodes.empty()) rec();
  std::sort(out.begin(), out.end());
  return out;
}

ObjectGraph random_graph(std::mt19937_64& rng, const ClassDiagram& diagram, int objects, int links) {
  ObjectGraph g;
  for (int i = 0; i < objects; ++i) {
    g.add_object("o" + std::to_string(i), pick(rng, diagram.classes));
  }
  std::vector<std::string> assoc_names;
  for (const auto& a : diagram.assocs) assoc_names.push_back(a.name);
  for (int i = 0; i < links && objects > 0; ++i) {
    g.add_link(Link{"o" + std::to_string(uniform(rng, 0, objects - 1)), pick(rng, assoc_names),
                    "o" + std::to_string(uniform(rng, 0, objects - 1))});
  }
  return g;
}

Pattern random_pattern(std::mt19937_64& rng, const ClassDiagram& diagram, int nodes, int edges) {
  Pattern p;
  p.name = "P";
  for (int i = 0; i < nodes; ++i) {
    p.nodes.push_back({"n" + std::to_string(i), pick(rng, diagram.classes)});
  }
  std::vector<std::string> assoc_names;
  for (const auto& a : diagram.assocs) assoc_names.push_back(a.name);
  for (int i = 0; i < edges && nodes > 0; ++i) {
    p.edges.push_back({"n" + std::to_string(uniform(rng, 0, nodes - 1)), pick(rng, assoc_names),
                       "n" + std::to_string(uniform(rng, 0, nodes - 1))});
  }
  return p;
}

Trace random_phone_trace(std::mt19937_64& rng, int steps, const std::string& source) {
  static const std::vector<std::string> kStates = {"Idle", "Editing", "Sending SMS", "Dialing", "Talking"};
  static const std::vector<std::string> kEvents = {"incoming call", "send SMS", "dial call", "end edit",
                                                   "success", "outgoing call", "hang up"};
  static const std::vector<std::string> kBranches = {"Start", "Action?", "End"};
  static const std::vector<std::string> kTransitions = {"t0", "Search", "Edit", "Exit"};
  static const std::vector<std::vector<std::string>> kSends = {
      {"WAE", "WSP", "S-Method.req"}, {"WSP", "WTP", "TR-Invoke.req"},     {"WTP", "WSP", "TR-Result.ind"},
      {"WSP", "WAE", "S-Reply.ind"},  {"WTP", "WSP", "TR-Abort.ind"},      {"WSP", "WAE", "S-MethodAbort.ind"}};
  static const std::vector<std::string> kObjects = {"o1", "o2", "m1", "v1"};
  static const std::vector<std::string> kClasses = {"Office phone number", "Mobile phone number",
                                                    "Voice mail number"};
  static const std::vector<std::string> kAssocs = {"fwd_mobile", "fwd_vm"};

  Trace trace;
  trace.source = source;
  push(trace, EventKind::State, {"Idle"});
  for (int i = 0; i < steps; ++i) {
    switch (uniform(rng, 0, 7)) {
    case 0:
      push(trace, EventKind::State, {pick(rng, kStates)});
      break;
    case 1:
    case 2:
      push(trace, EventKind::Event, {pick(rng, kEvents)});
      break;
    case 3:
      push(trace, EventKind::Branch, {pick(rng, kBranches)});
      break;
    case 4:
      push(trace, EventKind::Transition, {pick(rng, kTransitions)});
      break;
    case 5:
      push(trace, EventKind::Send, pick(rng, kSends));
      break;
    case 6:
      push(trace, EventKind::New, {pick(rng, kObjects), pick(rng, kClasses)});
      break;
    default:
      push(trace, chance(rng, 0.7) ? EventKind::Link : EventKind::Unlink,
           {pick(rng, kObjects), pick(rng, kAssocs), pick(rng, kObjects)});
      break;
    }
  }
  return trace;
}

} // namespace dcov::testing
