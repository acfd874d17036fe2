#include "dcov/structure_coverage.hpp"

#include <algorithm>
#include <tuple>

#include "dcov/error.hpp"
#include "dcov/token.hpp"

namespace dcov {

std::string_view to_string(Bucket b) noexcept {
  switch (b) {
  case Bucket::Zero:
    return "0";
  case Bucket::One:
    return "1";
  case Bucket::Many:
    return "many";
  }
  return "?";
}

std::optional<Bucket> parse_bucket(std::string_view text) noexcept {
  if (text == "0") return Bucket::Zero;
  if (text == "1") return Bucket::One;
  if (text == "many") return Bucket::Many;
  return std::nullopt;
}

Bucket bucket_for(std::size_t links) noexcept {
  if (links == 0) return Bucket::Zero;
  if (links == 1) return Bucket::One;
  return Bucket::Many;
}

std::optional<std::string> ObjectGraph::class_of(std::string_view object) const {
  auto it = objects_.find(std::string(object));
  if (it == objects_.end()) {
    return std::nullopt;
  }
  return it->second;
}

std::size_t ObjectGraph::out_degree(const std::string& object, const std::string& assoc) const {
  auto it = out_.find(Key{object, assoc});
  return it == out_.end() ? 0 : it->second;
}

std::size_t ObjectGraph::in_degree(const std::string& object, const std::string& assoc) const {
  auto it = in_.find(Key{object, assoc});
  return it == in_.end() ? 0 : it->second;
}

bool ObjectGraph::add_object(std::string id, std::string cls) {
  return objects_.emplace(std::move(id), std::move(cls)).second;
}

void ObjectGraph::add_link(const Link& link) {
  links_.insert(link);
  ++out_[Key{link.src, link.assoc}];
  ++in_[Key{link.dst, link.assoc}];
}

bool ObjectGraph::remove_link(const Link& link) {
  auto it = links_.find(link);
  if (it == links_.end()) {
    return false;
  }
  links_.erase(it);
  auto dec = [](std::map<Key, std::size_t>& m, Key key) {
    auto found = m.find(key);
    if (--found->second == 0) {
      m.erase(found);
    }
  };
  dec(out_, Key{link.src, link.assoc});
  dec(in_, Key{link.dst, link.assoc});
  return true;
}

std::set<ConfigVector> feasible_configs(const ClassDiagram& diagram) {
  std::set<ConfigVector> out;
  for (const auto& cls : diagram.classes) {
    auto assocs = diagram.outgoing_assocs(cls);
    if (assocs.empty()) {
      continue;
    }
    std::vector<ConfigVector> partial{ConfigVector{cls, {}}};
    for (const auto* a : assocs) {
      std::vector<Bucket> domain{Bucket::Zero, Bucket::One};
      if (!has_upper_bound_one(a->mult)) {
        domain.push_back(Bucket::Many);
      }
      std::vector<ConfigVector> next;
      for (const auto& p : partial) {
        for (Bucket b : domain) {
          ConfigVector v = p;
          v.counts[a->name] = b;
          next.push_back(std::move(v));
        }
      }
      partial = std::move(next);
    }
    out.insert(partial.begin(), partial.end());
  }
  return out;
}

ConfigVector config_of(const ClassDiagram& diagram, const ObjectGraph& graph, const std::string& object) {
  ConfigVector v;
  v.cls = graph.class_of(object).value_or("");
  for (const auto* a : diagram.outgoing_assocs(v.cls)) {
    v.counts[a->name] = bucket_for(graph.out_degree(object, a->name));
  }
  return v;
}

StructureCoverage empty_structure_coverage(const ClassDiagram& diagram) {
  StructureCoverage cov;
  cov.diagram = diagram.name;
  cov.feasible = feasible_configs(diagram);
  for (const auto& p : diagram.patterns) {
    cov.patterns.insert(p.name);
  }
  return cov;
}

StructureReplay replay_objects(const ClassDiagram& diagram, const Trace& trace, StructureOptions options) {
  StructureReplay result;
  ObjectGraph& graph = result.graph;
  StructureCoverage& cov = result.coverage;
  cov = empty_structure_coverage(diagram);

  std::map<std::string, std::vector<const Association*>> assocs_of;
  for (const auto& cls : diagram.classes) {
    assocs_of[cls] = diagram.outgoing_assocs(cls);
  }
  auto record = [&](const std::string& object) {
    const std::string& cls = graph.objects().at(object);
    const auto& assocs = assocs_of[cls];
    if (assocs.empty()) {
      return;
    }
    ConfigVector v{cls, {}};
    for (const auto* a : assocs) {
      v.counts[a->name] = bucket_for(graph.out_degree(object, a->name));
    }
    cov.covered.insert(std::move(v));
  };
  auto check_patterns = [&] {
    for (const auto& p : diagram.patterns) {
      if (!cov.covered_patterns.count(p.name) && pattern_occurs(diagram, graph, p)) {
        cov.covered_patterns.insert(p.name);
      }
    }
  };
  auto violation = [&](std::size_t pos, const TraceEvent& ev, const std::string& what) {
    cov.violations.push_back("event " + std::to_string(pos) + " (" + render_event(ev) + "): " + what);
  };

  for (std::size_t pos = 0; pos < trace.events.size(); ++pos) {
    const auto& ev = trace.events[pos];
    switch (ev.kind) {
    case EventKind::New: {
      const auto& id = ev.args[0];
      const auto& cls = ev.args[1];
      if (!diagram.has_class(cls)) {
        violation(pos, ev, "unknown class " + cls);
        break;
      }
      if (!graph.add_object(id, cls)) {
        violation(pos, ev, "object " + id + " already exists");
        break;
      }
      if (!options.ignore_initial_config) {
        record(id);
      }
      check_patterns();
      break;
    }
    case EventKind::Link:
    case EventKind::Unlink: {
      Link link{ev.args[0], ev.args[1], ev.args[2]};
      const Association* assoc = diagram.find_assoc(link.assoc);
      auto src_cls = graph.class_of(link.src);
      auto dst_cls = graph.class_of(link.dst);
      if (!assoc) {
        violation(pos, ev, "unknown association " + link.assoc);
        break;
      }
      if (!src_cls || !dst_cls) {
        violation(pos, ev, "unknown object " + (!src_cls ? link.src : link.dst));
        break;
      }
      if (ev.kind == EventKind::Unlink) {
        if (!graph.remove_link(link)) {
          violation(pos, ev, "no such link");
          break;
        }
        record(link.src);
        break;
      }
      if (!diagram.conforms(*src_cls, assoc->src)) {
        violation(pos, ev, link.src + " is a " + *src_cls + ", not a " + assoc->src);
        break;
      }
      if (!diagram.conforms(*dst_cls, assoc->dst)) {
        violation(pos, ev, link.dst + " is a " + *dst_cls + ", not a " + assoc->dst);
        break;
      }
      if (has_upper_bound_one(assoc->mult) && graph.out_degree(link.src, link.assoc) >= 1) {
        violation(pos, ev, "multiplicity " + std::string(to_string(assoc->mult)) + " of " + link.assoc + " exceeded");
        break;
      }
      graph.add_link(link);
      record(link.src);
      check_patterns();
      break;
    }
    default:
      break;
    }
  }

  for (const auto& [object, cls] : graph.objects()) {
    for (const auto* a : assocs_of[cls]) {
      if (has_lower_bound_one(a->mult) && graph.out_degree(object, a->name) == 0) {
        cov.warnings.push_back("object " + object + " ends with no " + a->name + " link (multiplicity " +
                               std::string(to_string(a->mult)) + ")");
      }
    }
  }
  return result;
}

namespace {

struct CompiledPattern {
  std::vector<std::vector<std::string>> candidates; // per node, sorted object ids
  std::vector<std::map<std::string, std::size_t>> out_need;
  std::vector<std::map<std::string, std::size_t>> in_need;
  std::vector<std::size_t> edge_src;
  std::vector<std::size_t> edge_dst;
  std::vector<std::string> edge_assoc;
};

CompiledPattern compile(const ClassDiagram& diagram, const ObjectGraph& graph, const Pattern& pattern) {
  CompiledPattern cp;
  std::map<std::string, std::size_t> node_index;
  for (const auto& n : pattern.nodes) {
    if (!diagram.has_class(n.cls)) {
      throw PatternError("pattern " + pattern.name + ": unknown class " + n.cls);
    }
    if (!node_index.emplace(n.id, node_index.size()).second) {
      throw PatternError("pattern " + pattern.name + ": duplicate node " + n.id);
    }
  }
  std::set<std::tuple<std::size_t, std::string, std::size_t>> seen_edges;
  cp.out_need.resize(pattern.nodes.size());
  cp.in_need.resize(pattern.nodes.size());
  for (const auto& e : pattern.edges) {
    if (!diagram.find_assoc(e.assoc)) {
      throw PatternError("pattern " + pattern.name + ": unknown association " + e.assoc);
    }
    auto s = node_index.find(e.src);
    auto d = node_index.find(e.dst);
    if (s == node_index.end() || d == node_index.end()) {
      throw PatternError("pattern " + pattern.name + ": unknown node " + (s == node_index.end() ? e.src : e.dst));
    }
    // A repeated edge is the same constraint; counting it twice would make
    // the degree pruning demand links that need not exist.
    if (!seen_edges.emplace(s->second, e.assoc, d->second).second) {
      continue;
    }
    cp.edge_src.push_back(s->second);
    cp.edge_dst.push_back(d->second);
    cp.edge_assoc.push_back(e.assoc);
    ++cp.out_need[s->second][e.assoc];
    ++cp.in_need[d->second][e.assoc];
  }

  for (std::size_t k = 0; k < pattern.nodes.size(); ++k) {
    const auto& cls = pattern.nodes[k].cls;
    std::vector<std::string> cands;
    for (const auto& [object, object_cls] : graph.objects()) {
      if (!diagram.conforms(object_cls, cls)) {
        continue;
      }
      bool degree_ok = true;
      for (const auto& [assoc, need] : cp.out_need[k]) {
        degree_ok = degree_ok && graph.out_degree(object, assoc) >= need;
      }
      for (const auto& [assoc, need] : cp.in_need[k]) {
        degree_ok = degree_ok && graph.in_degree(object, assoc) >= need;
      }
      if (degree_ok) {
        cands.push_back(object);
      }
    }
    cp.candidates.push_back(std::move(cands));
  }
  return cp;
}

// Assigns nodes in declaration order; candidates are iterated in sorted
// order so embeddings come out lexicographically.
void search(const CompiledPattern& cp, const ObjectGraph& graph, Embedding& assignment, std::set<std::string>& used,
            const std::function<bool(const Embedding&)>& emit, bool& stop) {
  std::size_t k = assignment.size();
  if (k == cp.candidates.size()) {
    stop = !emit(assignment);
    return;
  }
  for (const auto& object : cp.candidates[k]) {
    if (used.count(object)) {
      continue;
    }
    assignment.push_back(object);
    bool ok = true;
    for (std::size_t e = 0; ok && e < cp.edge_src.size(); ++e) {
      std::size_t s = cp.edge_src[e];
      std::size_t d = cp.edge_dst[e];
      if (std::max(s, d) != k) {
        continue;
      }
      ok = graph.has_link(Link{assignment[s], cp.edge_assoc[e], assignment[d]});
    }
    if (ok) {
      used.insert(object);
      search(cp, graph, assignment, used, emit, stop);
      used.erase(object);
    }
    assignment.pop_back();
    if (stop) {
      return;
    }
  }
}

void enumerate(const ClassDiagram& diagram, const ObjectGraph& graph, const Pattern& pattern,
               const std::function<bool(const Embedding&)>& emit) {
  CompiledPattern cp = compile(diagram, graph, pattern);
  if (pattern.nodes.empty()) {
    return;
  }
  Embedding assignment;
  std::set<std::string> used;
  bool stop = false;
  search(cp, graph, assignment, used, emit, stop);
}

} // namespace

std::vector<Embedding> match_pattern(const ClassDiagram& diagram, const ObjectGraph& graph, const Pattern& pattern) {
  std::vector<Embedding> out;
  enumerate(diagram, graph, pattern, [&](const Embedding& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

bool pattern_occurs(const ClassDiagram& diagram, const ObjectGraph& graph, const Pattern& pattern) {
  bool found = false;
  enumerate(diagram, graph, pattern, [&](const Embedding&) {
    found = true;
    return false;
  });
  return found;
}

std::string render_config(const ConfigVector& config) {
  std::string out = token::quote(config.cls);
  for (const auto& [assoc, bucket] : config.counts) {
    out.push_back(' ');
    out += token::quote(assoc);
    out.push_back('=');
    out += to_string(bucket);
  }
  return out;
}

std::optional<ConfigVector> parse_config(std::string_view text, std::string& error) {
  std::size_t pos = 0;
  auto cls = token::scan(text, pos, error);
  if (!cls) {
    return std::nullopt;
  }
  ConfigVector v{std::move(cls->value), {}};
  while (pos < text.size()) {
    if (text[pos] != ' ') {
      error = "expected space in configuration";
      return std::nullopt;
    }
    ++pos;
    auto assoc = token::scan(text, pos, error);
    if (!assoc) {
      return std::nullopt;
    }
    if (pos >= text.size() || text[pos] != '=') {
      error = "expected '=' after association " + assoc->value;
      return std::nullopt;
    }
    ++pos;
    std::size_t end = text.find(' ', pos);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    auto bucket = parse_bucket(text.substr(pos, end - pos));
    if (!bucket) {
      error = "bad bucket '" + std::string(text.substr(pos, end - pos)) + "'";
      return std::nullopt;
    }
    if (!v.counts.emplace(std::move(assoc->value), *bucket).second) {
      error = "duplicate association in configuration";
      return std::nullopt;
    }
    pos = end;
  }
  return v;
}

} // namespace dcov
