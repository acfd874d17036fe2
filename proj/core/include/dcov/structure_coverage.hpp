#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dcov/design.hpp"
#include "dcov/trace.hpp"

namespace dcov {

/// Link count of one association on one object, bucketed. Many is only
/// reachable on associations with an unbounded upper end.
enum class Bucket { Zero, One, Many };

std::string_view to_string(Bucket b) noexcept;
std::optional<Bucket> parse_bucket(std::string_view text) noexcept;
Bucket bucket_for(std::size_t links) noexcept;

/// Per-class configuration: one bucket per association the class can be the
/// source of (inherited associations included), keyed by association name.
struct ConfigVector {
  std::string cls;
  std::map<std::string, Bucket> counts;

  friend bool operator==(const ConfigVector&, const ConfigVector&) = default;
  friend auto operator<=>(const ConfigVector&, const ConfigVector&) = default;
};

struct Link {
  std::string src;
  std::string assoc;
  std::string dst;

  friend bool operator==(const Link&, const Link&) = default;
  friend auto operator<=>(const Link&, const Link&) = default;
};

/// Live objects and association links rebuilt from new/link/unlink events.
class ObjectGraph {
public:
  const std::map<std::string, std::string>& objects() const { return objects_; }
  const std::multiset<Link>& links() const { return links_; }

  std::optional<std::string> class_of(std::string_view object) const;
  std::size_t out_degree(const std::string& object, const std::string& assoc) const;
  std::size_t in_degree(const std::string& object, const std::string& assoc) const;
  bool has_link(const Link& link) const { return links_.count(link) != 0; }

  bool add_object(std::string id, std::string cls);
  void add_link(const Link& link);
  bool remove_link(const Link& link);

private:
  using Key = std::pair<std::string, std::string>;
  std::map<std::string, std::string> objects_;
  std::multiset<Link> links_;
  std::map<Key, std::size_t> out_;
  std::map<Key, std::size_t> in_;
};

struct StructureCoverage {
  std::string diagram;

  std::set<ConfigVector> feasible;
  std::set<ConfigVector> covered;

  std::set<std::string> patterns;
  std::set<std::string> covered_patterns;

  /// Type, multiplicity and reference errors; each offending event is skipped.
  std::vector<std::string> violations;
  /// Unmet lower bounds at the end of the trace.
  std::vector<std::string> warnings;

  friend bool operator==(const StructureCoverage&, const StructureCoverage&) = default;
};

struct StructureOptions {
  /// Do not count the all-zero configuration an object has when created.
  bool ignore_initial_config = false;
};

struct StructureReplay {
  ObjectGraph graph;
  StructureCoverage coverage;
};

/// Every configuration a class can take, over classes that have at least one
/// outgoing association.
std::set<ConfigVector> feasible_configs(const ClassDiagram& diagram);

/// Current configuration of `object`, computed from the graph.
ConfigVector config_of(const ClassDiagram& diagram, const ObjectGraph& graph, const std::string& object);

StructureCoverage empty_structure_coverage(const ClassDiagram& diagram);

/// Replays new/link/unlink events in order, recording the source object's
/// configuration after every change. Patterns declared in the diagram count
/// as covered once they occur in the live graph.
StructureReplay replay_objects(const ClassDiagram& diagram, const Trace& trace, StructureOptions options = {});

/// Objects assigned to the pattern's nodes, in node declaration order.
using Embedding = std::vector<std::string>;

/// All injective node-to-object mappings that respect class conformance and
/// every pattern edge, ordered lexicographically by assignment. Throws
/// PatternError if the pattern references unknown classes, associations or
/// nodes.
std::vector<Embedding> match_pattern(const ClassDiagram& diagram, const ObjectGraph& graph, const Pattern& pattern);

/// True when at least one embedding exists; stops at the first.
bool pattern_occurs(const ClassDiagram& diagram, const ObjectGraph& graph, const Pattern& pattern);

/// Canonical text for a configuration, e.g. `Office fwd_mobile=1 fwd_vm=0`.
std::string render_config(const ConfigVector& config);
std::optional<ConfigVector> parse_config(std::string_view text, std::string& error);

} // namespace dcov
