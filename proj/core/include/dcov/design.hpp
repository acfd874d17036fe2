#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcov {

// Element structs carry the 1-based source line they were declared on (0 when
// built programmatically). Lines are informational and excluded from ==.

struct Transition {
  std::string from;
  std::string to;
  std::string event;
  std::size_t line = 0;

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.from == b.from && a.to == b.to && a.event == b.event;
  }
  friend auto operator<=>(const Transition& a, const Transition& b) {
    if (auto c = a.from <=> b.from; c != 0) return c;
    if (auto c = a.to <=> b.to; c != 0) return c;
    return a.event <=> b.event;
  }
};

/// Flat, deterministic state machine given as transition tuples.
struct Statechart {
  std::string name;
  std::string initial;
  std::vector<Transition> transitions;
  std::size_t line = 0;

  /// Initial state first, then states in order of first appearance.
  std::vector<std::string> states() const;
  /// Event names in order of first appearance.
  std::vector<std::string> events() const;
};

struct BranchTransition {
  std::string id;
  std::string next;
  std::size_t line = 0;
};

struct Decision {
  std::string branch;
  std::vector<BranchTransition> outgoing;
  std::size_t line = 0;
};

inline constexpr std::string_view kStartBranch = "Start";
inline constexpr std::string_view kEndBranch = "End";

struct ActivityDiagram {
  std::string name;
  BranchTransition entry; // leaves the Start pseudo-branch
  std::vector<Decision> decisions;
  std::size_t line = 0;

  /// Start, the decisions in declaration order, then End.
  std::vector<std::string> branches() const;
  /// Entry transition first, then decision transitions in declaration order.
  std::vector<std::string> transition_ids() const;
  /// Source branch of a transition id, if declared.
  std::optional<std::string> source_of(std::string_view id) const;
  const BranchTransition* find_transition(std::string_view id) const;
};

struct SendTuple {
  std::string id;
  std::string sender;
  std::string receiver;
  std::string message;
  std::size_t line = 0;
};

struct Follows {
  std::string first;
  std::string next;
  std::size_t line = 0;
};

struct MscChart {
  std::string name;
  std::vector<SendTuple> sends;
  std::vector<Follows> follows;
  std::size_t line = 0;
};

enum class Multiplicity { ZeroOrOne, ExactlyOne, ZeroOrMany, OneOrMany };

std::string_view to_string(Multiplicity m) noexcept;
std::optional<Multiplicity> parse_multiplicity(std::string_view text) noexcept;
bool has_upper_bound_one(Multiplicity m) noexcept;
bool has_lower_bound_one(Multiplicity m) noexcept;

struct Generalization {
  std::string sub;
  std::string super;
  std::size_t line = 0;
};

struct Association {
  std::string name;
  std::string src;
  std::string dst;
  Multiplicity mult = Multiplicity::ZeroOrOne;
  std::size_t line = 0;
};

struct PatternNode {
  std::string id;
  std::string cls;
  std::size_t line = 0;
};

struct PatternEdge {
  std::string src;
  std::string assoc;
  std::string dst;
  std::size_t line = 0;
};

/// Small object-graph shape searched for at run time.
struct Pattern {
  std::string name;
  std::vector<PatternNode> nodes;
  std::vector<PatternEdge> edges;
  std::size_t line = 0;
};

struct ClassDiagram {
  std::string name;
  std::vector<std::string> classes;
  std::vector<Generalization> isa;
  std::vector<Association> assocs;
  std::vector<Pattern> patterns;
  std::size_t line = 0;

  bool has_class(std::string_view cls) const;
  const Association* find_assoc(std::string_view assoc) const;
  const Pattern* find_pattern(std::string_view pattern) const;
  /// True when `cls` is `ancestor` or reaches it through isa edges.
  bool conforms(std::string_view cls, std::string_view ancestor) const;
  /// Associations whose source class `cls` conforms to, in declaration order.
  std::vector<const Association*> outgoing_assocs(std::string_view cls) const;
};

enum class DiagramKind { Statechart, Activity, Msc, ClassDiagram };

std::string_view to_string(DiagramKind kind) noexcept;
std::optional<DiagramKind> parse_diagram_kind(std::string_view text) noexcept;

struct DesignModel {
  std::vector<Statechart> statecharts;
  std::vector<ActivityDiagram> activities;
  std::vector<MscChart> mscs;
  std::vector<ClassDiagram> classdiagrams;

  const Statechart* find_statechart(std::string_view name) const;
  const ActivityDiagram* find_activity(std::string_view name) const;
  const MscChart* find_msc(std::string_view name) const;
  const ClassDiagram* find_classdiagram(std::string_view name) const;
  std::optional<DiagramKind> kind_of(std::string_view name) const;
  /// All diagram names, sorted.
  std::vector<std::string> diagram_names() const;
  bool empty() const;
};

struct Diagnostic {
  std::string diagram;
  std::string element;
  std::string rule;
  std::size_t line = 0;

  /// "<diagram>: <rule> [<element>]", prefixed with the line when known.
  std::string message() const;
};

/// Parses the design DSL without semantic validation. Throws ParseError on
/// syntax errors only.
DesignModel parse_design_syntax(std::string_view text);

/// Parses and validates. Throws ParseError carrying the first diagnostic's
/// line and message when any invariant is violated.
DesignModel parse_design(std::string_view text);

DesignModel read_design_file(const std::string& path);

std::vector<Diagnostic> validate_design(const DesignModel& model);

/// Canonical pretty-printer; parse_design_syntax(render_design(m)) renders
/// back to the same text.
std::string render_design(const DesignModel& model);

/// Hex digest of the canonical rendering; identifies a model in reports.
std::string design_digest(const DesignModel& model);

/// Copy of `model` restricted to the named diagram.
DesignModel filter_design(const DesignModel& model, std::string_view diagram);

} // namespace dcov
