#pragma once

#include <set>
#include <string>
#include <vector>

#include "dcov/design.hpp"
#include "dcov/trace.hpp"

namespace dcov {

struct IncompleteSequence {
  std::string transition;
  std::string reason;

  friend bool operator==(const IncompleteSequence&, const IncompleteSequence&) = default;
};

struct ActivityCoverage {
  std::string diagram;

  std::set<std::string> branches;    // includes Start and End
  std::set<std::string> transitions; // entry transition included

  std::set<std::string> covered_branches;
  std::set<std::string> covered_transitions;
  std::vector<IncompleteSequence> incomplete;

  friend bool operator==(const ActivityCoverage&, const ActivityCoverage&) = default;
};

ActivityCoverage empty_activity_coverage(const ActivityDiagram& diagram);

/// Branch/transition events outside the diagram's alphabet are dropped first.
/// A transition is covered once the remaining stream holds its source branch,
/// the transition, and its target branch back to back. The Start branch may be
/// left implicit when the entry transition is the first event in the stream.
ActivityCoverage match_activity(const ActivityDiagram& diagram, const Trace& trace);

} // namespace dcov
