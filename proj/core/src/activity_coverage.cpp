#include "dcov/activity_coverage.hpp"

#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace dcov {

namespace {

struct Edge {
  std::string source;
  std::string next;
};

struct Pending {
  std::string id;
  const Edge* edge = nullptr;
  bool entry_ok = false;
  std::string entry_problem;
};

} // namespace

ActivityCoverage empty_activity_coverage(const ActivityDiagram& diagram) {
  ActivityCoverage cov;
  cov.diagram = diagram.name;
  for (const auto& b : diagram.branches()) {
    cov.branches.insert(b);
  }
  for (const auto& t : diagram.transition_ids()) {
    cov.transitions.insert(t);
  }
  return cov;
}

ActivityCoverage match_activity(const ActivityDiagram& diagram, const Trace& trace) {
  ActivityCoverage cov = empty_activity_coverage(diagram);

  std::unordered_map<std::string, Edge> edges;
  edges.emplace(diagram.entry.id, Edge{std::string(kStartBranch), diagram.entry.next});
  for (const auto& d : diagram.decisions) {
    for (const auto& t : d.outgoing) {
      edges.emplace(t.id, Edge{d.branch, t.next});
    }
  }
  const std::unordered_set<std::string> branches(cov.branches.begin(), cov.branches.end());

  bool first_event = true;
  std::optional<std::string> last_branch; // set only if the previous event was a branch
  std::optional<Pending> pending;

  auto fail_pending = [&](std::string reason) {
    cov.incomplete.push_back({pending->id, pending->entry_ok ? std::move(reason) : pending->entry_problem});
    pending.reset();
  };

  for (const auto& ev : trace.events) {
    if (ev.kind == EventKind::Branch) {
      const std::string& b = ev.args[0];
      if (!branches.count(b)) {
        continue;
      }
      if (pending) {
        if (pending->entry_ok && b == pending->edge->next) {
          cov.covered_transitions.insert(pending->id);
          cov.covered_branches.insert(pending->edge->source);
          pending.reset();
        } else {
          fail_pending("wrong exit branch " + b + ", expected " + pending->edge->next);
        }
      }
      cov.covered_branches.insert(b);
      last_branch = b;
      first_event = false;
    } else if (ev.kind == EventKind::Transition) {
      auto it = edges.find(ev.args[0]);
      if (it == edges.end()) {
        continue;
      }
      if (pending) {
        fail_pending("missing exit branch");
      }
      Pending p{it->first, &it->second, false, {}};
      if (last_branch) {
        p.entry_ok = *last_branch == p.edge->source;
        if (!p.entry_ok) {
          p.entry_problem = "wrong entry branch " + *last_branch + ", expected " + p.edge->source;
        }
      } else if (first_event && p.id == diagram.entry.id) {
        p.entry_ok = true;
      } else {
        p.entry_problem = "missing entry branch";
      }
      pending = std::move(p);
      last_branch.reset();
      first_event = false;
    }
  }
  if (pending) {
    fail_pending("missing exit branch");
  }
  return cov;
}

} // namespace dcov
