#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "dcov/design.hpp"
#include "dcov/trace.hpp"

namespace dcov {

struct MscCoverage {
  std::string chart;

  std::set<std::string> tuples; // all EventIds of the chart

  bool covered = false;      // instances >= 1
  std::size_t instances = 0; // complete order-respecting matches
  std::size_t resets = 0;    // order violations that restarted the match
  /// Tuples of the current partial match. After a completed instance this is
  /// the full chart until the next chart message starts a new run.
  std::set<std::string> matched;
  std::vector<std::string> warnings;

  friend bool operator==(const MscCoverage&, const MscCoverage&) = default;
};

/// Trace positions consumed by the most recent complete instance, in order.
struct MscMatchLog {
  std::vector<std::size_t> last_instance;
  std::vector<std::string> last_instance_ids;
};

MscCoverage empty_msc_coverage(const MscChart& chart);

/// Matches send events against the chart's partial order. A send that is a
/// chart tuple but not currently enabled resets the partial match and is then
/// offered again to the fresh match. Sends that are not chart tuples are
/// ignored.
MscCoverage match_msc(const MscChart& chart, const Trace& trace, MscMatchLog* log = nullptr);

} // namespace dcov
