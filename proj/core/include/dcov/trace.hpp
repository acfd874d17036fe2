#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dcov {

/// Abstract monotone time. Units are whatever the producer chooses.
using Timestamp = std::uint64_t;

enum class EventKind { State, Event, Branch, Transition, Send, New, Link, Unlink };

std::string_view to_string(EventKind kind) noexcept;
std::optional<EventKind> parse_event_kind(std::string_view text) noexcept;

/// Number of positional arguments an event of `kind` carries.
std::size_t arity(EventKind kind) noexcept;

using Attributes = std::map<std::string, std::string>;

struct TraceEvent {
  Timestamp ts = 0;
  EventKind kind = EventKind::State;
  std::vector<std::string> args;
  Attributes attrs;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// Events in file order; timestamps are non-decreasing.
struct Trace {
  std::vector<TraceEvent> events;
  std::string source;
};

/// Empty string when (kind, args, attrs) form a well-formed event, otherwise
/// the reason it is not.
std::string check_event(EventKind kind, const std::vector<std::string>& args, const Attributes& attrs);

/// Parses the line-oriented trace format. Throws ParseError with the 1-based
/// line number of the first offending line.
Trace parse_trace(std::string_view text, std::string source = {});

/// Reads and parses a trace file; the path becomes the trace source.
Trace read_trace_file(const std::filesystem::path& path);

/// One event line without the trailing newline.
std::string render_event(const TraceEvent& event);
std::string render_trace(const Trace& trace);

/// Serialized writer for trace events. Every emit produces exactly one line
/// and a timestamp no smaller than the previous one on this sink, so
/// concurrent emitters always produce a parseable trace.
class TraceSink {
public:
  using Clock = std::function<Timestamp()>;

  /// Without a clock, timestamps count emitted events (0, 1, 2, ...).
  explicit TraceSink(std::ostream& out, Clock clock = {});
  explicit TraceSink(const std::filesystem::path& path, Clock clock = {});

  TraceSink(const TraceSink&) = delete;
  TraceSink& operator=(const TraceSink&) = delete;

  /// Throws EmitError on a malformed event (nothing is written) or when the
  /// underlying stream fails.
  Timestamp emit(EventKind kind, std::vector<std::string> args, Attributes attrs = {});

  std::size_t emitted() const;

private:
  std::ofstream owned_;
  std::ostream* out_;
  Clock clock_;
  mutable std::mutex mutex_;
  Timestamp last_ = 0;
  std::size_t count_ = 0;
};

} // namespace dcov
