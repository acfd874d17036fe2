#include <algorithm>

#include "dcov/error.hpp"
#include "dcov/trace.hpp"

namespace dcov {

TraceSink::TraceSink(std::ostream& out, Clock clock) : out_(&out), clock_(std::move(clock)) {}

TraceSink::TraceSink(const std::filesystem::path& path, Clock clock)
    : owned_(path, std::ios::binary | std::ios::trunc), out_(&owned_), clock_(std::move(clock)) {
  if (!owned_) {
    throw EmitError("cannot open trace sink '" + path.string() + "'");
  }
}

Timestamp TraceSink::emit(EventKind kind, std::vector<std::string> args, Attributes attrs) {
  std::string problem = check_event(kind, args, attrs);
  if (!problem.empty()) {
    throw EmitError(problem);
  }
  TraceEvent event{0, kind, std::move(args), std::move(attrs)};

  std::lock_guard lock(mutex_);
  Timestamp now = clock_ ? clock_() : static_cast<Timestamp>(count_);
  event.ts = count_ == 0 ? now : std::max(now, last_);
  std::string line = render_event(event);
  line.push_back('\n');
  out_->write(line.data(), static_cast<std::streamsize>(line.size()));
  out_->flush();
  if (!*out_) {
    throw EmitError("trace sink write failed");
  }
  last_ = event.ts;
  ++count_;
  return event.ts;
}

std::size_t TraceSink::emitted() const {
  std::lock_guard lock(mutex_);
  return count_;
}

} // namespace dcov
