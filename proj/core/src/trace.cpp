#include "dcov/trace.hpp"

#include <array>
#include <charconv>
#include <sstream>

#include "dcov/error.hpp"
#include "dcov/token.hpp"

namespace dcov {

namespace {

constexpr std::array<std::string_view, 8> kKindNames = {
    "state", "event", "branch", "transition", "send", "new", "link", "unlink"};

bool is_blank(char c) { return c == ' ' || c == '\t'; }

std::size_t skip_blanks(std::string_view line, std::size_t pos) {
  while (pos < line.size() && is_blank(line[pos])) {
    ++pos;
  }
  return pos;
}

TraceEvent parse_event_line(std::string_view line, std::size_t line_no) {
  TraceEvent event;
  std::size_t pos = skip_blanks(line, 0);

  std::size_t ts_end = pos;
  while (ts_end < line.size() && line[ts_end] >= '0' && line[ts_end] <= '9') {
    ++ts_end;
  }
  if (ts_end == pos || (ts_end < line.size() && !is_blank(line[ts_end]))) {
    throw ParseError(line_no, "timestamp is not a decimal unsigned integer");
  }
  auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + ts_end, event.ts);
  if (ec != std::errc{} || ptr != line.data() + ts_end) {
    throw ParseError(line_no, "timestamp out of range");
  }

  pos = skip_blanks(line, ts_end);
  std::size_t kind_end = pos;
  while (kind_end < line.size() && !is_blank(line[kind_end])) {
    ++kind_end;
  }
  if (kind_end == pos) {
    throw ParseError(line_no, "missing event kind");
  }
  auto kind = parse_event_kind(line.substr(pos, kind_end - pos));
  if (!kind) {
    throw ParseError(line_no, "unknown event kind '" + std::string(line.substr(pos, kind_end - pos)) + "'");
  }
  event.kind = *kind;

  pos = skip_blanks(line, kind_end);
  std::string error;
  while (pos < line.size()) {
    auto tok = token::scan(line, pos, error);
    if (!tok) {
      throw ParseError(line_no, error);
    }
    if (pos < line.size() && line[pos] == '=' && !tok->quoted) {
      ++pos;
      auto value = token::scan(line, pos, error);
      if (!value) {
        throw ParseError(line_no, "attribute '" + tok->value + "': " + error);
      }
      if (!event.attrs.emplace(std::move(tok->value), std::move(value->value)).second) {
        throw ParseError(line_no, "duplicate attribute key");
      }
    } else {
      if (!event.attrs.empty()) {
        throw ParseError(line_no, "argument after attribute");
      }
      event.args.push_back(std::move(tok->value));
    }
    if (pos < line.size() && !is_blank(line[pos])) {
      throw ParseError(line_no, std::string("unexpected character '") + line[pos] + "'");
    }
    pos = skip_blanks(line, pos);
  }

  std::string problem = check_event(event.kind, event.args, event.attrs);
  if (!problem.empty()) {
    throw ParseError(line_no, problem);
  }
  return event;
}

} // namespace

std::string_view to_string(EventKind kind) noexcept {
  return kKindNames[static_cast<std::size_t>(kind)];
}

std::optional<EventKind> parse_event_kind(std::string_view text) noexcept {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == text) {
      return static_cast<EventKind>(i);
    }
  }
  return std::nullopt;
}

std::size_t arity(EventKind kind) noexcept {
  switch (kind) {
  case EventKind::State:
  case EventKind::Event:
  case EventKind::Branch:
  case EventKind::Transition:
    return 1;
  case EventKind::New:
    return 2;
  case EventKind::Send:
  case EventKind::Link:
  case EventKind::Unlink:
    return 3;
  }
  return 0;
}

std::string check_event(EventKind kind, const std::vector<std::string>& args, const Attributes& attrs) {
  if (args.size() != arity(kind)) {
    return std::string(to_string(kind)) + " expects " + std::to_string(arity(kind)) + " argument(s), got " +
           std::to_string(args.size());
  }
  for (const auto& arg : args) {
    if (!token::is_valid(arg)) {
      return "empty token or control character in argument";
    }
  }
  for (const auto& [key, value] : attrs) {
    if (!token::is_bare(key)) {
      return "attribute key '" + key + "' is not a bare token";
    }
    if (!token::is_valid(value)) {
      return "empty token or control character in attribute '" + key + "'";
    }
  }
  return {};
}

Trace parse_trace(std::string_view text, std::string source) {
  Trace trace;
  trace.source = std::move(source);
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool have_last = false;
  Timestamp last = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.remove_suffix(1);
    }
    if (skip_blanks(line, 0) == line.size() || line.front() == '#') {
      continue;
    }
    TraceEvent event = parse_event_line(line, line_no);
    if (have_last && event.ts < last) {
      throw ParseError(line_no, "timestamp " + std::to_string(event.ts) + " decreases (previous " +
                                    std::to_string(last) + ")");
    }
    have_last = true;
    last = event.ts;
    trace.events.push_back(std::move(event));
  }
  return trace;
}

Trace read_trace_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(0, "cannot open trace file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_trace(buffer.str(), path.string());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), path.string() + ": " + e.reason());
  }
}

std::string render_event(const TraceEvent& event) {
  std::string line = std::to_string(event.ts);
  line.push_back(' ');
  line += to_string(event.kind);
  for (const auto& arg : event.args) {
    line.push_back(' ');
    line += token::quote(arg);
  }
  for (const auto& [key, value] : event.attrs) {
    line.push_back(' ');
    line += key;
    line.push_back('=');
    line += token::quote(value);
  }
  return line;
}

std::string render_trace(const Trace& trace) {
  std::string out;
  for (const auto& event : trace.events) {
    out += render_event(event);
    out.push_back('\n');
  }
  return out;
}

} // namespace dcov
