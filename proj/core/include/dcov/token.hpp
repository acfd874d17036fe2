#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Token rules shared by the trace format, the design DSL and the report
// format. A bare token matches [A-Za-z0-9_.?*+-]+; anything else is written
// as a double-quoted string where `"` and `\` are backslash-escaped.
// Control characters are never allowed inside a token.

namespace dcov::token {

bool is_bare_char(char c) noexcept;
bool is_bare(std::string_view text) noexcept;

/// True when `text` is usable as a token: non-empty and free of control
/// characters.
bool is_valid(std::string_view text) noexcept;

/// Renders `text` bare when possible, quoted otherwise.
std::string quote(std::string_view text);

/// Renders tokens separated by single spaces.
std::string join(const std::vector<std::string>& tokens);

struct ScanResult {
  std::string value;
  bool quoted = false;
};

/// Reads one token starting at `pos`, advancing `pos` past it. A bare token
/// stops at the first non-bare character (and before a `->` arrow). Returns
/// nullopt and sets `error` when no token starts at `pos` or a quoted token is
/// malformed.
std::optional<ScanResult> scan(std::string_view text, std::size_t& pos, std::string& error);

/// Splits a space-separated token list (the inverse of join).
std::optional<std::vector<std::string>> split(std::string_view text, std::string& error);

} // namespace dcov::token
