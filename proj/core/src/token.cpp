#include "dcov/token.hpp"

namespace dcov::token {

bool is_bare_char(char c) noexcept {
  if ((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
    return true;
  }
  switch (c) {
  case '_':
  case '.':
  case '?':
  case '*':
  case '+':
  case '-':
    return true;
  default:
    return false;
  }
}

bool is_bare(std::string_view text) noexcept {
  if (text.empty()) {
    return false;
  }
  for (char c : text) {
    if (!is_bare_char(c)) {
      return false;
    }
  }
  return true;
}

bool is_valid(std::string_view text) noexcept {
  if (text.empty()) {
    return false;
  }
  for (char c : text) {
    auto u = static_cast<unsigned char>(c);
    if (u < 0x20 || u == 0x7f) {
      return false;
    }
  }
  return true;
}

std::string quote(std::string_view text) {
  if (is_bare(text)) {
    return std::string(text);
  }
  std::string out;
  out.reserve(text.size() + 2);
  out.push_back('"');
  for (char c : text) {
    if (c == '"' || c == '\\') {
      out.push_back('\\');
    }
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i != 0) {
      out.push_back(' ');
    }
    out += quote(tokens[i]);
  }
  return out;
}

std::optional<ScanResult> scan(std::string_view text, std::size_t& pos, std::string& error) {
  if (pos >= text.size()) {
    error = "expected token";
    return std::nullopt;
  }
  ScanResult result;
  if (text[pos] == '"') {
    result.quoted = true;
    std::size_t i = pos + 1;
    for (;;) {
      if (i >= text.size()) {
        error = "unterminated quote";
        return std::nullopt;
      }
      char c = text[i];
      if (c == '"') {
        ++i;
        break;
      }
      if (c == '\\') {
        if (i + 1 >= text.size()) {
          error = "unterminated quote";
          return std::nullopt;
        }
        char next = text[i + 1];
        if (next != '"' && next != '\\') {
          error = std::string("invalid escape '\\") + next + "'";
          return std::nullopt;
        }
        result.value.push_back(next);
        i += 2;
        continue;
      }
      auto u = static_cast<unsigned char>(c);
      if (u < 0x20 || u == 0x7f) {
        error = "control character in quoted token";
        return std::nullopt;
      }
      result.value.push_back(c);
      ++i;
    }
    if (result.value.empty()) {
      error = "empty token";
      return std::nullopt;
    }
    pos = i;
    return result;
  }

  std::size_t i = pos;
  while (i < text.size() && is_bare_char(text[i])) {
    if (text[i] == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      break;
    }
    ++i;
  }
  if (i == pos) {
    error = std::string("unexpected character '") + text[pos] + "'";
    return std::nullopt;
  }
  result.value.assign(text.substr(pos, i - pos));
  pos = i;
  return result;
}

std::optional<std::vector<std::string>> split(std::string_view text, std::string& error) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto tok = scan(text, pos, error);
    if (!tok) {
      return std::nullopt;
    }
    out.push_back(std::move(tok->value));
    if (pos < text.size()) {
      if (text[pos] != ' ') {
        error = "expected space between tokens";
        return std::nullopt;
      }
      ++pos;
      if (pos == text.size()) {
        error = "trailing space";
        return std::nullopt;
      }
    }
  }
  return out;
}

} // namespace dcov::token
