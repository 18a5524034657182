// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/outer_syntax.hpp"

#include <cctype>

#include "fvel/errors.hpp"

namespace fvel {

namespace {

constexpr std::string_view kOpenUtf8 = "\xe2\x80\xb9";   // U+2039
constexpr std::string_view kCloseUtf8 = "\xe2\x80\xba";  // U+203A
constexpr std::string_view kOpenAscii = "\\<open>";
constexpr std::string_view kCloseAscii = "\\<close>";

bool starts_with(std::string_view s, std::size_t i, std::string_view pat) {
  return s.size() - i >= pat.size() && s.compare(i, pat.size(), pat) == 0;
}

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Region> scan_regions(std::string_view src, bool strict) {
  std::vector<Region> regions;
  std::size_t i = 0;
  std::size_t code_begin = 0;

  auto flush_code = [&](std::size_t upto) {
    if (upto > code_begin) regions.push_back({RegionKind::Code, code_begin, upto});
  };

  while (i < src.size()) {
    if (starts_with(src, i, "(*")) {
      flush_code(i);
      std::size_t open = i;
      int depth = 1;
      i += 2;
      while (i < src.size() && depth > 0) {
        if (starts_with(src, i, "(*")) {
          ++depth;
          i += 2;
        } else if (starts_with(src, i, "*)")) {
          --depth;
          i += 2;
        } else {
          ++i;
        }
      }
      if (depth > 0 && strict)
        throw UnbalancedDelimiterError("unterminated comment", open);
      regions.push_back({RegionKind::Comment, open, i});
      code_begin = i;
    } else if (src[i] == '"' || src[i] == '`') {
      const char quote = src[i];
      flush_code(i);
      std::size_t open = i;
      ++i;
      bool closed = false;
      while (i < src.size()) {
        if (src[i] == '\\' && i + 1 < src.size()) {
          i += 2;
        } else if (src[i] == quote) {
          ++i;
          closed = true;
          break;
        } else {
          ++i;
        }
      }
      if (!closed && strict)
        throw UnbalancedDelimiterError(
            quote == '"' ? "unterminated string" : "unterminated alt string", open);
      regions.push_back(
          {quote == '"' ? RegionKind::String : RegionKind::AltString, open, i});
      code_begin = i;
    } else if (starts_with(src, i, kOpenUtf8) || starts_with(src, i, kOpenAscii)) {
      flush_code(i);
      std::size_t open = i;
      int depth = 0;
      while (i < src.size()) {
        if (starts_with(src, i, kOpenUtf8)) {
          ++depth;
          i += kOpenUtf8.size();
        } else if (starts_with(src, i, kOpenAscii)) {
          ++depth;
          i += kOpenAscii.size();
        } else if (starts_with(src, i, kCloseUtf8)) {
          --depth;
          i += kCloseUtf8.size();
          if (depth == 0) break;
        } else if (starts_with(src, i, kCloseAscii)) {
          --depth;
          i += kCloseAscii.size();
          if (depth == 0) break;
        } else {
          ++i;
        }
      }
      if (depth > 0 && strict)
        throw UnbalancedDelimiterError("unterminated cartouche", open);
      regions.push_back({RegionKind::Cartouche, open, i});
      code_begin = i;
    } else {
      ++i;
    }
  }
  flush_code(src.size());
  return regions;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> tokens;
  const auto regions = scan_regions(src, /*strict=*/false);

  int line = 1;
  std::size_t line_pos = 0;  // next byte whose newlines are uncounted
  auto line_at = [&](std::size_t pos) {
    for (; line_pos < pos && line_pos < src.size(); ++line_pos)
      if (src[line_pos] == '\n') ++line;
    return line;
  };

  for (const auto& r : regions) {
    if (r.kind == RegionKind::Comment) continue;
    if (r.kind == RegionKind::String || r.kind == RegionKind::AltString) {
      tokens.push_back({Token::Kind::Quoted, r.begin, r.end,
                        src.substr(r.begin, r.end - r.begin), line_at(r.begin)});
      continue;
    }
    if (r.kind == RegionKind::Cartouche) {
      tokens.push_back({Token::Kind::Cartouche, r.begin, r.end,
                        src.substr(r.begin, r.end - r.begin), line_at(r.begin)});
      continue;
    }
    std::size_t i = r.begin;
    while (i < r.end) {
      char c = src[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      if (is_word_char(c)) {
        while (i < r.end) {
          if (is_word_char(src[i])) {
            ++i;
          } else if (src[i] == '.' && i + 1 < r.end && is_word_char(src[i + 1]) &&
                     i > start) {
            ++i;  // glue qualified names: Foo.Bar is one word
          } else {
            break;
          }
        }
        tokens.push_back({Token::Kind::Word, start, i, src.substr(start, i - start),
                          line_at(start)});
      } else {
        ++i;
        tokens.push_back({Token::Kind::Symbol, start, i, src.substr(start, 1),
                          line_at(start)});
      }
    }
  }
  return tokens;
}

std::string unquote(std::string_view token_text) {
  if (token_text.size() >= 2 && token_text.front() == '"' && token_text.back() == '"') {
    std::string_view inner = token_text.substr(1, token_text.size() - 2);
    std::string out;
    out.reserve(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '\\' && i + 1 < inner.size() &&
          (inner[i + 1] == '"' || inner[i + 1] == '\\')) {
        out.push_back(inner[++i]);
      } else {
        out.push_back(inner[i]);
      }
    }
    return out;
  }
  return std::string(token_text);
}

bool contains_cheating_token(std::string_view step) {
  for (const auto& tok : tokenize(step)) {
    if (tok.kind == Token::Kind::Word && (tok.text == "sorry" || tok.text == "oops"))
      return true;
  }
  return false;
}

}  // namespace fvel
