// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/c_lexer.hpp"

#include <cctype>

#include "fvel/errors.hpp"

namespace fvel {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Longest-first multi-char operators so rewrites can reason about single
// tokens like "++" or "<<=".
constexpr const char* kOperators[] = {
    "<<=", ">>=", "...", "->", "++", "--", "<<", ">>", "<=", ">=", "==", "!=",
    "&&", "||", "+=", "-=", "*=", "/=", "%=", "&=", "^=", "|=",
};

}  // namespace

std::vector<CToken> c_tokenize(std::string_view src) {
  std::vector<CToken> tokens;
  std::size_t i = 0;
  int line = 1;

  auto push = [&](CToken::Kind kind, std::size_t begin, std::size_t end) {
    tokens.push_back({kind, begin, end, src.substr(begin, end - begin), line});
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == '\n') {
      ++line;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
      while (i < src.size() && src[i] != '\n') ++i;
      continue;
    }
    if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
      std::size_t open = i;
      i += 2;
      while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) {
        if (src[i] == '\n') ++line;
        ++i;
      }
      if (i + 1 >= src.size()) throw LexError("unterminated block comment", open);
      i += 2;
      continue;
    }
    if (c == '#') {
      // Whole directive line, honoring backslash continuations.
      std::size_t begin = i;
      while (i < src.size()) {
        if (src[i] == '\\' && i + 1 < src.size() && src[i + 1] == '\n') {
          ++line;
          i += 2;
          continue;
        }
        if (src[i] == '\n') break;
        ++i;
      }
      push(CToken::Kind::Directive, begin, i);
      continue;
    }
    if (c == '"' || c == '\'') {
      std::size_t begin = i;
      char quote = c;
      ++i;
      bool closed = false;
      while (i < src.size()) {
        if (src[i] == '\\' && i + 1 < src.size()) {
          i += 2;
          continue;
        }
        if (src[i] == '\n') break;  // unterminated on this line
        if (src[i] == quote) {
          ++i;
          closed = true;
          break;
        }
        ++i;
      }
      if (!closed)
        throw LexError(quote == '"' ? "unterminated string literal"
                                    : "unterminated character literal",
                       begin);
      push(quote == '"' ? CToken::Kind::String : CToken::Kind::Char, begin, i);
      continue;
    }
    if (ident_start(c)) {
      std::size_t begin = i;
      while (i < src.size() && ident_char(src[i])) ++i;
      push(CToken::Kind::Identifier, begin, i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && i + 1 < src.size() &&
         std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t begin = i;
      while (i < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '.' ||
              ((src[i] == '+' || src[i] == '-') && i > begin &&
               (src[i - 1] == 'e' || src[i - 1] == 'E' || src[i - 1] == 'p' ||
                src[i - 1] == 'P'))))
        ++i;
      push(CToken::Kind::Number, begin, i);
      continue;
    }
    bool matched = false;
    for (const char* op : kOperators) {
      std::size_t len = std::char_traits<char>::length(op);
      if (src.compare(i, len, op) == 0) {
        push(CToken::Kind::Punct, i, i + len);
        i += len;
        matched = true;
        break;
      }
    }
    if (!matched) {
      push(CToken::Kind::Punct, i, i + 1);
      ++i;
    }
  }
  return tokens;
}

std::vector<std::string> c_function_definition_names(std::string_view src) {
  const auto tokens = c_tokenize(src);
  std::vector<std::string> names;
  int brace_depth = 0;
  int paren_depth = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const CToken& t = tokens[i];
    if (t.kind != CToken::Kind::Punct) continue;
    char c = t.text[0];
    if (c == '(') ++paren_depth;
    if (c == ')' && paren_depth > 0) --paren_depth;
    if (c == '{') {
      if (brace_depth == 0 && paren_depth == 0) {
        // Walk back over ")...(" to the identifier in front of the
        // parameter list; skip K&R-less attribute noise conservatively.
        std::size_t j = i;
        int depth = 0;
        bool saw_parens = false;
        while (j-- > 0) {
          if (tokens[j].kind == CToken::Kind::Punct) {
            char p = tokens[j].text[0];
            if (p == ')') {
              ++depth;
              saw_parens = true;
            } else if (p == '(') {
              if (--depth == 0) break;
            } else if (depth == 0) {
              break;  // `= {` initializers and the like
            }
          }
        }
        if (saw_parens && depth == 0 && j > 0 &&
            tokens[j - 1].kind == CToken::Kind::Identifier)
          names.emplace_back(tokens[j - 1].text);
      }
      ++brace_depth;
    }
    if (c == '}' && brace_depth > 0) --brace_depth;
  }
  return names;
}

}  // namespace fvel
