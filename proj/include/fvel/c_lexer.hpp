// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Minimal C tokenizer with byte offsets, enough to drive token-level
// rewriting: identifiers, numbers, string/char literals, punctuation,
// preprocessor directives. Comments and whitespace are skipped but the
// offsets let rewrites splice the original text.

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fvel {

struct CToken {
  enum class Kind { Identifier, Number, String, Char, Punct, Directive };
  Kind kind;
  std::size_t begin;
  std::size_t end;
  std::string_view text;
  int line;  // 1-based
};

// Throws LexError on unterminated strings, chars or block comments.
std::vector<CToken> c_tokenize(std::string_view source);

// Names of functions defined at top level, in source order.
std::vector<std::string> c_function_definition_names(std::string_view source);

}  // namespace fvel
