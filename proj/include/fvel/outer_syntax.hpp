// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Lexical layer shared by the ROOT parser, the import-header parser, the
// step segmenter and the cheating-keyword detector. It classifies source
// bytes into regions (code, nested (* *) comments, "..." strings, `...`
// alt strings, cartouches) and produces word/symbol tokens from the code
// regions only, so keywords inside quoted or commented text are invisible
// to every client.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fvel {

enum class RegionKind { Code, Comment, String, AltString, Cartouche };

struct Region {
  RegionKind kind;
  std::size_t begin;  // inclusive byte offset
  std::size_t end;    // exclusive
};

// Splits the whole source into contiguous regions. Comments and cartouches
// nest; strings and alt strings honor backslash escapes. Cartouches are
// recognized both in UTF-8 form and as \<open> / \<close>.
// Throws UnbalancedDelimiterError at the opener's offset when a region is
// unterminated at end of input; with strict=false the trailing region is
// closed at EOF instead.
std::vector<Region> scan_regions(std::string_view src, bool strict = true);

struct Token {
  enum class Kind { Word, Symbol, Quoted, Cartouche };
  Kind kind;
  std::size_t begin;
  std::size_t end;
  std::string_view text;  // raw slice, delimiters included for Quoted/Cartouche
  int line;               // 1-based line of `begin`
};

// Tokens from code regions plus quoted/cartouche regions as single tokens.
// Word tokens are [A-Za-z0-9_'] runs, with embedded dots glued when they
// join two word characters (session-qualified names like HOL-Library.Word
// stay quoted in sources; plain Foo.Bar lexes as one word).
std::vector<Token> tokenize(std::string_view src);

// Strips one layer of double quotes if present.
std::string unquote(std::string_view token_text);

// True when `step` contains the token `sorry` or `oops` outside comments,
// strings and cartouches. Malformed input (unterminated delimiter) is
// scanned conservatively: the trailing unterminated region hides nothing.
bool contains_cheating_token(std::string_view step);

}  // namespace fvel
