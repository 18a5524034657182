// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Rewrites benchmark C sources into the translator-compatible subset.
// Rules, applied in order on the token stream (string literals and comments
// can never trigger a rule):
//   R1  delete declarations/definitions of warning helpers that take string
//       literals (char parameters or string-literal bodies), keeping
//       `extern void abort(void);`; calls to deleted functions go with them
//   R2  strip leading underscores from illegal function names and delete
//       labels left dangling by R1 deletions
//   R3  rewrite `assert(e);` / `assume(e);` into `if (!(e)) {return -1;}`
//   R4  prepend `extern int unknown(void);` when unknown() is called
//       undeclared
//   R5  reject sources containing floating-point types

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fvel/json_io.hpp"

namespace fvel {

struct Rewrite {
  std::string rule;  // "R1".."R4"
  int line;
  std::string detail;
};

struct NormalizationReport {
  std::optional<std::string> output;  // absent when rejected
  std::vector<Rewrite> rewrites;
  std::optional<std::string> rejected;
};

// Throws LexError when the source does not tokenize.
NormalizationReport normalize(std::string_view c_source);

enum class FeatureFlag { FloatingPoint, Goto, SideEffectInExpression };

std::string to_string(FeatureFlag flag);

// Detected constructs outside the translator's C99 subset. The side-effect
// check is a heuristic: ++/--/assignment inside a larger expression.
std::vector<FeatureFlag> check_supported(std::string_view c_source);

Json normalization_report_to_json(const NormalizationReport& report);

}  // namespace fvel
