// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include <algorithm>
#include <random>

#include "doctest.h"
#include "fvel/c_lexer.hpp"
#include "fvel/c_normalizer.hpp"
#include "fvel/errors.hpp"
#include "fvel/json_io.hpp"

using namespace fvel;

namespace {

std::string fixture(const std::string& name) {
  return read_file(std::string(FVEL_FIXTURE_DIR) + "/" + name);
}

std::vector<std::string> token_texts(std::string_view src) {
  std::vector<std::string> out;
  for (const auto& t : c_tokenize(src)) out.emplace_back(t.text);
  return out;
}

bool has_flag(const std::vector<FeatureFlag>& flags, FeatureFlag f) {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

// Small deterministic generator of lexable C-ish sources exercising every
// rule site.
std::string fuzz_source(std::mt19937_64& rng) {
  std::string src = "extern void abort(void);\n";
  if (rng() % 2)
    src += "extern void __assert_fail(const char *, const char *, unsigned int, "
           "const char *);\n";
  if (rng() % 2) src += "void reach_error() { __assert_fail(\"0\", \"f.c\", 1, \"x\"); }\n";
  if (rng() % 2) src += "void __VERIFIER_assert(int c) { if (!(c)) { ERROR: {reach_error();abort();} } }\n";
  if (rng() % 3 == 0) src += "extern int __VERIFIER_nondet_int(void);\n";
  src += "int main() {\n";
  if (rng() % 2) src += "  int x = unknown();\n";
  if (rng() % 2) src += "  assert(x > 0);\n";
  if (rng() % 2) src += "  assume(x < 10);\n";
  if (rng() % 3 == 0) src += "  if (x) assert(x != 3);\n";
  if (rng() % 3 == 0) src += "  __VERIFIER_assert(x);\n";
  if (rng() % 4 == 0) src += "  LOOP: { x = x + 1; }\n";
  src += "  return 0;\n}\n";
  return src;
}

}  // namespace

TEST_CASE("table 6: original program normalizes to the processed program") {
  std::string original = fixture("c/table6_original.c");
  std::string processed = fixture("c/table6_processed.c");
  auto report = normalize(original);
  REQUIRE(report.output.has_value());
  CHECK_FALSE(report.rejected.has_value());
  // token-stream equality (whitespace-insensitive)
  CHECK(token_texts(*report.output) == token_texts(processed));
  // and on this fixture the bytes line up too
  CHECK(*report.output == processed);

  // the report names the rules that fired
  bool removed_decl = false, removed_def = false, renamed = false, label = false;
  for (const auto& r : report.rewrites) {
    if (r.rule == "R1" && r.detail.find("__assert_fail") != std::string::npos)
      removed_decl = true;
    if (r.rule == "R1" && r.detail.find("definition of reach_error") != std::string::npos)
      removed_def = true;
    if (r.rule == "R2" && r.detail.find("__VERIFIER_assert -> VERIFIER_assert") !=
                              std::string::npos)
      renamed = true;
    if (r.rule == "R2" && r.detail.find("label ERROR") != std::string::npos) label = true;
  }
  CHECK(removed_decl);
  CHECK(removed_def);
  CHECK(renamed);
  CHECK(label);
}

TEST_CASE("source with no matched patterns is a fixpoint") {
  std::string src = "int add(int a, int b) { return a + b; }\n";
  auto report = normalize(src);
  REQUIRE(report.output.has_value());
  CHECK(*report.output == src);
  CHECK(report.rewrites.empty());
}

TEST_CASE("assert rewrites to a guard, token-checked") {
  auto report = normalize("int main(){ assert(x>0); }");
  REQUIRE(report.output.has_value());
  CHECK(token_texts(*report.output) == token_texts("int main(){ if (!(x>0)) {return -1;} }"));
  REQUIRE(report.rewrites.size() == 1);
  CHECK(report.rewrites[0].rule == "R3");
  CHECK(report.rewrites[0].detail.find("outside main") == std::string::npos);
}

TEST_CASE("assume rewrites; asserts outside main are flagged") {
  auto report = normalize("void helper(int x){ assume(x<10); }");
  REQUIRE(report.output.has_value());
  CHECK(token_texts(*report.output) ==
        token_texts("void helper(int x){ if (!(x<10)) {return -1;} }"));
  REQUIRE(report.rewrites.size() == 1);
  CHECK(report.rewrites[0].detail.find("outside main") != std::string::npos);
}

TEST_CASE("asserts in strings or comments never rewrite") {
  std::string src = "int main(){ const int assert_like = 0; /* assert(x); */ "
                    "char c = 'a'; (void)\"assert(y);\"; return assert_like; }";
  auto report = normalize(src);
  REQUIRE(report.output.has_value());
  CHECK(*report.output == src);
}

TEST_CASE("unknown() gets an extern declaration exactly once") {
  auto report = normalize("int main(){ while (unknown()) {} return 0; }");
  REQUIRE(report.output.has_value());
  CHECK(report.output->rfind("extern int unknown(void);\n", 0) == 0);
  auto again = normalize(*report.output);
  CHECK(*again.output == *report.output);

  // already declared: nothing to add
  auto declared = normalize("extern int unknown(void);\nint main(){ return unknown(); }");
  CHECK(declared.rewrites.empty());
}

TEST_CASE("floating-point sources are rejected with no output") {
  auto report = normalize("int main(){ double x; return 0; }");
  CHECK(report.rejected.has_value());
  CHECK_FALSE(report.output.has_value());
  CHECK(normalize("float f(){ return 0; }").rejected.has_value());
}

TEST_CASE("unlexable input raises LexError") {
  CHECK_THROWS_AS(normalize("int main(){ char *s = \"unterminated; }"), LexError);
  CHECK_THROWS_AS(c_tokenize("/* never closed"), LexError);
}

TEST_CASE("R3 preserves the count of conditional sites") {
  std::string src = "int main(){ assert(a); assume(b); assert(c && d); return 0; }";
  auto report = normalize(src);
  REQUIRE(report.output.has_value());
  int guards = 0;
  auto toks = token_texts(*report.output);
  for (std::size_t i = 0; i + 1 < toks.size(); ++i)
    if (toks[i] == "if" && toks[i + 1] == "(") ++guards;
  CHECK(guards == 3);
  int r3 = 0;
  for (const auto& r : report.rewrites)
    if (r.rule == "R3") ++r3;
  CHECK(r3 == 3);
}

TEST_CASE("whitespace outside rewritten regions is preserved") {
  std::string src = "int  main( )\t{\n\n  assert(x);\n   return 0;\n}\n";
  auto report = normalize(src);
  REQUIRE(report.output.has_value());
  CHECK(report.output->find("int  main( )\t{\n\n  ") == 0);
  CHECK(report.output->find("\n   return 0;\n}\n") != std::string::npos);
}

TEST_CASE("normalize is idempotent on 200 fuzzed sources") {
  std::mt19937_64 rng(1234);
  for (int round = 0; round < 200; ++round) {
    std::string src = fuzz_source(rng);
    auto first = normalize(src);
    REQUIRE(first.output.has_value());
    auto second = normalize(*first.output);
    REQUIRE(second.output.has_value());
    CHECK(*second.output == *first.output);
  }
}

TEST_CASE("check_supported flags") {
  CHECK(has_flag(check_supported("double x;"), FeatureFlag::FloatingPoint));
  CHECK(check_supported("").empty());
  CHECK(check_supported("int main(){ int i; for (i = 0; i < 3; i++) {} return 0; }").empty());
  CHECK(has_flag(check_supported("int main(){ while(a[i++]) {} }"),
                 FeatureFlag::SideEffectInExpression));
  CHECK(has_flag(check_supported("int main(){ goto out; out: return 0; }"),
                 FeatureFlag::Goto));
  CHECK(has_flag(check_supported("int main(){ int x; int y = (x = 1); }"),
                 FeatureFlag::SideEffectInExpression));
  CHECK(has_flag(check_supported("int main(){ int x = 0; int y = x++ + 1; }"),
                 FeatureFlag::SideEffectInExpression));
  CHECK(check_supported("int main(){ int x = 0; x++; ++x; x += 2; return x; }").empty());
}

TEST_CASE("report serializes rejected and rewrites") {
  auto report = normalize("int main(){ assert(x); }");
  Json doc = normalization_report_to_json(report);
  CHECK(doc["rejected"].is_null());
  CHECK(doc["rewrites"].size() == 1);
  CHECK(doc["rewrites"][0]["rule"] == "R3");

  auto rejected = normalization_report_to_json(normalize("double d;"));
  CHECK(rejected["rejected"].is_string());
}
