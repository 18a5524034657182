// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "doctest.h"
#include "fvel/errors.hpp"
#include "fvel/outer_syntax.hpp"

using namespace fvel;

TEST_CASE("regions classify comments, strings and cartouches") {
  auto regions = scan_regions("a (* c (* nested *) *) \"s\" \\<open>x\\<close> b");
  REQUIRE(regions.size() == 7);
  CHECK(regions[0].kind == RegionKind::Code);
  CHECK(regions[1].kind == RegionKind::Comment);
  CHECK(regions[3].kind == RegionKind::String);
  CHECK(regions[5].kind == RegionKind::Cartouche);
  CHECK(regions[6].kind == RegionKind::Code);
}

TEST_CASE("utf8 cartouches nest") {
  std::string src = "x ‹a ‹b› c› y";
  auto regions = scan_regions(src);
  int cartouches = 0;
  for (const auto& r : regions)
    if (r.kind == RegionKind::Cartouche) ++cartouches;
  CHECK(cartouches == 1);
}

TEST_CASE("unterminated delimiters throw with offset") {
  CHECK_THROWS_AS(scan_regions("a (* never closed"), UnbalancedDelimiterError);
  CHECK_THROWS_AS(scan_regions("a \"never"), UnbalancedDelimiterError);
  CHECK_THROWS_AS(scan_regions("a \\<open> never"), UnbalancedDelimiterError);
  try {
    scan_regions("ab (* x");
  } catch (const UnbalancedDelimiterError& e) {
    CHECK(e.offset == 3);
  }
}

TEST_CASE("tokenize glues qualified names and skips comments") {
  auto tokens = tokenize("imports HOL-Library.Word (* c *) More_Word");
  REQUIRE(tokens.size() == 5);
  CHECK(tokens[0].text == "imports");
  CHECK(tokens[1].text == "HOL");        // '-' is not a word character
  CHECK(tokens[2].text == "-");
  CHECK(tokens[3].text == "Library.Word");
  CHECK(tokens[4].text == "More_Word");
}

TEST_CASE("quoted tokens keep their quotes; unquote strips one layer") {
  auto tokens = tokenize("session \"HOL-Library\"");
  REQUIRE(tokens.size() == 2);
  CHECK(tokens[1].kind == Token::Kind::Quoted);
  CHECK(tokens[1].text == "\"HOL-Library\"");
  CHECK(unquote(tokens[1].text) == "HOL-Library");
  CHECK(unquote("plain") == "plain");
  CHECK(unquote("\"a \\\"b\\\"\"") == "a \"b\"");
}

TEST_CASE("cheating tokens found only in code") {
  CHECK(contains_cheating_token("sorry"));
  CHECK(contains_cheating_token("apply auto oops"));
  CHECK(contains_cheating_token("  sorry (* later *)"));
  CHECK_FALSE(contains_cheating_token("by simp (* sorry *)"));
  CHECK_FALSE(contains_cheating_token("lemma \"sorry oops\""));
  CHECK_FALSE(contains_cheating_token("text \\<open>sorry\\<close>"));
  CHECK_FALSE(contains_cheating_token("apply (simp add: sorry_def)"));
  CHECK_FALSE(contains_cheating_token("by (rule sorries)"));
  // malformed input is scanned leniently, never throws
  CHECK(contains_cheating_token("sorry (* unterminated"));
  CHECK_FALSE(contains_cheating_token("\"unterminated sorry"));
}

TEST_CASE("token lines are 1-based") {
  auto tokens = tokenize("a\nb\n  c");
  REQUIRE(tokens.size() == 3);
  CHECK(tokens[0].line == 1);
  CHECK(tokens[1].line == 2);
  CHECK(tokens[2].line == 3);
}
