// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include <random>

#include "doctest.h"
#include "fvel/errors.hpp"
#include "fvel/proof_script.hpp"

using namespace fvel;

namespace {

// Round-trip helper: steps plus the whitespace gaps reproduce the source.
std::string rejoin(std::string_view source, const std::vector<StepSpan>& spans) {
  std::string out;
  std::size_t pos = 0;
  for (const auto& span : spans) {
    out.append(source.substr(pos, span.begin - pos));
    out.append(source.substr(span.begin, span.end - span.begin));
    pos = span.end;
  }
  out.append(source.substr(pos));
  return out;
}

Session replay_session(Json transcript) {
  return Session::open(ProverConfig{}, make_replay_backend(std::move(transcript)));
}

}  // namespace

TEST_CASE("the appendix two-step lemma segments at by") {
  auto steps = segment_steps("lemma n_less_equal_power_2:\n  \"n < 2 ^ n\" by (fact less_exp)");
  REQUIRE(steps.size() == 2);
  CHECK(steps[0] == "lemma n_less_equal_power_2:\n  \"n < 2 ^ n\"");
  CHECK(steps[1] == "by (fact less_exp)");
}

TEST_CASE("empty source segments to nothing") {
  CHECK(segment_steps("").empty());
  CHECK(segment_steps("   \n\t\n").empty());
}

TEST_CASE("keywords inside comments, strings and cartouches never split") {
  SUBCASE("by inside a comment") {
    auto steps = segment_steps("lemma x: \"P\" (* proved by magic *) by simp");
    REQUIRE(steps.size() == 2);
    CHECK(steps[0] == "lemma x: \"P\" (* proved by magic *)");
    CHECK(steps[1] == "by simp");
  }
  SUBCASE("apply inside a string") {
    auto steps = segment_steps("lemma y: \"apply done qed\" by auto");
    REQUIRE(steps.size() == 2);
  }
  SUBCASE("done inside a cartouche") {
    auto steps = segment_steps("text \\<open>all done here\\<close>\nlemma z: \"Q\" by simp");
    REQUIRE(steps.size() == 3);
    CHECK(steps[0] == "text \\<open>all done here\\<close>");
  }
  SUBCASE("keywords inside parens do not split") {
    auto steps = segment_steps("apply (simp add: fun_def then_def)");
    REQUIRE(steps.size() == 1);
  }
}

TEST_CASE("theory header is one step through begin") {
  auto steps = segment_steps(
      "theory AInvs\n  imports Structures_A\nbegin\n\nlemma a: \"P\" by simp\n\nend\n");
  REQUIRE(steps.size() == 4);
  CHECK(steps[0] == "theory AInvs\n  imports Structures_A\nbegin");
  CHECK(steps[1] == "lemma a: \"P\"");
  CHECK(steps[2] == "by simp");
  CHECK(steps[3] == "end");
}

TEST_CASE("leading comments attach to the first step") {
  auto steps = segment_steps("(* header comment *)\ntheory T imports Main begin\nend\n");
  REQUIRE(steps.size() == 2);
  CHECK(steps[0] == "(* header comment *)\ntheory T imports Main begin");
}

TEST_CASE("unbalanced delimiters raise") {
  CHECK_THROWS_AS(segment_steps("lemma x: \"P"), UnbalancedDelimiterError);
  CHECK_THROWS_AS(segment_steps("(* open"), UnbalancedDelimiterError);
}

TEST_CASE("round trip over randomized keyword injections") {
  const std::vector<std::string> keywords = {"by",   "apply", "lemma", "qed",
                                             "done", "have",  "sorry"};
  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    std::string src = "theory T imports Main begin\n";
    for (int part = 0; part < 8; ++part) {
      switch (rng() % 4) {
        case 0:
          src += "lemma l" + std::to_string(part) + ": \"" +
                 keywords[rng() % keywords.size()] + " = x\"\n";
          break;
        case 1: src += "  apply (simp add: " + keywords[rng() % keywords.size()] + "_def)\n"; break;
        case 2: src += "(* note " + keywords[rng() % keywords.size()] + " here *)\n"; break;
        case 3: src += "  done\n"; break;
      }
    }
    src += "end\n";
    auto spans = segment_spans(src);
    CHECK(rejoin(src, spans) == src);
    // every gap is whitespace-only by construction
    std::size_t pos = 0;
    for (const auto& span : spans) {
      for (std::size_t i = pos; i < span.begin; ++i)
        CHECK(std::isspace(static_cast<unsigned char>(src[i])));
      pos = span.end;
    }
  }
}

TEST_CASE("replay_theory records state and time, stops at a hard error") {
  SUBCASE("empty step list") {
    auto session = replay_session(Json{{"default", {{"ok", true}, {"state", ""}}}});
    auto outcome = replay_theory({}, session);
    CHECK(outcome.records.empty());
    CHECK_FALSE(outcome.failed);
  }
  SUBCASE("two-step sample with scripted states") {
    Json transcript;
    transcript["steps"]["lemma n_less_equal_power_2:\n  \"n < 2 ^ n\""] = {
        {"ok", true},
        {"state", "proof (prove)\ngoal (1 subgoal):\n 1. n < 2 ^ n"},
        {"elapsed", 0.02}};
    transcript["steps"]["by (fact less_exp)"] = {
        {"ok", true}, {"state", ""}, {"elapsed", 0.01}};
    auto session = replay_session(transcript);
    auto outcome = replay_theory(
        {"lemma n_less_equal_power_2:\n  \"n < 2 ^ n\"", "by (fact less_exp)"}, session);
    REQUIRE(outcome.records.size() == 2);
    CHECK(outcome.records[0].index == 0);
    CHECK(outcome.records[0].raw_output ==
          "proof (prove)\ngoal (1 subgoal):\n 1. n < 2 ^ n");
    CHECK(outcome.records[0].step_time == doctest::Approx(0.02));
    CHECK(outcome.records[1].raw_output == "");
  }
  SUBCASE("failure at step 3 leaves 3 records and a marker") {
    Json transcript;
    transcript["default"] = {{"ok", true}, {"state", "goal"}};
    transcript["steps"]["s3"] = {{"ok", false}, {"errors", {"bad step"}}};
    auto session = replay_session(transcript);
    auto outcome = replay_theory({"s0", "s1", "s2", "s3", "s4"}, session);
    CHECK(outcome.records.size() == 3);
    CHECK(outcome.failed);
    CHECK(outcome.error_index == 3);
    CHECK(outcome.error_message == "bad step");
  }
}

TEST_CASE("extract_lemmas groups statements through the closing state") {
  auto make_record = [](int index, std::string step, std::string state) {
    ProofStepRecord r;
    r.index = index;
    r.step = std::move(step);
    r.raw_output = std::move(state);
    return r;
  };

  SUBCASE("appendix sample produces one lemma with num_steps 1") {
    std::string source = "lemma n_less_equal_power_2:\n  \"n < 2 ^ n\" by (fact less_exp)";
    std::vector<ProofStepRecord> records{
        make_record(0, "lemma n_less_equal_power_2:\n  \"n < 2 ^ n\"",
                    "proof (prove)\ngoal (1 subgoal):\n 1. n < 2 ^ n"),
        make_record(1, "by (fact less_exp)", ""),
    };
    auto lemmas = extract_lemmas(records, "More_Arithmetic", source);
    REQUIRE(lemmas.size() == 1);
    const LemmaRecord& lemma = lemmas[0];
    CHECK(lemma.statement == "lemma n_less_equal_power_2:\n  \"n < 2 ^ n\"");
    CHECK(lemma.num_steps == 1);
    CHECK(lemma.theory_name == "More_Arithmetic");
    CHECK(lemma.context == source);
    CHECK(lemma.proof.size() == 2);
    CHECK(lemma.proof_state.back() == "");
    CHECK_FALSE(lemma.incomplete);
  }
  SUBCASE("no statement keyword, no lemmas") {
    std::vector<ProofStepRecord> records{make_record(0, "definition d where \"d = 1\"", ""),
                                         make_record(1, "end", "")};
    CHECK(extract_lemmas(records, "T").empty());
  }
  SUBCASE("two lemmas with 3 and 2 proof steps, non-lemma steps skipped") {
    std::vector<ProofStepRecord> records{
        make_record(0, "theory T imports Main begin", ""),
        make_record(1, "lemma one: \"A\"", "goal a"),
        make_record(2, "apply x", "goal b"),
        make_record(3, "apply y", "goal c"),
        make_record(4, "done", ""),
        make_record(5, "definition noise where \"noise = 0\"", ""),
        make_record(6, "theorem two: \"B\"", "goal d"),
        make_record(7, "apply z", "goal e"),
        make_record(8, "done", ""),
        make_record(9, "end", ""),
    };
    auto lemmas = extract_lemmas(records, "T");
    REQUIRE(lemmas.size() == 2);
    CHECK(lemmas[0].num_steps == 3);
    CHECK(lemmas[0].proof.size() == 4);
    CHECK(lemmas[1].num_steps == 2);
    CHECK(lemmas[1].statement == "theorem two: \"B\"");
    // joined with single spaces when no source is given
    CHECK(lemmas[1].context == "theorem two: \"B\" apply z done");
  }
  SUBCASE("unclosed lemma is flagged incomplete") {
    std::vector<ProofStepRecord> records{
        make_record(0, "lemma open_goal: \"C\"", "goal"),
        make_record(1, "apply w", "still a goal"),
    };
    auto lemmas = extract_lemmas(records, "T");
    REQUIRE(lemmas.size() == 1);
    CHECK(lemmas[0].incomplete);
    CHECK(lemmas[0].proof_state.back() != "");
  }
}

TEST_CASE("lemma invariants: proof length equals num_steps + 1") {
  std::vector<ProofStepRecord> records;
  for (int i = 0; i < 3; ++i) {
    ProofStepRecord r;
    r.index = i;
    r.step = i == 0 ? "lemma x: \"P\"" : (i == 1 ? "apply a" : "done");
    r.raw_output = i == 2 ? "" : "goal";
    records.push_back(r);
  }
  auto lemmas = extract_lemmas(records, "T");
  REQUIRE(lemmas.size() == 1);
  CHECK(lemmas[0].proof.size() == lemmas[0].proof_state.size());
  CHECK(static_cast<int>(lemmas[0].proof.size()) == lemmas[0].num_steps + 1);
  CHECK(lemmas[0].proof[0] == lemmas[0].statement);
}
