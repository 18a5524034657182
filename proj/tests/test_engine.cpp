// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "doctest.h"
#include "fvel/engine.hpp"
#include "fvel/errors.hpp"

using namespace fvel;

namespace {

std::string golden(const std::string& name) {
  return read_file(std::string(FVEL_GOLDEN_DIR) + "/" + name);
}

Session replay_session(Json transcript) {
  return Session::open(ProverConfig{}, make_replay_backend(std::move(transcript)));
}

Json loop_c_transcript() {
  Json t;
  t["steps"]["install_C_file \"loop.c\""] = {{"ok", true}, {"state", ""}};
  t["steps"]["thm loop.main'_def"] = {
      {"ok", true}, {"state", "main' = do { ret <- return 0; return ret }"}};
  return t;
}

}  // namespace

TEST_CASE("rendered prompt matches the golden template byte for byte") {
  CHECK(render_prompt("lemma loop_spec: \"main_ret = 0\"") == golden("prompt_golden.txt"));
}

TEST_CASE("setup_facts names facts <stem>.<function>'_def") {
  SUBCASE("single main") {
    auto session = replay_session(loop_c_transcript());
    FactSet facts = setup_facts("loop.c", "int main() { return 0; }", session);
    REQUIRE(facts.facts.size() == 1);
    CHECK(facts.facts[0].fact_name == "loop.main'_def");
    CHECK(facts.facts[0].function_name == "main");
    CHECK(facts.facts[0].definition_text ==
          "main' = do { ret <- return 0; return ret }");
  }
  SUBCASE("two functions f and g") {
    Json t;
    t["steps"]["install_C_file \"x.c\""] = {{"ok", true}, {"state", ""}};
    t["steps"]["thm x.f'_def"] = {{"ok", true}, {"state", "f'_def"}};
    t["steps"]["thm x.g'_def"] = {{"ok", true}, {"state", "g'_def"}};
    auto session = replay_session(t);
    FactSet facts = setup_facts("x.c", "int f() { return 1; } int g() { return 2; }", session);
    REQUIRE(facts.facts.size() == 2);
    CHECK(facts.facts[0].fact_name == "x.f'_def");
    CHECK(facts.facts[1].fact_name == "x.g'_def");
  }
  SUBCASE("translation error carries the scripted message") {
    Json t;
    t["steps"]["install_C_file \"bad.c\""] = {{"ok", false},
                                              {"errors", {"C parser: unsupported"}}};
    auto session = replay_session(t);
    CHECK_THROWS_WITH_AS(setup_facts("bad.c", "int main() { return 0; }", session),
                         "C parser: unsupported", TranslationFailedError);
  }
  SUBCASE("no functions") {
    Json t;
    t["steps"]["install_C_file \"empty.c\""] = {{"ok", true}, {"state", ""}};
    auto session = replay_session(t);
    CHECK_THROWS_AS(setup_facts("empty.c", "int x;", session), NoFunctionsError);
  }
}

TEST_CASE("generate_specification passes facts through the generator") {
  FactSet facts;
  facts.source_file = "loop.c";
  facts.facts.push_back({"main", "loop.main'_def", "main' = return 0"});

  SUBCASE("scripted statement comes back verbatim") {
    auto generator = make_scripted_generator(Json::array({"lemma spec: \"P\""}));
    CHECK(generate_specification(facts, *generator) == "lemma spec: \"P\"");
  }
  SUBCASE("empty generation raises") {
    auto generator = make_scripted_generator(Json::array({""}));
    CHECK_THROWS_AS(generate_specification(facts, *generator), EmptyGenerationError);
  }
}

namespace {

// statement accepted with one open goal; "by simp" closes it
Json proving_transcript() {
  Json t;
  t["steps"]["lemma spec: \"P\""] = {{"ok", true}, {"state", "goal (1 subgoal):\n 1. P"}};
  t["steps"]["by simp"] = {{"ok", true}, {"state", ""}};
  t["steps"]["apply auto"] = {{"ok", true}, {"state", "goal (1 subgoal):\n 1. P"}};
  t["steps"]["apply bogus"] = {{"ok", false}, {"errors", {"Failed to apply proof method"}}};
  t["default"] = {{"ok", false}, {"errors", {"unscripted"}}};
  return t;
}

}  // namespace

TEST_CASE("prove: happy path succeeds in one attempt") {
  auto generator = make_scripted_generator(Json::array({"by simp"}));
  auto session = replay_session(proving_transcript());
  Verdict verdict = prove("lemma spec: \"P\"", *generator, session, ProveBudget{});
  CHECK(verdict.success);
  CHECK(verdict.attempts == 1);
  CHECK_FALSE(verdict.failure_kind.has_value());
  REQUIRE(verdict.transcript.size() == 2);
  CHECK(verdict.transcript[0].is_statement);
  CHECK(verdict.transcript[1].reply.state == "");
}

TEST_CASE("prove: cheating proof is never a success") {
  auto generator = make_scripted_generator(Json::array({"sorry", "sorry", "sorry"}));
  auto session = replay_session(proving_transcript());
  Verdict verdict = prove("lemma spec: \"P\"", *generator, session, ProveBudget{});
  CHECK_FALSE(verdict.success);
  bool cheat_in_transcript = false;
  for (const auto& e : verdict.transcript)
    if (e.reply.cheating) cheat_in_transcript = true;
  CHECK(cheat_in_transcript);
  CHECK(verdict.failure_kind == FailureKind::ProofError);
}

TEST_CASE("prove: statement rejected in every attempt is a StatementError") {
  Json t;
  t["default"] = {{"ok", false}, {"errors", {"Type unification failed"}}};
  auto generator = make_scripted_generator(Json::array({"by simp", "by simp", "by simp"}));
  auto session = replay_session(t);
  Verdict verdict = prove("lemma broken: \"(1::nat) = True\"", *generator, session,
                          ProveBudget{});
  CHECK_FALSE(verdict.success);
  CHECK(verdict.attempts == 3);
  CHECK(verdict.failure_kind == FailureKind::StatementError);
}

TEST_CASE("prove: retries append the previous proof and errors to the input") {
  // scripted by input matching: first attempt fails, the retry (whose input
  // mentions the error) succeeds
  Json script;
  script["Isabelle error"] = Json::array({"by simp"});
  script["*"] = Json::array({"apply bogus"});
  auto generator = make_scripted_generator(script);
  auto session = replay_session(proving_transcript());
  Verdict verdict = prove("lemma spec: \"P\"", *generator, session, ProveBudget{});
  CHECK(verdict.success);
  CHECK(verdict.attempts == 2);
}

TEST_CASE("prove: incomplete proof (open goals) fails as a proof error") {
  auto generator =
      make_scripted_generator(Json::array({"apply auto", "apply auto", "apply auto"}));
  auto session = replay_session(proving_transcript());
  Verdict verdict = prove("lemma spec: \"P\"", *generator, session, ProveBudget{});
  CHECK_FALSE(verdict.success);
  CHECK(verdict.failure_kind == FailureKind::ProofError);
}

TEST_CASE("classify_failure maps the four attempt-outcome combinations") {
  auto entry = [](int attempt, bool is_statement, bool ok) {
    TranscriptEntry e;
    e.attempt = attempt;
    e.is_statement = is_statement;
    e.reply.ok = ok;
    return e;
  };
  // all statements rejected
  CHECK(classify_failure({entry(1, true, false), entry(2, true, false)}) ==
        FailureKind::StatementError);
  // statement in, later step failed
  CHECK(classify_failure({entry(1, true, true), entry(1, false, false)}) ==
        FailureKind::ProofError);
  // mixed: first attempt statement rejected, second accepted then failed
  CHECK(classify_failure({entry(1, true, false), entry(2, true, true),
                          entry(2, false, false)}) == FailureKind::ProofError);
  // single failing statement
  CHECK(classify_failure({entry(1, true, false)}) == FailureKind::StatementError);
}

TEST_CASE("verify composes the stages") {
  const std::string dir = std::string(FVEL_FIXTURE_DIR) + "/c";

  SUBCASE("float-containing file fails at normalization") {
    write_file("/tmp/fvel_float.c", "int main(){ double d; return 0; }");
    auto generator = make_scripted_generator(Json::array({"x"}));
    Verdict verdict = verify("/tmp/fvel_float.c", *generator, ProverConfig{},
                             "replay:/nonexistent.json", ProveBudget{});
    CHECK_FALSE(verdict.success);
    CHECK(verdict.stage == "normalize");
    CHECK(verdict.failure_kind == FailureKind::Infrastructure);
  }
  SUBCASE("unreachable prover is an infrastructure failure") {
    write_file("/tmp/fvel_ok.c", "int main(){ return 0; }");
    auto generator = make_scripted_generator(Json::array({"x"}));
    ProverConfig config;
    config.timeout_seconds = 0.2;
    ProveBudget budget;
    budget.step_timeout = 0.2;
    Verdict verdict = verify("/tmp/fvel_ok.c", *generator, config, "tcp:127.0.0.1:1",
                             budget);
    CHECK_FALSE(verdict.success);
    CHECK(verdict.stage == "session");
    CHECK(verdict.failure_kind == FailureKind::Infrastructure);
  }
  SUBCASE("missing file fails at io") {
    auto generator = make_scripted_generator(Json::array({"x"}));
    Verdict verdict = verify("/nonexistent/no.c", *generator, ProverConfig{},
                             "replay:/nonexistent.json", ProveBudget{});
    CHECK(verdict.stage == "io");
  }
}

TEST_CASE("verdict JSON carries outcome, kind and transcript") {
  Verdict verdict;
  verdict.success = false;
  verdict.failure_kind = FailureKind::StatementError;
  verdict.stage = "prove";
  verdict.attempts = 2;
  TranscriptEntry e;
  e.attempt = 1;
  e.is_statement = true;
  e.step = "lemma x: \"P\"";
  e.reply.ok = false;
  verdict.transcript.push_back(e);
  Json doc = verdict_to_json(verdict);
  CHECK(doc["outcome"] == "Failure");
  CHECK(doc["failure_kind"] == "statement_error");
  CHECK(doc["transcript"].size() == 1);
  CHECK(doc["transcript"][0]["is_statement"] == true);
}
