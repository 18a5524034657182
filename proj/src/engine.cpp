// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/engine.hpp"

#include <chrono>
#include <sstream>

#include "fvel/c_lexer.hpp"
#include "fvel/c_normalizer.hpp"
#include "fvel/errors.hpp"
#include "fvel/paths.hpp"
#include "fvel/proof_script.hpp"

namespace fvel {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

std::string to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::StatementError: return "statement_error";
    case FailureKind::ProofError: return "proof_error";
    case FailureKind::Infrastructure: return "infrastructure";
  }
  return "unknown";
}

const std::string& prove_instruction() {
  static const std::string instruction =
      "Prove the following lemma statement in Isabelle.\n"
      "Ensure that the proof is complete, logically sound and free of redundant "
      "content. Use appropriate tactics and lemmas as necessary. Don't explain.";
  return instruction;
}

std::string render_prompt(const std::string& input) {
  return prove_instruction() + "\n\n" + input;
}

FactSet setup_facts(const std::string& c_file_path, const std::string& c_source,
                    Session& session) {
  FactSet facts;
  facts.source_file = c_file_path;

  ProverReply install = session.apply_step("install_C_file \"" + c_file_path + "\"");
  if (!install.ok) {
    std::string msg = install.errors.empty() ? "C translation rejected" : install.errors.front();
    throw TranslationFailedError(msg);
  }

  const std::string stem = stem_of(c_file_path);
  const auto functions = c_function_definition_names(c_source);
  if (functions.empty()) throw NoFunctionsError("no function definitions in " + c_file_path);

  for (const auto& fn : functions) {
    const std::string fact_name = stem + "." + fn + "'_def";
    ProverReply reply = session.apply_step("thm " + fact_name);
    if (!reply.ok) {
      std::string msg = reply.errors.empty() ? "no definition for " + fact_name
                                             : reply.errors.front();
      throw TranslationFailedError(msg);
    }
    facts.facts.push_back({fn, fact_name, reply.state});
  }
  return facts;
}

std::string generate_specification(const FactSet& facts, Generator& generator,
                                   double temperature) {
  std::string input;
  for (std::size_t i = 0; i < facts.facts.size(); ++i) {
    if (i) input += "\n\n";
    input += facts.facts[i].definition_text;
  }
  std::string statement = generator.generate(prove_instruction(), input, temperature);
  if (statement.empty()) throw EmptyGenerationError("generator returned an empty statement");
  return statement;
}

Verdict prove(const std::string& statement, Generator& generator, Session& session,
              const ProveBudget& budget) {
  Verdict verdict;
  const auto start = Clock::now();

  std::string previous_proof;
  std::vector<std::string> previous_errors;

  for (int attempt = 1; attempt <= budget.max_attempts; ++attempt) {
    verdict.attempts = attempt;

    std::string input = statement;
    if (attempt > 1) {
      input += "\n\nPrevious proof:\n" + previous_proof;
      input += "\n\nIsabelle error:\n";
      for (std::size_t i = 0; i < previous_errors.size(); ++i) {
        if (i) input += "\n";
        input += previous_errors[i];
      }
    }

    std::string proof_text = generator.generate(prove_instruction(), input,
                                                budget.temperature);
    previous_proof = proof_text;
    previous_errors.clear();

    auto record = [&](bool is_statement, const std::string& step) {
      ProverReply reply = session.apply_step(step);
      verdict.transcript.push_back({attempt, is_statement, step, reply});
      return reply;
    };

    ProverReply statement_reply = record(true, statement);
    bool attempt_failed = false;
    std::string last_state = statement_reply.state;

    if (!statement_reply.ok) {
      attempt_failed = true;
      previous_errors = statement_reply.errors;
      if (statement_reply.cheating) previous_errors.push_back("cheating keyword in statement");
    } else {
      std::vector<std::string> steps =
          proof_text.empty() ? std::vector<std::string>{} : segment_steps(proof_text);
      for (const auto& step : steps) {
        ProverReply reply = record(false, step);
        last_state = reply.state;
        if (!reply.ok) {
          attempt_failed = true;
          previous_errors = reply.errors;
          if (reply.cheating) previous_errors.push_back("cheating keyword in proof");
          break;
        }
      }
      if (!attempt_failed && !last_state.empty()) {
        attempt_failed = true;
        previous_errors = {"proof incomplete: open goals remain"};
      }
      if (proof_text.empty()) {
        attempt_failed = true;
        previous_errors = {"empty proof generation"};
      }
    }

    if (!attempt_failed) {
      verdict.success = true;
      verdict.wall_time = seconds_since(start);
      return verdict;
    }
    if (seconds_since(start) > budget.total_timeout) break;
  }

  verdict.success = false;
  verdict.failure_kind = classify_failure(verdict.transcript);
  verdict.stage = "prove";
  verdict.wall_time = seconds_since(start);
  return verdict;
}

FailureKind classify_failure(const std::vector<TranscriptEntry>& transcript) {
  for (const auto& entry : transcript)
    if (entry.is_statement && entry.reply.ok) return FailureKind::ProofError;
  return FailureKind::StatementError;
}

Verdict verify(const std::string& c_file, Generator& generator,
               const ProverConfig& prover_config, const std::string& prover_selector,
               const ProveBudget& budget) {
  const auto start = Clock::now();
  auto fail = [&](FailureKind kind, const std::string& stage) {
    Verdict v;
    v.success = false;
    v.failure_kind = kind;
    v.stage = stage;
    v.wall_time = seconds_since(start);
    return v;
  };

  std::string source;
  try {
    source = read_file(c_file);
  } catch (const IoError&) {
    return fail(FailureKind::Infrastructure, "io");
  }

  NormalizationReport normalized;
  try {
    normalized = normalize(source);
  } catch (const LexError&) {
    return fail(FailureKind::Infrastructure, "normalize");
  }
  if (normalized.rejected) return fail(FailureKind::Infrastructure, "normalize");

  ProverConfig config = prover_config;
  config.timeout_seconds = budget.step_timeout;
  if (config.working_directory.empty()) {
    auto slash = c_file.find_last_of('/');
    config.working_directory = slash == std::string::npos ? "." : c_file.substr(0, slash);
  }
  if (config.session_roots.empty())
    config.session_roots = {"tools/c-parser", "tools/autocorres"};

  try {
    Session session = open_session(config, prover_selector);
    FactSet facts = setup_facts(c_file, *normalized.output, session);
    std::string statement = generate_specification(facts, generator, budget.temperature);
    Verdict verdict = prove(statement, generator, session, budget);
    session.close();
    verdict.wall_time = seconds_since(start);
    return verdict;
  } catch (const ConnectFailedError&) {
    return fail(FailureKind::Infrastructure, "session");
  } catch (const InitRejectedError&) {
    return fail(FailureKind::Infrastructure, "session");
  } catch (const TimeoutError&) {
    return fail(FailureKind::Infrastructure, "session");
  } catch (const TranslationFailedError&) {
    return fail(FailureKind::Infrastructure, "facts");
  } catch (const NoFunctionsError&) {
    return fail(FailureKind::Infrastructure, "facts");
  } catch (const EmptyGenerationError&) {
    return fail(FailureKind::Infrastructure, "generation");
  } catch (const GeneratorUnavailableError&) {
    return fail(FailureKind::Infrastructure, "generation");
  } catch (const SessionLostError&) {
    return fail(FailureKind::Infrastructure, "prove");
  }
}

Json verdict_to_json(const Verdict& verdict) {
  Json doc;
  doc["outcome"] = verdict.success ? "Success" : "Failure";
  doc["failure_kind"] =
      verdict.failure_kind ? Json(to_string(*verdict.failure_kind)) : Json(nullptr);
  doc["stage"] = verdict.stage;
  doc["attempts"] = verdict.attempts;
  doc["wall_time"] = verdict.wall_time;
  Json transcript = Json::array();
  for (const auto& e : verdict.transcript) {
    transcript.push_back({{"attempt", e.attempt},
                          {"is_statement", e.is_statement},
                          {"step", e.step},
                          {"ok", e.reply.ok},
                          {"state", e.reply.state},
                          {"errors", e.reply.errors},
                          {"cheating", e.reply.cheating}});
  }
  doc["transcript"] = std::move(transcript);
  return doc;
}

}  // namespace fvel
