// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// The verification workflow: a normalized C file is translated into prover
// facts, a lemma specification is generated for them, and whole proofs are
// generated and checked with error-driven retries until the budget runs out.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fvel/generator.hpp"
#include "fvel/prover.hpp"

namespace fvel {

struct Fact {
  std::string function_name;
  std::string fact_name;       // "<c file stem>.<function>'_def"
  std::string definition_text;
};

struct FactSet {
  std::string source_file;
  std::vector<Fact> facts;
};

enum class FailureKind { StatementError, ProofError, Infrastructure };

std::string to_string(FailureKind kind);

struct TranscriptEntry {
  int attempt = 0;         // 1-based
  bool is_statement = false;
  std::string step;
  ProverReply reply;
};

struct Verdict {
  bool success = false;
  std::optional<FailureKind> failure_kind;  // present iff !success
  std::string stage;                        // failing stage tag, "" on success
  std::vector<TranscriptEntry> transcript;
  int attempts = 0;
  double wall_time = 0.0;
};

struct ProveBudget {
  int max_attempts = 3;
  double step_timeout = 120.0;   // seconds, forwarded to the prover config
  double total_timeout = 300.0;  // seconds, wall clock over all attempts
  double temperature = 0.0;
};

// The fixed proving instruction and the prompt rendered from it.
const std::string& prove_instruction();
std::string render_prompt(const std::string& input);

// Translates the C file in the session and captures one fact per defined
// function by printing "<stem>.<fn>'_def". Throws TranslationFailedError /
// NoFunctionsError.
FactSet setup_facts(const std::string& c_file_path, const std::string& c_source,
                    Session& session);

// One lemma statement for the fact set; facts are concatenated as the
// prompt input. Throws EmptyGenerationError / GeneratorUnavailableError.
std::string generate_specification(const FactSet& facts, Generator& generator,
                                   double temperature = 0.0);

// Whole-proof loop: per attempt, generate a proof (retries append the
// previous proof and prover errors to the input), apply the statement then
// each segmented step. Success needs every step accepted, no cheating and
// a final empty state.
Verdict prove(const std::string& statement, Generator& generator, Session& session,
              const ProveBudget& budget);

// StatementError when the statement was rejected in every attempt;
// ProofError when some attempt got the statement in and failed later.
FailureKind classify_failure(const std::vector<TranscriptEntry>& transcript);

// normalize -> open_session -> setup_facts -> generate_specification ->
// prove. Any stage error yields a Failure verdict tagged with the stage;
// infrastructure failures are distinguished from statement/proof errors.
Verdict verify(const std::string& c_file, Generator& generator,
               const ProverConfig& prover_config, const std::string& prover_selector,
               const ProveBudget& budget);

Json verdict_to_json(const Verdict& verdict);

}  // namespace fvel
