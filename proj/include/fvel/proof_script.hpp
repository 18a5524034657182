// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Splits theory sources into outer-syntax steps, replays them through a
// prover session and groups the resulting step records into lemma records.

#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fvel/prover.hpp"

namespace fvel {

struct SegmentConfig {
  // Word keywords that open a step at top level (outside comments, strings,
  // cartouches, parens and brackets). `theory` additionally suppresses
  // boundaries through the matching `begin` so the header stays one step.
  std::set<std::string, std::less<>> commands;

  static const SegmentConfig& defaults();
};

struct StepSpan {
  std::size_t begin;
  std::size_t end;  // exclusive; trailing whitespace excluded
};

// Step boundaries over `source`. The gaps between consecutive spans (and
// before the first / after the last) are whitespace-only, so
//   prefix + step0 + gap0 + step1 + ... + suffix == source
// byte for byte. Throws UnbalancedDelimiterError on unterminated comments,
// strings or cartouches.
std::vector<StepSpan> segment_spans(std::string_view source,
                                    const SegmentConfig& config = SegmentConfig::defaults());

std::vector<std::string> segment_steps(std::string_view source,
                                       const SegmentConfig& config = SegmentConfig::defaults());

struct ProofStepRecord {
  int index = 0;           // 0-based within the theory
  std::string step;        // verbatim source slice
  std::string raw_output;  // prover state text, "" when no open goals
  double step_time = 0.0;  // seconds
};

struct ReplayOutcome {
  std::vector<ProofStepRecord> records;  // successfully applied steps
  bool failed = false;                   // true when a step was rejected
  int error_index = -1;                  // index of the rejected step
  std::string error_message;
};

// Applies steps in order, recording state text and elapsed time; stops at
// the first rejected step. Transport failures (SessionLostError) propagate.
ReplayOutcome replay_theory(const std::vector<std::string>& steps, Session& session);

struct LemmaRecord {
  std::string context;                   // source slice spanning the lemma
  std::vector<std::string> proof;        // statement first, then proof steps
  std::vector<std::string> proof_state;  // aligned with proof
  std::string statement;
  std::string theory_name;
  int num_steps = 0;                     // proof entries excluding the statement
  bool incomplete = false;               // open goals at end of records
};

// Groups records from each statement keyword (lemma/theorem/corollary/
// schematic_goal) through the step whose raw_output is "". Non-lemma steps
// are skipped. When `theory_source` is given, context is the original
// source slice spanning the lemma; otherwise entries are joined with single
// spaces.
std::vector<LemmaRecord> extract_lemmas(
    const std::vector<ProofStepRecord>& records, const std::string& theory_name,
    std::optional<std::string_view> theory_source = std::nullopt);

}  // namespace fvel
