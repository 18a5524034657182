// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Emits the four dataset artifacts (per-theory extraction files, lemma
// splits, theory info, session info) in their exact schemas, plus splits,
// corpus statistics and alpaca-format fine-tuning records.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fvel/json_io.hpp"
#include "fvel/proof_script.hpp"
#include "fvel/theory_graph.hpp"

namespace fvel {

struct TaggedLemma {
  LemmaRecord record;
  std::string session;
  std::string theory_path;
  int depth = 1;  // owning theory's depth
};

struct DatasetSplit {
  std::vector<TaggedLemma> train;
  std::vector<TaggedLemma> val;
  std::vector<TaggedLemma> test;
  std::vector<TaggedLemma> test_hard;
  std::size_t skipped_incomplete = 0;
};

// Deterministic per seed. Hard-session lemmas go to test_hard; the rest are
// shuffled and cut by the ratios (normalized to sum 1, rounded half-up for
// train and val, remainder to test). Incomplete lemmas are excluded and
// counted. Throws EmptyInputError on an empty corpus.
DatasetSplit split_lemmas(const std::vector<TaggedLemma>& lemmas,
                          const std::set<std::string>& hard_sessions, double train_ratio,
                          double val_ratio, double test_ratio, std::uint64_t seed);

// Deterministic Fisher-Yates over mt19937_64 so splits reproduce across
// platforms (std::shuffle is implementation-defined).
void deterministic_shuffle(std::vector<std::size_t>& indices, std::uint64_t seed);

Json lemma_to_json(const LemmaRecord& lemma);

// {"train": [...], "val": [...], "test": [...], "test-hard": [...]}
Json lemma_split_document(const DatasetSplit& split);

// One JSON file per theory at the mirrored path with .thy swapped for
// .json; each file is the step list [{index, step, raw_output, step_time}].
void emit_extraction_tree(
    const std::map<std::string, std::vector<ProofStepRecord>>& records_by_theory,
    const std::string& out_root);

Json theory_info_document(const DependencyGraph& graph);
Json session_info_document(const DependencyGraph& graph);

Json statistics(const DependencyGraph& graph, const DatasetSplit& split);

struct FinetuneRecord {
  std::string instruction;
  std::string input;
  std::string output;
};

// instruction is the fixed proving instruction; input the statement; output
// the proof steps after the statement joined by single spaces. Records
// whose instruction+input+output exceed max_chars are dropped and counted
// (the character budget approximates the tokenizer limit at ~4 chars per
// token). Incomplete lemmas are skipped.
std::vector<FinetuneRecord> to_finetune_records(const std::vector<LemmaRecord>& lemmas,
                                                std::size_t max_chars = 4096,
                                                std::size_t* dropped = nullptr);

Json finetune_records_to_json(const std::vector<FinetuneRecord>& records);

}  // namespace fvel
