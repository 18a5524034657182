// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// End-to-end dataset extraction: parse ROOT files, build the theory graph,
// segment and replay every theory through a prover session, attach lemma
// records, split, and emit the dataset artifacts.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fvel/dataset.hpp"
#include "fvel/prover.hpp"

namespace fvel {

struct ExtractionOptions {
  std::string roots_file = "/ROOTS";
  // Sessions replayed for lemmas; denylisted ones stay in the graph but are
  // not stepped (documentation and translator tooling).
  std::set<std::string> exclude_sessions;
  std::set<std::string> hard_sessions = {"SysInit", "SysInitExamples", "LibTest"};
  double train_ratio = 0.895;
  double val_ratio = 0.038;
  double test_ratio = 0.037;
  std::uint64_t seed = 0;
  std::size_t max_finetune_chars = 4096;
};

struct SkippedTheory {
  std::string path;
  std::string reason;
};

struct ExtractionResult {
  DependencyGraph graph;
  std::map<std::string, std::vector<ProofStepRecord>> records_by_theory;
  DatasetSplit split;
  std::vector<SkippedTheory> skipped;  // theories that failed replay
};

// Theories replay one prover session each, in deterministic path order.
// A theory whose replay fails is skipped whole and logged.
ExtractionResult run_extraction(const FileLoader& loader, const ProverConfig& prover_config,
                                const std::string& prover_selector,
                                const ExtractionOptions& options);

// Writes sel4_extraction/, dataset_lemma_split.json, sel4_thy_info.json,
// sel4_session_info.json, statistics.json, finetune.json and
// skipped_theories.json under out_dir.
void emit_dataset(const ExtractionResult& result, const std::string& out_dir,
                  const ExtractionOptions& options);

// Tagged lemmas for all graph nodes, in node path order.
std::vector<TaggedLemma> collect_lemmas(const DependencyGraph& graph);

}  // namespace fvel
