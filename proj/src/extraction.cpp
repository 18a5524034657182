// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/extraction.hpp"

#include "fvel/errors.hpp"
#include "fvel/root_parser.hpp"

namespace fvel {

std::vector<TaggedLemma> collect_lemmas(const DependencyGraph& graph) {
  std::vector<TaggedLemma> lemmas;
  for (const auto& [path, node] : graph.nodes)
    for (const auto& lemma : node.lemmas)
      lemmas.push_back({lemma, node.session, node.path, node.depth});
  return lemmas;
}

ExtractionResult run_extraction(const FileLoader& loader, const ProverConfig& prover_config,
                                const std::string& prover_selector,
                                const ExtractionOptions& options) {
  auto roots_listing = loader(options.roots_file);
  if (!roots_listing) throw MissingFileError(options.roots_file);

  ExtractionResult result;
  auto sessions = parse_roots(*roots_listing, loader);
  result.graph = build_graph(sessions, loader);

  for (auto& [path, node] : result.graph.nodes) {
    if (options.exclude_sessions.count(node.session)) continue;
    auto source = loader(path);
    if (!source) {
      result.skipped.push_back({path, "source vanished"});
      continue;
    }
    try {
      ProverConfig config = prover_config;
      config.working_directory = dir_of(path);
      Session session = open_session(config, prover_selector);
      auto steps = segment_steps(*source);
      ReplayOutcome outcome = replay_theory(steps, session);
      session.close();
      if (outcome.failed) {
        result.skipped.push_back(
            {path, "step " + std::to_string(outcome.error_index) + ": " +
                       outcome.error_message});
        continue;
      }
      node.lemmas = extract_lemmas(outcome.records, node.name, *source);
      result.records_by_theory.emplace(path, std::move(outcome.records));
    } catch (const Error& e) {
      result.skipped.push_back({path, e.what()});
    }
  }

  auto lemmas = collect_lemmas(result.graph);
  if (!lemmas.empty()) {
    result.split = split_lemmas(lemmas, options.hard_sessions, options.train_ratio,
                                options.val_ratio, options.test_ratio, options.seed);
  }
  return result;
}

void emit_dataset(const ExtractionResult& result, const std::string& out_dir,
                  const ExtractionOptions& options) {
  emit_extraction_tree(result.records_by_theory, out_dir + "/sel4_extraction");
  write_json_file(out_dir + "/dataset_lemma_split.json", lemma_split_document(result.split));
  write_json_file(out_dir + "/sel4_thy_info.json", theory_info_document(result.graph));
  write_json_file(out_dir + "/sel4_session_info.json", session_info_document(result.graph));
  write_json_file(out_dir + "/statistics.json", statistics(result.graph, result.split));

  std::vector<LemmaRecord> train_records;
  for (const auto& lemma : result.split.train) train_records.push_back(lemma.record);
  std::size_t dropped = 0;
  auto finetune = to_finetune_records(train_records, options.max_finetune_chars, &dropped);
  Json finetune_doc;
  finetune_doc["records"] = finetune_records_to_json(finetune);
  finetune_doc["dropped_over_length"] = dropped;
  write_json_file(out_dir + "/finetune.json", finetune_doc);

  Json skipped = Json::array();
  for (const auto& s : result.skipped)
    skipped.push_back({{"path", s.path}, {"reason", s.reason}});
  write_json_file(out_dir + "/skipped_theories.json", skipped);
}

}  // namespace fvel
