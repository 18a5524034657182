// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fvel/engine.hpp"
#include "fvel/errors.hpp"
#include "fvel/paths.hpp"

namespace fvel {

void deterministic_shuffle(std::vector<std::size_t>& indices, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = indices.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

DatasetSplit split_lemmas(const std::vector<TaggedLemma>& lemmas,
                          const std::set<std::string>& hard_sessions, double train_ratio,
                          double val_ratio, double test_ratio, std::uint64_t seed) {
  if (lemmas.empty()) throw EmptyInputError("split_lemmas: no lemmas");
  double sum = train_ratio + val_ratio + test_ratio;
  if (!(sum > 0) || train_ratio < 0 || val_ratio < 0 || test_ratio < 0)
    throw EmptyInputError("split_lemmas: ratios must be nonnegative with positive sum");

  DatasetSplit split;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < lemmas.size(); ++i) {
    if (lemmas[i].record.incomplete) {
      ++split.skipped_incomplete;
    } else if (hard_sessions.count(lemmas[i].session)) {
      split.test_hard.push_back(lemmas[i]);
    } else {
      rest.push_back(i);
    }
  }

  deterministic_shuffle(rest, seed);

  const std::size_t n = rest.size();
  std::size_t n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * (train_ratio / sum) + 0.5));
  std::size_t n_val = static_cast<std::size_t>(
      std::floor(static_cast<double>(n) * (val_ratio / sum) + 0.5));
  n_train = std::min(n_train, n);
  n_val = std::min(n_val, n - n_train);

  for (std::size_t k = 0; k < n; ++k) {
    const TaggedLemma& lemma = lemmas[rest[k]];
    if (k < n_train)
      split.train.push_back(lemma);
    else if (k < n_train + n_val)
      split.val.push_back(lemma);
    else
      split.test.push_back(lemma);
  }
  return split;
}

Json lemma_to_json(const LemmaRecord& lemma) {
  Json doc;
  doc["context"] = lemma.context;
  doc["proof"] = lemma.proof;
  doc["proof_state"] = lemma.proof_state;
  doc["statement"] = lemma.statement;
  doc["theory_name"] = lemma.theory_name;
  doc["num_steps"] = lemma.num_steps;
  return doc;
}

namespace {

Json lemma_list(const std::vector<TaggedLemma>& lemmas) {
  Json list = Json::array();
  for (const auto& lemma : lemmas) list.push_back(lemma_to_json(lemma.record));
  return list;
}

}  // namespace

Json lemma_split_document(const DatasetSplit& split) {
  Json doc;
  doc["train"] = lemma_list(split.train);
  doc["val"] = lemma_list(split.val);
  doc["test"] = lemma_list(split.test);
  doc["test-hard"] = lemma_list(split.test_hard);
  return doc;
}

void emit_extraction_tree(
    const std::map<std::string, std::vector<ProofStepRecord>>& records_by_theory,
    const std::string& out_root) {
  for (const auto& [theory_path, records] : records_by_theory) {
    std::string rel = theory_path;
    if (rel.size() >= 4 && rel.compare(rel.size() - 4, 4, ".thy") == 0)
      rel = rel.substr(0, rel.size() - 4);
    rel += ".json";
    Json doc = Json::array();
    for (const auto& r : records) {
      Json step;
      step["index"] = r.index;
      step["step"] = r.step;
      step["raw_output"] = r.raw_output;
      step["step_time"] = r.step_time;
      doc.push_back(std::move(step));
    }
    write_json_file(out_root + rel, doc);
  }
}

Json theory_info_document(const DependencyGraph& graph) {
  Json doc = Json::object();
  for (const auto& [path, node] : graph.nodes) {
    Json entry;
    entry["name"] = node.name;
    Json deps = Json::object();
    for (const auto& [import_name, dir] : node.dependency) deps[import_name] = dir;
    entry["dependency"] = std::move(deps);
    entry["depth"] = node.depth;
    entry["related_c_code"] = node.related_c_code;
    entry["child"] = node.child;
    entry["path"] = node.path;
    entry["session"] = node.session;
    Json lemmas = Json::array();
    for (const auto& lemma : node.lemmas) lemmas.push_back(lemma_to_json(lemma));
    entry["lemmas"] = std::move(lemmas);
    doc[path] = std::move(entry);
  }
  return doc;
}

Json session_info_document(const DependencyGraph& graph) {
  Json doc = Json::object();
  for (const auto& name : graph.session_order) {
    const SessionSpec& spec = graph.sessions.at(name);
    Json entry;
    entry["dependency"] = spec.parents;
    entry["name"] = spec.name;
    auto theories = graph.session_theories.find(name);
    entry["theories"] = theories == graph.session_theories.end()
                            ? std::vector<std::string>{}
                            : theories->second;
    entry["ROOT_dir"] = spec.root_dir;
    entry["ROOT_relative_dir"] = spec.relative_dir;
    entry["additional_dir"] = spec.additional_dirs;
    entry["depth"] = spec.depth;
    doc[name] = std::move(entry);
  }
  return doc;
}

namespace {

struct SplitStats {
  std::size_t lemmas = 0;
  long long proof_steps = 0;
  int max_proof_steps = 0;
  double average_proof_steps = 0.0;
  double average_depth = 0.0;
  int max_depth = 0;
};

SplitStats stats_over(const std::vector<TaggedLemma>& lemmas) {
  SplitStats s;
  s.lemmas = lemmas.size();
  long long depth_sum = 0;
  for (const auto& lemma : lemmas) {
    s.proof_steps += lemma.record.num_steps;
    s.max_proof_steps = std::max(s.max_proof_steps, lemma.record.num_steps);
    depth_sum += lemma.depth;
    s.max_depth = std::max(s.max_depth, lemma.depth);
  }
  if (s.lemmas) {
    s.average_proof_steps = static_cast<double>(s.proof_steps) / static_cast<double>(s.lemmas);
    s.average_depth = static_cast<double>(depth_sum) / static_cast<double>(s.lemmas);
  }
  return s;
}

Json split_stats_json(const SplitStats& s) {
  Json doc;
  doc["lemmas"] = s.lemmas;
  doc["proof_steps"] = s.proof_steps;
  doc["average_proof_steps"] = s.average_proof_steps;
  doc["max_proof_steps"] = s.max_proof_steps;
  doc["average_depth"] = s.average_depth;
  doc["max_depth"] = s.max_depth;
  return doc;
}

// Step-interval buckets for the lemma-by-steps distribution.
constexpr std::pair<int, int> kStepIntervals[] = {
    {1, 1}, {2, 10}, {11, 20}, {21, 50}, {51, 100}, {101, -1}};

std::string interval_label(std::pair<int, int> interval) {
  if (interval.second < 0) return std::to_string(interval.first) + "+";
  if (interval.first == interval.second) return std::to_string(interval.first);
  return std::to_string(interval.first) + "-" + std::to_string(interval.second);
}

}  // namespace

Json statistics(const DependencyGraph& graph, const DatasetSplit& split) {
  std::vector<TaggedLemma> all;
  for (const auto* part : {&split.train, &split.val, &split.test, &split.test_hard})
    all.insert(all.end(), part->begin(), part->end());

  SplitStats total = stats_over(all);
  int max_theory_depth = 0;
  for (const auto& [path, node] : graph.nodes)
    max_theory_depth = std::max(max_theory_depth, node.depth);

  Json doc;
  Json totals;
  totals["theories"] = graph.nodes.size();
  totals["lemmas"] = total.lemmas;
  totals["proof_steps"] = total.proof_steps;
  totals["max_depth"] = max_theory_depth;
  totals["max_proof_steps"] = total.max_proof_steps;
  doc["totals"] = std::move(totals);

  Json splits;
  splits["train"] = split_stats_json(stats_over(split.train));
  splits["val"] = split_stats_json(stats_over(split.val));
  splits["test"] = split_stats_json(stats_over(split.test));
  splits["test-hard"] = split_stats_json(stats_over(split.test_hard));
  doc["splits"] = std::move(splits);

  Json by_theory = Json::object();
  std::map<int, long long> theory_hist;
  for (const auto& [path, node] : graph.nodes) theory_hist[node.depth] += 1;
  for (const auto& [depth, count] : theory_hist) by_theory[std::to_string(depth)] = count;
  doc["depth_histogram_by_theory"] = std::move(by_theory);

  Json by_lemma = Json::object();
  std::map<int, long long> lemma_hist;
  for (const auto& lemma : all) lemma_hist[lemma.depth] += 1;
  for (const auto& [depth, count] : lemma_hist) by_lemma[std::to_string(depth)] = count;
  doc["depth_histogram_by_lemma"] = std::move(by_lemma);

  Json intervals = Json::object();
  for (const auto& interval : kStepIntervals) {
    long long count = 0;
    for (const auto& lemma : all) {
      int steps = lemma.record.num_steps;
      if (steps >= interval.first && (interval.second < 0 || steps <= interval.second))
        ++count;
    }
    intervals[interval_label(interval)] = count;
  }
  doc["step_interval_histogram"] = std::move(intervals);
  return doc;
}

std::vector<FinetuneRecord> to_finetune_records(const std::vector<LemmaRecord>& lemmas,
                                                std::size_t max_chars,
                                                std::size_t* dropped) {
  std::vector<FinetuneRecord> records;
  std::size_t drop_count = 0;
  for (const auto& lemma : lemmas) {
    if (lemma.incomplete) continue;
    FinetuneRecord record;
    record.instruction = prove_instruction();
    record.input = lemma.statement;
    for (std::size_t i = 1; i < lemma.proof.size(); ++i) {
      if (i > 1) record.output += ' ';
      record.output += lemma.proof[i];
    }
    if (record.instruction.size() + record.input.size() + record.output.size() > max_chars) {
      ++drop_count;
      continue;
    }
    records.push_back(std::move(record));
  }
  if (dropped) *dropped = drop_count;
  return records;
}

Json finetune_records_to_json(const std::vector<FinetuneRecord>& records) {
  Json doc = Json::array();
  for (const auto& r : records)
    doc.push_back({{"instruction", r.instruction}, {"input", r.input}, {"output", r.output}});
  return doc;
}

}  // namespace fvel
