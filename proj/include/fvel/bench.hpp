// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Loads verification benchmarks (<dir>/**/*.c with optional .yml sidecars
// declaring the property and expected verdict), runs the verification
// engine over them with bounded parallelism, and aggregates solved counts
// and failure-type proportions.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fvel/engine.hpp"

namespace fvel {

struct PropertySpec {
  std::string property;                  // e.g. "unreach-call.prp"
  std::optional<bool> expected_verdict;
};

struct BenchmarkTask {
  std::string id;      // path relative to the benchmark dir, without ".c"
  std::string c_file;  // filesystem path
  std::optional<PropertySpec> spec;
};

struct LoadOptions {
  std::optional<std::size_t> sample;  // seeded random subset when set
  std::uint64_t seed = 0;
  bool exclude_floats = true;
};

// Recursive *.c enumeration in sorted order, float-typed sources excluded,
// then optional seeded sampling (stable across reruns with the same seed).
std::vector<BenchmarkTask> load_benchmark(const std::string& dir,
                                          const LoadOptions& options = {});

// Property name and expected verdict from a sidecar .yml; unknown keys are
// ignored.
PropertySpec parse_property_yaml(const std::string& text);

struct TaskResult {
  std::string id;
  Verdict verdict;
};

struct BenchmarkReport {
  std::size_t total = 0;
  std::size_t solved = 0;
  std::size_t statement_errors = 0;
  std::size_t proof_errors = 0;
  std::size_t infrastructure = 0;
  std::vector<TaskResult> per_task;  // ordered by id
  double wall_time = 0.0;
};

struct EngineConfig {
  std::string generator_selector;
  std::string prover_selector;
  ProverConfig prover;
  ProveBudget budget;
};

// Each task gets its own generator and prover session; results aggregate
// into the report. Failure proportions are computed over statement+proof
// failures only.
BenchmarkReport run_benchmark(const std::vector<BenchmarkTask>& tasks,
                              const EngineConfig& config, int parallelism,
                              double per_task_timeout);

Json report_to_json(const BenchmarkReport& report);
std::string report_to_table(const BenchmarkReport& report);

}  // namespace fvel
