// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <thread>

#include "fvel/c_normalizer.hpp"
#include "fvel/dataset.hpp"
#include "fvel/errors.hpp"

namespace fvel {

namespace fs = std::filesystem;

PropertySpec parse_property_yaml(const std::string& text) {
  PropertySpec spec;
  std::istringstream lines(text);
  std::string line;
  auto value_of = [](const std::string& s, std::size_t colon) {
    std::string v = s.substr(colon + 1);
    auto b = v.find_first_not_of(" \t'\"");
    auto e = v.find_last_not_of(" \t\r'\"");
    return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
  };
  while (std::getline(lines, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    auto key_begin = line.find_first_not_of(" \t-");
    if (key_begin == std::string::npos || key_begin >= colon) continue;
    std::string key = line.substr(key_begin, colon - key_begin);
    auto key_end = key.find_last_not_of(" \t");
    key = key.substr(0, key_end + 1);
    if (key == "property_file") {
      std::string value = value_of(line, colon);
      auto slash = value.find_last_of('/');
      spec.property = slash == std::string::npos ? value : value.substr(slash + 1);
    } else if (key == "expected_verdict") {
      std::string value = value_of(line, colon);
      if (value == "true") spec.expected_verdict = true;
      if (value == "false") spec.expected_verdict = false;
    }
  }
  return spec;
}

std::vector<BenchmarkTask> load_benchmark(const std::string& dir, const LoadOptions& options) {
  if (!fs::exists(dir)) throw IoError("benchmark directory not found: " + dir);

  std::vector<std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".c")
      files.push_back(entry.path().string());
  }
  std::sort(files.begin(), files.end());

  std::vector<BenchmarkTask> tasks;
  for (const auto& file : files) {
    if (options.exclude_floats) {
      try {
        auto flags = check_supported(read_file(file));
        if (std::find(flags.begin(), flags.end(), FeatureFlag::FloatingPoint) != flags.end())
          continue;
      } catch (const LexError&) {
        // Unlexable sources stay in; verification will report them.
      }
    }
    BenchmarkTask task;
    task.c_file = file;
    std::string rel = fs::relative(file, dir).string();
    if (rel.size() >= 2 && rel.compare(rel.size() - 2, 2, ".c") == 0)
      rel = rel.substr(0, rel.size() - 2);
    task.id = rel;
    fs::path yml = fs::path(file).replace_extension(".yml");
    if (fs::exists(yml)) task.spec = parse_property_yaml(read_file(yml.string()));
    tasks.push_back(std::move(task));
  }

  if (options.sample && *options.sample < tasks.size()) {
    std::vector<std::size_t> indices(tasks.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    deterministic_shuffle(indices, options.seed);
    indices.resize(*options.sample);
    std::sort(indices.begin(), indices.end());
    std::vector<BenchmarkTask> sampled;
    sampled.reserve(indices.size());
    for (std::size_t i : indices) sampled.push_back(std::move(tasks[i]));
    tasks = std::move(sampled);
  }
  return tasks;
}

BenchmarkReport run_benchmark(const std::vector<BenchmarkTask>& tasks,
                              const EngineConfig& config, int parallelism,
                              double per_task_timeout) {
  const auto start = std::chrono::steady_clock::now();
  BenchmarkReport report;
  report.total = tasks.size();
  report.per_task.resize(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      const BenchmarkTask& task = tasks[i];
      Verdict verdict;
      try {
        auto generator = make_generator(config.generator_selector);
        ProveBudget budget = config.budget;
        budget.total_timeout = per_task_timeout;
        verdict = verify(task.c_file, *generator, config.prover,
                         config.prover_selector, budget);
      } catch (const Error& e) {
        verdict.success = false;
        verdict.failure_kind = FailureKind::Infrastructure;
        verdict.stage = std::string("error: ") + e.what();
      }
      report.per_task[i] = {task.id, std::move(verdict)};
    }
  };

  int threads = std::max(1, parallelism);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& r : report.per_task) {
    if (r.verdict.success) {
      ++report.solved;
    } else if (r.verdict.failure_kind == FailureKind::StatementError) {
      ++report.statement_errors;
    } else if (r.verdict.failure_kind == FailureKind::ProofError) {
      ++report.proof_errors;
    } else {
      ++report.infrastructure;
    }
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Json report_to_json(const BenchmarkReport& report) {
  Json doc;
  doc["total"] = report.total;
  doc["solved"] = report.solved;
  Json failures;
  failures["statement_error"] = report.statement_errors;
  failures["proof_error"] = report.proof_errors;
  failures["infrastructure"] = report.infrastructure;
  doc["failures"] = std::move(failures);

  // Table-3 style proportions over generation failures only.
  const std::size_t gen_failures = report.statement_errors + report.proof_errors;
  Json proportions;
  if (gen_failures > 0) {
    proportions["statement_error_pct"] =
        100.0 * static_cast<double>(report.statement_errors) / static_cast<double>(gen_failures);
    proportions["proof_error_pct"] =
        100.0 * static_cast<double>(report.proof_errors) / static_cast<double>(gen_failures);
  } else {
    proportions["statement_error_pct"] = nullptr;
    proportions["proof_error_pct"] = nullptr;
  }
  doc["proportions"] = std::move(proportions);

  Json per_task = Json::array();
  for (const auto& r : report.per_task) {
    Json t;
    t["id"] = r.id;
    t["outcome"] = r.verdict.success ? "Success" : "Failure";
    t["failure_kind"] =
        r.verdict.failure_kind ? Json(to_string(*r.verdict.failure_kind)) : Json(nullptr);
    t["stage"] = r.verdict.stage;
    t["attempts"] = r.verdict.attempts;
    per_task.push_back(std::move(t));
  }
  doc["per_task"] = std::move(per_task);
  doc["wall_time"] = report.wall_time;
  return doc;
}

std::string report_to_table(const BenchmarkReport& report) {
  std::ostringstream os;
  os << "tasks:            " << report.total << "\n";
  os << "solved:           " << report.solved << "\n";
  os << "statement errors: " << report.statement_errors << "\n";
  os << "proof errors:     " << report.proof_errors << "\n";
  os << "infrastructure:   " << report.infrastructure << "\n";
  const std::size_t gen = report.statement_errors + report.proof_errors;
  if (gen > 0) {
    os << std::fixed << std::setprecision(1);
    os << "failure split:    "
       << 100.0 * static_cast<double>(report.statement_errors) / static_cast<double>(gen)
       << "% statement / "
       << 100.0 * static_cast<double>(report.proof_errors) / static_cast<double>(gen)
       << "% proof\n";
  }
  os << std::fixed << std::setprecision(2);
  os << "wall time:        " << report.wall_time << "s\n";
  return os.str();
}

}  // namespace fvel
