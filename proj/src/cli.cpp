// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/cli.hpp"

#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "fvel/bench.hpp"
#include "fvel/c_normalizer.hpp"
#include "fvel/dataset.hpp"
#include "fvel/engine.hpp"
#include "fvel/errors.hpp"
#include "fvel/extraction.hpp"
#include "fvel/root_parser.hpp"
#include "fvel/theory_graph.hpp"

namespace fvel {

namespace {

std::set<std::string> split_csv(const std::string& csv) {
  std::set<std::string> out;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.insert(item);
  return out;
}

int cmd_roots(const std::string& project_root, const std::string& roots_file,
              const std::string& json_out) {
  auto loader = make_fs_loader(project_root);
  auto listing = loader(roots_file);
  if (!listing) throw MissingFileError(roots_file);
  auto sessions = parse_roots(*listing, loader);
  auto order = session_build_order(sessions);

  std::cout << "sessions (" << sessions.size() << "):\n";
  for (const auto& s : sessions) {
    std::cout << "  " << s.name << "  depth=" << s.depth << "  dir=" << s.main_dir();
    if (!s.parents.empty()) {
      std::cout << "  parents=";
      for (std::size_t i = 0; i < s.parents.size(); ++i)
        std::cout << (i ? "," : "") << s.parents[i];
    }
    std::cout << "\n";
  }
  std::cout << "build order:";
  for (const auto& name : order) std::cout << " " << name;
  std::cout << "\n";

  if (!json_out.empty()) {
    DependencyGraph graph;
    for (const auto& s : sessions) {
      graph.sessions.emplace(s.name, s);
      graph.session_order.push_back(s.name);
    }
    write_json_file(json_out, session_info_document(graph));
    std::cout << "wrote " << json_out << "\n";
  }
  return 0;
}

int cmd_graph(const std::string& project_root, const std::string& roots_file,
              const std::string& thy_info_out, bool histograms) {
  auto loader = make_fs_loader(project_root);
  auto listing = loader(roots_file);
  if (!listing) throw MissingFileError(roots_file);
  auto sessions = parse_roots(*listing, loader);
  auto graph = build_graph(sessions, loader);

  int max_depth = 0;
  for (const auto& [path, node] : graph.nodes) max_depth = std::max(max_depth, node.depth);
  std::cout << "theories: " << graph.nodes.size() << "\n";
  std::cout << "sessions: " << graph.sessions.size() << "\n";
  std::cout << "max depth: " << max_depth << "\n";

  if (histograms) {
    auto h = depth_distributions(graph);
    std::cout << "depth histogram by theory (depth count):\n"
              << histogram_to_text(h.by_theory);
    std::cout << "depth histogram by lemma (depth count):\n" << histogram_to_text(h.by_lemma);
  }
  if (!thy_info_out.empty()) {
    write_json_file(thy_info_out, theory_info_document(graph));
    std::cout << "wrote " << thy_info_out << "\n";
  }
  return 0;
}

int cmd_extract(const std::string& project_root, const std::string& out_dir,
                const std::string& prover_selector, const ExtractionOptions& options,
                double step_timeout) {
  auto loader = make_fs_loader(project_root);
  ProverConfig config;
  config.timeout_seconds = step_timeout;
  auto result = run_extraction(loader, config, prover_selector, options);
  emit_dataset(result, out_dir, options);

  std::size_t lemma_count = result.split.train.size() + result.split.val.size() +
                            result.split.test.size() + result.split.test_hard.size();
  std::cout << "theories: " << result.graph.nodes.size() << "\n"
            << "replayed: " << result.records_by_theory.size() << "\n"
            << "skipped:  " << result.skipped.size() << "\n"
            << "lemmas:   " << lemma_count << "  (train " << result.split.train.size()
            << ", val " << result.split.val.size() << ", test " << result.split.test.size()
            << ", test-hard " << result.split.test_hard.size() << ")\n"
            << "wrote " << out_dir << "\n";
  return 0;
}

int cmd_normalize(const std::string& in_path, const std::string& out_path,
                  const std::string& report_path) {
  auto report = normalize(read_file(in_path));
  if (!report_path.empty()) write_json_file(report_path, normalization_report_to_json(report));
  if (report.rejected) {
    std::cerr << "rejected: " << *report.rejected << "\n";
    return 1;
  }
  if (out_path.empty()) {
    std::cout << *report.output;
  } else {
    write_file(out_path, *report.output);
    std::cout << "wrote " << out_path << " (" << report.rewrites.size() << " rewrites)\n";
  }
  return 0;
}

int cmd_verify(const std::string& c_file, const std::string& generator_selector,
               const std::string& prover_selector, int max_attempts, double timeout,
               const std::string& json_out) {
  auto generator = make_generator(generator_selector);
  ProveBudget budget;
  budget.max_attempts = max_attempts;
  budget.total_timeout = timeout;
  ProverConfig config;
  Verdict verdict = verify(c_file, *generator, config, prover_selector, budget);

  if (!json_out.empty()) write_json_file(json_out, verdict_to_json(verdict));
  if (verdict.success) {
    std::cout << "success (" << verdict.attempts << " attempt"
              << (verdict.attempts == 1 ? "" : "s") << ")\n";
    return 0;
  }
  std::cout << "failure";
  if (verdict.failure_kind) std::cout << " [" << to_string(*verdict.failure_kind) << "]";
  if (!verdict.stage.empty()) std::cout << " at stage " << verdict.stage;
  std::cout << "\n";
  // A source rejected by normalization is a verification failure; only
  // genuinely environmental problems exit 2.
  if (verdict.failure_kind == FailureKind::Infrastructure && verdict.stage != "normalize")
    return 2;
  return 1;
}

int cmd_bench(const std::string& dir, const EngineConfig& config,
              const LoadOptions& load_options, int parallelism, double per_task_timeout,
              const std::string& report_path) {
  auto tasks = load_benchmark(dir, load_options);
  auto report = run_benchmark(tasks, config, parallelism, per_task_timeout);
  std::cout << report_to_table(report);
  if (!report_path.empty()) {
    write_json_file(report_path, report_to_json(report));
    std::cout << "wrote " << report_path << "\n";
  }
  return 0;
}

// Human-in-the-loop stepping: print the proof state, read the next step.
int cmd_repl(const std::string& prover_selector, const std::string& working_dir) {
  ProverConfig config;
  config.working_directory = working_dir;
  Session session = open_session(config, prover_selector);
  std::cout << "session " << session.handle().session_id
            << " open; enter steps, blank line or \"exit\" to stop\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    if (line.empty() || line == "exit") break;
    ProverReply reply = session.apply_step(line);
    if (reply.cheating) std::cout << "[cheating keyword detected]\n";
    if (!reply.ok)
      for (const auto& e : reply.errors) std::cout << "error: " << e << "\n";
    std::cout << (reply.state.empty() ? (reply.ok ? "(no open goals)" : "(rejected)")
                                      : reply.state)
              << "\n";
  }
  session.close();
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"fvel - prover-backed C verification toolkit and dataset extractor"};
  app.require_subcommand(1);

  // roots
  auto* roots = app.add_subcommand("roots", "parse ROOT files into session specs");
  std::string project_root, roots_file = "/ROOTS", json_out;
  roots->add_option("project-root", project_root, "project directory")->required();
  roots->add_option("--roots-file", roots_file, "ROOTS listing path inside the project");
  roots->add_option("--json", json_out, "write session info JSON here");

  // graph
  auto* graph = app.add_subcommand("graph", "build the theory dependency graph");
  std::string g_root, g_roots_file = "/ROOTS", g_out;
  bool g_hist = false;
  graph->add_option("project-root", g_root, "project directory")->required();
  graph->add_option("--roots-file", g_roots_file, "ROOTS listing path inside the project");
  graph->add_option("--thy-info", g_out, "write theory info JSON here");
  graph->add_flag("--histograms", g_hist, "print depth histograms");

  // extract
  auto* extract = app.add_subcommand("extract", "replay theories and emit the dataset");
  std::string e_root, e_out, e_prover = "replay:transcript.json";
  std::string e_hard = "SysInit,SysInitExamples,LibTest", e_exclude, e_ratios = ".895,.038,.037";
  std::uint64_t e_seed = 0;
  double e_step_timeout = 120.0;
  std::size_t e_max_chars = 4096;
  extract->add_option("project-root", e_root, "project directory")->required();
  extract->add_option("--out", e_out, "output directory")->required();
  extract->add_option("--prover", e_prover, "replay:<transcript.json> or tcp:<host:port>");
  extract->add_option("--hard-sessions", e_hard, "comma-separated test-hard sessions");
  extract->add_option("--exclude-sessions", e_exclude, "sessions not replayed for lemmas");
  extract->add_option("--ratios", e_ratios, "train,val,test ratios");
  extract->add_option("--seed", e_seed, "split shuffle seed");
  extract->add_option("--timeout", e_step_timeout, "per-step prover timeout (s)");
  extract->add_option("--max-finetune-chars", e_max_chars,
                      "drop fine-tuning records longer than this");

  // normalize
  auto* norm = app.add_subcommand("normalize", "rewrite a C file for the translator");
  std::string n_in, n_out, n_report;
  norm->add_option("input", n_in, "C source file")->required();
  norm->add_option("-o,--output", n_out, "write normalized C here (stdout otherwise)");
  norm->add_option("--report", n_report, "write the rewrite report JSON here");

  // verify
  auto* ver = app.add_subcommand("verify", "verify one C file through the prover");
  std::string v_file, v_generator = "http", v_prover = "tcp", v_json;
  int v_attempts = 3;
  double v_timeout = 300.0;
  ver->add_option("file", v_file, "C source file")->required();
  ver->add_option("--generator", v_generator, "scripted:<path>, http or http(s)://url");
  ver->add_option("--prover", v_prover, "replay:<path> or tcp:<host:port>");
  ver->add_option("--max-attempts", v_attempts, "proof generation attempts");
  ver->add_option("--timeout", v_timeout, "total verification timeout (s)");
  ver->add_option("--json", v_json, "write the verdict JSON here");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark directory");
  std::string b_dir, b_generator = "http", b_prover = "tcp", b_report;
  int b_parallel = 1, b_attempts = 3;
  double b_timeout = 300.0;
  std::uint64_t b_seed = 0;
  std::size_t b_sample = 0;
  bench->add_option("dir", b_dir, "benchmark directory (<dir>/**/*.c)")->required();
  bench->add_option("--generator", b_generator, "scripted:<path>, http or http(s)://url");
  bench->add_option("--prover", b_prover, "replay:<path> or tcp:<host:port>");
  bench->add_option("--sample", b_sample, "seeded sample size (0 = all)");
  bench->add_option("--seed", b_seed, "sampling seed");
  bench->add_option("--parallel", b_parallel, "worker threads");
  bench->add_option("--timeout", b_timeout, "per-task timeout (s)");
  bench->add_option("--max-attempts", b_attempts, "proof generation attempts per task");
  bench->add_option("--report", b_report, "write the report JSON here");

  // repl
  auto* repl = app.add_subcommand("repl", "interactive proof stepping");
  std::string r_prover = "tcp", r_workdir = ".";
  repl->add_option("--prover", r_prover, "replay:<path> or tcp:<host:port>");
  repl->add_option("--working-dir", r_workdir, "prover working directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help or the parse error
    return e.get_name() == "CallForHelp" ? 0 : 2;
  }

  try {
    if (roots->parsed()) return cmd_roots(project_root, roots_file, json_out);
    if (graph->parsed()) return cmd_graph(g_root, g_roots_file, g_out, g_hist);
    if (extract->parsed()) {
      ExtractionOptions options;
      options.hard_sessions = split_csv(e_hard);
      options.exclude_sessions = split_csv(e_exclude);
      options.seed = e_seed;
      options.max_finetune_chars = e_max_chars;
      auto ratio_set = e_ratios;
      double r[3] = {0.895, 0.038, 0.037};
      std::istringstream rs(ratio_set);
      std::string part;
      for (double& ri : r)
        if (std::getline(rs, part, ',')) ri = std::stod(part);
      options.train_ratio = r[0];
      options.val_ratio = r[1];
      options.test_ratio = r[2];
      return cmd_extract(e_root, e_out, e_prover, options, e_step_timeout);
    }
    if (norm->parsed()) return cmd_normalize(n_in, n_out, n_report);
    if (ver->parsed())
      return cmd_verify(v_file, v_generator, v_prover, v_attempts, v_timeout, v_json);
    if (bench->parsed()) {
      EngineConfig config;
      config.generator_selector = b_generator;
      config.prover_selector = b_prover;
      config.budget.max_attempts = b_attempts;
      LoadOptions load_options;
      if (b_sample > 0) load_options.sample = b_sample;
      load_options.seed = b_seed;
      return cmd_bench(b_dir, config, load_options, b_parallel, b_timeout, b_report);
    }
    if (repl->parsed()) return cmd_repl(r_prover, r_workdir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace fvel
