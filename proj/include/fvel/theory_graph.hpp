// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Builds the theory dependency graph: import headers are parsed between
// `imports` and `begin`, each import is resolved through the owning
// session's directories (then parent sessions', recursively), and per-node
// depth is the longest in-project import chain below the node plus one.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fvel/proof_script.hpp"
#include "fvel/root_parser.hpp"

namespace fvel {

struct TheoryNode {
  std::string path;  // canonical project path, "/lib/Word_Lib/More_Word.thy"
  std::string name;
  // import name (as written, unquoted) -> directory of the resolved file,
  // "" for external imports; source order
  std::vector<std::pair<std::string, std::string>> dependency;
  int depth = 1;
  std::vector<std::string> child;  // dependent theory paths, sorted
  std::string session;
  std::vector<std::string> related_c_code;  // own + ancestors, deduplicated, sorted
  std::vector<LemmaRecord> lemmas;

  std::vector<std::string> dep_paths;     // resolved in-project imports, source order
  std::vector<std::string> direct_c_refs; // C files referenced by this theory alone
};

struct DependencyGraph {
  std::map<std::string, TheoryNode> nodes;  // keyed by path
  std::vector<std::string> order;           // node creation order
  std::map<std::string, SessionSpec> sessions;
  std::vector<std::string> session_order;   // ROOT listing order
  std::map<std::string, std::vector<std::string>> session_theories;  // discovery order
};

struct GraphConfig {
  // Commands whose quoted argument names a C file pulled into the proof.
  std::set<std::string> c_ref_commands = {"install_C_file", "include_C_file",
                                          "external_file"};
  std::set<std::string> c_ref_suffixes = {".c", ".c_pp"};
  // Unqualified imports that are external by convention.
  std::set<std::string> known_external_theories = {"Main", "Complex_Main", "Pure",
                                                   "HOL", "HOL.Main"};
};

// Import names in source order, comments stripped. Throws NoHeaderError when
// the `imports` ... `begin` region is missing.
std::vector<std::string> parse_imports(std::string_view theory_source);

// C files referenced directly by this source (quoted argument after any of
// `config.c_ref_commands`, filtered by suffix), verbatim and in order.
std::vector<std::string> scan_c_references(std::string_view theory_source,
                                           const GraphConfig& config = {});

DependencyGraph build_graph(const std::vector<SessionSpec>& sessions,
                            const FileLoader& loader, const GraphConfig& config = {});

struct DepthHistograms {
  std::map<int, long long> by_theory;
  std::map<int, long long> by_lemma;
};

DepthHistograms depth_distributions(const DependencyGraph& graph);

// Union of the node's direct C references and all ancestors', deduplicated
// and sorted. build_graph precomputes this into node.related_c_code.
std::vector<std::string> related_c_code(const DependencyGraph& graph,
                                        const TheoryNode& node);

// Import-relation degree (in-project imports + dependents) per node.
// Diagnostic only: "depth" everywhere else means longest import chain.
std::map<std::string, int> degree_by_theory(const DependencyGraph& graph);

// Two-column "depth count" lines, ascending depth.
std::string histogram_to_text(const std::map<int, long long>& histogram);

}  // namespace fvel
