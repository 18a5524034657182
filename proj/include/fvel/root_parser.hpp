// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.
//
// Parses Isabelle ROOT build files into session specifications by keyword
// matching: `session` blocks with their name, optional `in` directory,
// base parent after `=`, `sessions` parents, `directories` and `theories`
// lists. Everything else (options, descriptions, document sections) is
// skipped, never fatal.

#pragma once

#include <string>
#include <vector>

#include "fvel/paths.hpp"

namespace fvel {

struct SessionSpec {
  std::string name;                          // unquoted
  std::vector<std::string> parents;          // verbatim, quotes preserved
  std::vector<std::string> entry_theories;   // unquoted theory names
  std::string root_dir;                      // ROOT file's directory, canonical ("/spec")
  std::string relative_dir;                  // main working dir relative to root_dir ("." default)
  std::vector<std::string> additional_dirs;  // relative to relative_dir
  int depth = 0;                             // 1 + max in-project parent depth; 1 when none

  // Main working directory in canonical project form.
  std::string main_dir() const { return join_path(root_dir, relative_dir); }
  // All theory directories, main first, canonical.
  std::vector<std::string> theory_dirs() const;
};

// Strips one quote layer for parent-name comparisons; stored parents keep
// their quotes.
std::string session_parent_key(const std::string& parent);

// `roots_listing` is the ROOTS file content: one ROOT path or directory per
// line ('#' comments and blanks skipped). Each entry's ROOT file is fetched
// through `loader`. Sessions come back in listing order with depth computed
// over in-project parents (external parents contribute nothing).
std::vector<SessionSpec> parse_roots(const std::string& roots_listing,
                                     const FileLoader& loader);

// Parses the session blocks of one ROOT file; `root_path` is the canonical
// path of the file (for error messages and root_dir). No depth computation.
std::vector<SessionSpec> parse_root_file(const std::string& source,
                                         const std::string& root_path);

// Fills in depth for every session and checks name uniqueness.
void resolve_session_depths(std::vector<SessionSpec>& sessions);

// Topological order over in-project parent edges, ties broken by listing
// order. Throws CyclicSessionsError naming one cycle.
std::vector<std::string> session_build_order(const std::vector<SessionSpec>& sessions);

}  // namespace fvel
