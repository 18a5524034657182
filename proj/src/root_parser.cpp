// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/root_parser.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fvel/errors.hpp"
#include "fvel/outer_syntax.hpp"

namespace fvel {

namespace {

const std::set<std::string> kSectionKeywords = {
    "description",      "options",      "sessions",         "directories",
    "theories",         "document_theories", "document_files",
    "export_files",     "export_classpath"};

bool is_section_keyword(const Token& t) {
  return t.kind == Token::Kind::Word && kSectionKeywords.count(std::string(t.text)) > 0;
}

bool is_block_terminator(const Token& t) {
  return t.kind == Token::Kind::Word && (t.text == "session" || t.text == "chapter" ||
                                         t.text == "chapter_definition");
}

bool is_name_token(const Token& t) {
  return t.kind == Token::Kind::Word || t.kind == Token::Kind::Quoted;
}

// Skips a balanced (...) or [...] group starting at tokens[i]; returns the
// index just past the closer.
std::size_t skip_group(const std::vector<Token>& tokens, std::size_t i, char open,
                       char close) {
  int depth = 0;
  for (; i < tokens.size(); ++i) {
    if (tokens[i].kind != Token::Kind::Symbol) continue;
    if (tokens[i].text[0] == open) ++depth;
    if (tokens[i].text[0] == close && --depth == 0) return i + 1;
  }
  return i;
}

}  // namespace

std::vector<std::string> SessionSpec::theory_dirs() const {
  std::vector<std::string> dirs;
  dirs.push_back(main_dir());
  for (const auto& d : additional_dirs) {
    std::string full = join_path(main_dir(), d);
    if (std::find(dirs.begin(), dirs.end(), full) == dirs.end()) dirs.push_back(full);
  }
  return dirs;
}

std::string session_parent_key(const std::string& parent) { return unquote(parent); }

std::vector<SessionSpec> parse_root_file(const std::string& source,
                                         const std::string& root_path) {
  const std::string file = canon_path(root_path);
  const std::string root_dir = dir_of(file);
  const auto tokens = tokenize(source);

  std::vector<SessionSpec> sessions;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (!(tokens[i].kind == Token::Kind::Word && tokens[i].text == "session")) {
      ++i;
      continue;
    }
    const int session_line = tokens[i].line;
    ++i;
    if (i >= tokens.size() || !is_name_token(tokens[i]) || is_section_keyword(tokens[i]) ||
        is_block_terminator(tokens[i])) {
      throw MalformedRootError(file, session_line, "session block missing name");
    }
    SessionSpec spec;
    spec.name = unquote(tokens[i].text);
    spec.root_dir = root_dir;
    spec.relative_dir = ".";
    ++i;

    // Optional (groups).
    if (i < tokens.size() && tokens[i].kind == Token::Kind::Symbol && tokens[i].text == "(")
      i = skip_group(tokens, i, '(', ')');
    // Optional `in <dir>`.
    if (i + 1 < tokens.size() && tokens[i].kind == Token::Kind::Word &&
        tokens[i].text == "in" && is_name_token(tokens[i + 1])) {
      spec.relative_dir = unquote(tokens[i + 1].text);
      i += 2;
    }
    // `= [parent +]`.
    if (i < tokens.size() && tokens[i].kind == Token::Kind::Symbol && tokens[i].text == "=") {
      ++i;
      if (i + 1 < tokens.size() && is_name_token(tokens[i]) &&
          !is_section_keyword(tokens[i]) && !is_block_terminator(tokens[i]) &&
          tokens[i + 1].kind == Token::Kind::Symbol && tokens[i + 1].text == "+") {
        spec.parents.emplace_back(tokens[i].text);
        i += 2;
      }
    }

    bool saw_theories = false;
    while (i < tokens.size() && !is_block_terminator(tokens[i])) {
      if (!is_section_keyword(tokens[i])) {
        ++i;  // unknown syntax is skipped, not fatal
        continue;
      }
      const std::string section(tokens[i].text);
      ++i;
      if (section == "theories") {
        saw_theories = true;
        if (i < tokens.size() && tokens[i].kind == Token::Kind::Symbol &&
            tokens[i].text == "[")
          i = skip_group(tokens, i, '[', ']');
        while (i < tokens.size() && !is_section_keyword(tokens[i]) &&
               !is_block_terminator(tokens[i])) {
          if (tokens[i].kind == Token::Kind::Symbol && tokens[i].text == "(") {
            i = skip_group(tokens, i, '(', ')');  // per-entry markers like (global)
            continue;
          }
          if (is_name_token(tokens[i])) spec.entry_theories.push_back(unquote(tokens[i].text));
          ++i;
        }
      } else if (section == "sessions" || section == "directories") {
        while (i < tokens.size() && is_name_token(tokens[i]) &&
               !is_section_keyword(tokens[i]) && !is_block_terminator(tokens[i])) {
          if (section == "sessions")
            spec.parents.emplace_back(tokens[i].text);  // verbatim, quotes kept
          else
            spec.additional_dirs.push_back(unquote(tokens[i].text));
          ++i;
        }
      } else {
        // description/options/document_*/export_*: skip payload tokens.
        while (i < tokens.size() && !is_section_keyword(tokens[i]) &&
               !is_block_terminator(tokens[i])) {
          if (tokens[i].kind == Token::Kind::Symbol && tokens[i].text == "[") {
            i = skip_group(tokens, i, '[', ']');
            continue;
          }
          ++i;
        }
      }
    }
    if (!saw_theories)
      throw MalformedRootError(file, session_line,
                               "session block missing \"theories\" marker");
    sessions.push_back(std::move(spec));
  }
  return sessions;
}

void resolve_session_depths(std::vector<SessionSpec>& sessions) {
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < sessions.size(); ++k) {
    if (!index.emplace(sessions[k].name, k).second)
      throw DuplicateSessionError(sessions[k].name);
  }

  std::vector<int> state(sessions.size(), 0);  // 0 unvisited, 1 on stack, 2 done
  std::vector<std::string> stack;

  auto depth_of = [&](auto&& self, std::size_t k) -> int {
    if (state[k] == 2) return sessions[k].depth;
    if (state[k] == 1) {
      auto at = std::find(stack.begin(), stack.end(), sessions[k].name);
      throw CyclicSessionsError({at, stack.end()});
    }
    state[k] = 1;
    stack.push_back(sessions[k].name);
    int best = 0;
    for (const auto& parent : sessions[k].parents) {
      auto it = index.find(session_parent_key(parent));
      if (it == index.end()) continue;  // external parents contribute depth 0
      best = std::max(best, self(self, it->second));
    }
    stack.pop_back();
    state[k] = 2;
    sessions[k].depth = best + 1;
    return sessions[k].depth;
  };
  for (std::size_t k = 0; k < sessions.size(); ++k) depth_of(depth_of, k);
}

std::vector<SessionSpec> parse_roots(const std::string& roots_listing,
                                     const FileLoader& loader) {
  std::vector<SessionSpec> sessions;
  std::istringstream lines(roots_listing);
  std::string line;
  while (std::getline(lines, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    std::string entry = line.substr(first, last - first + 1);
    if (entry[0] == '#') continue;
    std::string root_path = canon_path(entry);
    if (base_name(root_path) != "ROOT") root_path = join_path(root_path, "ROOT");
    auto source = loader(root_path);
    if (!source) throw MissingFileError(root_path);
    auto parsed = parse_root_file(*source, root_path);
    sessions.insert(sessions.end(), std::make_move_iterator(parsed.begin()),
                    std::make_move_iterator(parsed.end()));
  }
  resolve_session_depths(sessions);
  return sessions;
}

std::vector<std::string> session_build_order(const std::vector<SessionSpec>& sessions) {
  const std::size_t n = sessions.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t k = 0; k < n; ++k) index.emplace(sessions[k].name, k);

  std::vector<std::vector<std::size_t>> children(n);
  std::vector<int> indegree(n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    for (const auto& parent : sessions[k].parents) {
      auto it = index.find(session_parent_key(parent));
      if (it == index.end()) continue;
      children[it->second].push_back(k);
      ++indegree[k];
    }
  }

  std::set<std::size_t> ready;
  for (std::size_t k = 0; k < n; ++k)
    if (indegree[k] == 0) ready.insert(k);

  std::vector<std::string> order;
  order.reserve(n);
  while (!ready.empty()) {
    std::size_t k = *ready.begin();  // smallest listing index first
    ready.erase(ready.begin());
    order.push_back(sessions[k].name);
    for (std::size_t c : children[k])
      if (--indegree[c] == 0) ready.insert(c);
  }
  if (order.size() != n) {
    // Walk parent edges among the leftovers until a name repeats.
    std::size_t cur = 0;
    while (indegree[cur] == 0) ++cur;
    std::vector<std::size_t> chain;
    std::set<std::size_t> seen;
    while (!seen.count(cur)) {
      seen.insert(cur);
      chain.push_back(cur);
      for (const auto& parent : sessions[cur].parents) {
        auto it = index.find(session_parent_key(parent));
        if (it != index.end() && indegree[it->second] > 0) {
          cur = it->second;
          break;
        }
      }
    }
    auto at = std::find(chain.begin(), chain.end(), cur);
    std::vector<std::string> cycle;
    for (auto it = at; it != chain.end(); ++it) cycle.push_back(sessions[*it].name);
    throw CyclicSessionsError(cycle);
  }
  return order;
}

}  // namespace fvel
