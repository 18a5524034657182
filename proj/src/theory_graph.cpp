// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/theory_graph.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "fvel/errors.hpp"
#include "fvel/outer_syntax.hpp"

namespace fvel {

std::vector<std::string> parse_imports(std::string_view theory_source) {
  const auto tokens = tokenize(theory_source);

  std::size_t i = 0;
  while (i < tokens.size() &&
         !(tokens[i].kind == Token::Kind::Word && tokens[i].text == "theory"))
    ++i;
  while (i < tokens.size() &&
         !(tokens[i].kind == Token::Kind::Word && tokens[i].text == "imports"))
    ++i;
  if (i == tokens.size())
    throw NoHeaderError("no imports...begin header in theory source");

  std::vector<std::string> imports;
  for (++i; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == Token::Kind::Word && t.text == "begin") return imports;
    if (t.kind == Token::Kind::Word || t.kind == Token::Kind::Quoted)
      imports.push_back(unquote(t.text));
  }
  throw NoHeaderError("imports header not terminated by begin");
}

std::vector<std::string> scan_c_references(std::string_view theory_source,
                                           const GraphConfig& config) {
  std::vector<std::string> refs;
  const auto tokens = tokenize(theory_source);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].kind != Token::Kind::Word) continue;
    if (config.c_ref_commands.count(std::string(tokens[i].text)) == 0) continue;
    if (tokens[i + 1].kind != Token::Kind::Quoted) continue;
    std::string ref = unquote(tokens[i + 1].text);
    for (const auto& suffix : config.c_ref_suffixes) {
      if (ref.size() >= suffix.size() &&
          ref.compare(ref.size() - suffix.size(), suffix.size(), suffix) == 0) {
        refs.push_back(ref);
        break;
      }
    }
  }
  return refs;
}

namespace {

class GraphBuilder {
 public:
  GraphBuilder(const std::vector<SessionSpec>& sessions, const FileLoader& loader,
               const GraphConfig& config)
      : loader_(loader), config_(config) {
    for (const auto& s : sessions) {
      graph_.sessions.emplace(s.name, s);
      graph_.session_order.push_back(s.name);
      graph_.session_theories[s.name];  // keep every session present
      for (const auto& dir : s.theory_dirs()) dir_owner_.try_emplace(dir, s.name);
    }
  }

  DependencyGraph build() {
    for (const auto& name : session_build_order(ordered_sessions())) {
      const SessionSpec& s = graph_.sessions.at(name);
      for (const auto& entry : s.entry_theories) {
        std::string path = resolve(entry, s.main_dir(), s, entry);
        if (!path.empty()) load(path);
      }
    }
    finalize();
    return std::move(graph_);
  }

 private:
  std::vector<SessionSpec> ordered_sessions() const {
    std::vector<SessionSpec> out;
    out.reserve(graph_.session_order.size());
    for (const auto& n : graph_.session_order) out.push_back(graph_.sessions.at(n));
    return out;
  }

  // Resolution order: the importing directory, the session's directories,
  // then parent sessions' directories recursively; first hit wins. Returns
  // "" for external imports. Throws UnresolvedTheoryError for unqualified
  // names matching nothing and no external convention.
  std::string resolve(const std::string& import_name, const std::string& importer_dir,
                      const SessionSpec& session, const std::string& importer_label) {
    if (import_name.find('/') != std::string::npos) {
      std::string cand = join_path(importer_dir, import_name + ".thy");
      if (exists(cand)) return cand;
      throw UnresolvedTheoryError(import_name, importer_label);
    }

    auto dot = import_name.find('.');
    if (dot != std::string::npos) {
      // Session-qualified: resolvable inside an in-project session of that
      // name, external otherwise.
      std::string session_part = import_name.substr(0, dot);
      std::string theory_part = import_name.substr(dot + 1);
      auto it = graph_.sessions.find(session_part);
      if (it != graph_.sessions.end()) {
        for (const auto& dir : it->second.theory_dirs()) {
          std::string cand = join_path(dir, theory_part + ".thy");
          if (exists(cand)) return cand;
        }
      }
      return "";
    }

    std::vector<std::string> dirs{importer_dir};
    std::set<std::string> visited_sessions;
    collect_session_dirs(session, dirs, visited_sessions);
    for (const auto& dir : dirs) {
      std::string cand = join_path(dir, import_name + ".thy");
      if (exists(cand)) return cand;
    }
    if (config_.known_external_theories.count(import_name) > 0) return "";
    throw UnresolvedTheoryError(import_name, importer_label);
  }

  void collect_session_dirs(const SessionSpec& session, std::vector<std::string>& dirs,
                            std::set<std::string>& visited) {
    if (!visited.insert(session.name).second) return;
    for (const auto& dir : session.theory_dirs())
      if (std::find(dirs.begin(), dirs.end(), dir) == dirs.end()) dirs.push_back(dir);
    for (const auto& parent : session.parents) {
      auto it = graph_.sessions.find(session_parent_key(parent));
      if (it != graph_.sessions.end()) collect_session_dirs(it->second, dirs, visited);
    }
  }

  bool exists(const std::string& path) {
    auto cached = source_cache_.find(path);
    if (cached != source_cache_.end()) return cached->second.has_value();
    auto src = loader_(path);
    bool ok = src.has_value();
    source_cache_.emplace(path, std::move(src));
    return ok;
  }

  void load(const std::string& path) {
    if (graph_.nodes.count(path)) return;
    if (std::find(stack_.begin(), stack_.end(), path) != stack_.end()) {
      auto at = std::find(stack_.begin(), stack_.end(), path);
      std::vector<std::string> cycle(at, stack_.end());
      cycle.push_back(path);
      throw CycleDetectedError(cycle);
    }

    exists(path);  // populate cache
    const auto& source_opt = source_cache_.at(path);
    if (!source_opt) throw MissingFileError(path);
    const std::string& source = *source_opt;

    const std::string node_dir = dir_of(path);
    std::string owner = owner_of_dir(node_dir);
    const SessionSpec& owner_spec = graph_.sessions.at(owner);

    TheoryNode node;
    node.path = path;
    node.name = stem_of(path);
    node.session = owner;
    node.direct_c_refs = scan_c_references(source, config_);

    stack_.push_back(path);
    for (const auto& import_name : parse_imports(source)) {
      std::string dep_path = resolve(import_name, node_dir, owner_spec, path);
      node.dependency.emplace_back(import_name, dep_path.empty() ? "" : dir_of(dep_path));
      if (!dep_path.empty()) {
        node.dep_paths.push_back(dep_path);
        load(dep_path);
      }
    }
    stack_.pop_back();

    graph_.nodes.emplace(path, std::move(node));
    graph_.order.push_back(path);
    graph_.session_theories[owner].push_back(path);
  }

  std::string owner_of_dir(const std::string& dir) const {
    auto it = dir_owner_.find(dir);
    if (it != dir_owner_.end()) return it->second;
    // A theory reached through a relative-path import may sit outside any
    // declared directory; fall back to the nearest declared ancestor dir.
    std::string probe = dir;
    while (probe != "/") {
      probe = dir_of(probe);
      auto up = dir_owner_.find(probe);
      if (up != dir_owner_.end()) return up->second;
    }
    return graph_.session_order.front();
  }

  void finalize() {
    // Depth: 1 + longest in-project chain below; children: inverse edges.
    std::function<int(const std::string&)> depth_of = [&](const std::string& path) -> int {
      TheoryNode& node = graph_.nodes.at(path);
      if (node.depth > 0) return node.depth;
      int best = 0;
      for (const auto& dep : node.dep_paths) best = std::max(best, depth_of(dep));
      node.depth = best + 1;
      return node.depth;
    };
    for (auto& [path, node] : graph_.nodes) node.depth = 0;
    for (auto& [path, node] : graph_.nodes) depth_of(path);

    for (const auto& [path, node] : graph_.nodes)
      for (const auto& dep : node.dep_paths) graph_.nodes.at(dep).child.push_back(path);
    for (auto& [path, node] : graph_.nodes) {
      std::sort(node.child.begin(), node.child.end());
      node.child.erase(std::unique(node.child.begin(), node.child.end()),
                       node.child.end());
      node.related_c_code = related_c_code(graph_, node);
    }
  }

  const FileLoader& loader_;
  const GraphConfig& config_;
  DependencyGraph graph_;
  std::map<std::string, std::string> dir_owner_;
  std::map<std::string, std::optional<std::string>> source_cache_;
  std::vector<std::string> stack_;
};

}  // namespace

DependencyGraph build_graph(const std::vector<SessionSpec>& sessions,
                            const FileLoader& loader, const GraphConfig& config) {
  return GraphBuilder(sessions, loader, config).build();
}

DepthHistograms depth_distributions(const DependencyGraph& graph) {
  DepthHistograms h;
  for (const auto& [path, node] : graph.nodes) {
    h.by_theory[node.depth] += 1;
    if (!node.lemmas.empty())
      h.by_lemma[node.depth] += static_cast<long long>(node.lemmas.size());
  }
  return h;
}

std::vector<std::string> related_c_code(const DependencyGraph& graph,
                                        const TheoryNode& node) {
  std::set<std::string> acc;
  std::set<std::string> seen;
  std::function<void(const TheoryNode&)> walk = [&](const TheoryNode& n) {
    if (!seen.insert(n.path).second) return;
    acc.insert(n.direct_c_refs.begin(), n.direct_c_refs.end());
    for (const auto& dep : n.dep_paths) walk(graph.nodes.at(dep));
  };
  walk(node);
  return {acc.begin(), acc.end()};
}

std::map<std::string, int> degree_by_theory(const DependencyGraph& graph) {
  std::map<std::string, int> degrees;
  for (const auto& [path, node] : graph.nodes)
    degrees[path] = static_cast<int>(node.dep_paths.size() + node.child.size());
  return degrees;
}

std::string histogram_to_text(const std::map<int, long long>& histogram) {
  std::ostringstream os;
  for (const auto& [depth, count] : histogram) os << depth << " " << count << "\n";
  return os.str();
}

}  // namespace fvel
