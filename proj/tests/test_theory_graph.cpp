// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include <functional>
#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "fvel/errors.hpp"
#include "fvel/theory_graph.hpp"

using namespace fvel;

namespace {

FileLoader map_loader(std::map<std::string, std::string> files) {
  return [files = std::move(files)](const std::string& path) -> std::optional<std::string> {
    auto it = files.find(path);
    if (it == files.end()) return std::nullopt;
    return it->second;
  };
}

SessionSpec flat_session(std::string name, std::vector<std::string> theories) {
  SessionSpec s;
  s.name = std::move(name);
  s.root_dir = "/";
  s.relative_dir = "thys";
  s.entry_theories = std::move(theories);
  return s;
}

std::string theory_source(const std::string& name, const std::vector<std::string>& imports) {
  std::string src = "theory " + name + "\n  imports";
  if (imports.empty()) src += " Main";
  for (const auto& imp : imports) src += " " + imp;
  src += "\nbegin\n\nend\n";
  return src;
}

}  // namespace

TEST_CASE("parse_imports returns names in order, comments stripped") {
  CHECK(parse_imports("theory More_Word\n  imports\n    \"HOL-Library.Word\"\n"
                      "    More_Arithmetic\n    More_Divides\n    More_Bit_Ring\nbegin\nend") ==
        std::vector<std::string>{"HOL-Library.Word", "More_Arithmetic", "More_Divides",
                                 "More_Bit_Ring"});
  CHECK(parse_imports("theory T imports begin end").empty());
  CHECK(parse_imports("theory T\nimports A (* block\ncomment B *) C\nbegin") ==
        std::vector<std::string>{"A", "C"});
  CHECK_THROWS_AS(parse_imports("theory T begin end"), NoHeaderError);
  CHECK_THROWS_AS(parse_imports("theory T imports A B"), NoHeaderError);
}

TEST_CASE("build_graph: chain depths and the More_Word-shaped fixture") {
  auto loader = map_loader({
      {"/thys/T1.thy", theory_source("T1", {})},
      {"/thys/T2.thy", theory_source("T2", {"T1"})},
      {"/thys/T3.thy", theory_source("T3", {"T2"})},
  });
  auto graph = build_graph({flat_session("S", {"T3"})}, loader);
  REQUIRE(graph.nodes.size() == 3);
  CHECK(graph.nodes.at("/thys/T1.thy").depth == 1);
  CHECK(graph.nodes.at("/thys/T2.thy").depth == 2);
  CHECK(graph.nodes.at("/thys/T3.thy").depth == 3);
  CHECK(graph.nodes.at("/thys/T1.thy").child ==
        std::vector<std::string>{"/thys/T2.thy"});
  CHECK(graph.nodes.at("/thys/T3.thy").session == "S");
}

TEST_CASE("imports resolve to dirs; externals get empty paths") {
  SessionSpec word_lib;
  word_lib.name = "Word_Lib";
  word_lib.root_dir = "/lib";
  word_lib.relative_dir = "Word_Lib";
  word_lib.entry_theories = {"More_Word"};
  auto loader = map_loader({
      {"/lib/Word_Lib/More_Word.thy",
       theory_source("More_Word",
                     {"\"HOL-Library.Word\"", "More_Arithmetic", "More_Divides",
                      "More_Bit_Ring"})},
      {"/lib/Word_Lib/More_Arithmetic.thy", theory_source("More_Arithmetic", {})},
      {"/lib/Word_Lib/More_Divides.thy", theory_source("More_Divides", {})},
      {"/lib/Word_Lib/More_Bit_Ring.thy", theory_source("More_Bit_Ring", {})},
  });
  auto graph = build_graph({word_lib}, loader);
  const TheoryNode& node = graph.nodes.at("/lib/Word_Lib/More_Word.thy");
  REQUIRE(node.dependency.size() == 4);
  CHECK(node.dependency[0] == std::pair<std::string, std::string>{"HOL-Library.Word", ""});
  CHECK(node.dependency[1] ==
        std::pair<std::string, std::string>{"More_Arithmetic", "/lib/Word_Lib"});
  CHECK(node.depth == 2);
  CHECK(node.name == "More_Word");
  CHECK(node.session == "Word_Lib");
}

TEST_CASE("unresolved unqualified import raises; qualified is external") {
  auto loader = map_loader({{"/thys/A.thy", theory_source("A", {"Nowhere_To_Be_Found"})}});
  CHECK_THROWS_AS(build_graph({flat_session("S", {"A"})}, loader), UnresolvedTheoryError);

  auto loader2 = map_loader({{"/thys/B.thy", theory_source("B", {"\"Other-Session.Thy\""})}});
  auto graph = build_graph({flat_session("S", {"B"})}, loader2);
  CHECK(graph.nodes.at("/thys/B.thy").dependency[0].second == "");
}

TEST_CASE("import cycles are detected and reported") {
  auto loader = map_loader({
      {"/thys/A.thy", theory_source("A", {"B"})},
      {"/thys/B.thy", theory_source("B", {"A"})},
  });
  try {
    build_graph({flat_session("S", {"A"})}, loader);
    FAIL("expected CycleDetectedError");
  } catch (const CycleDetectedError& e) {
    CHECK(e.cycle.size() >= 2);
  }
}

TEST_CASE("random 200-node DAG depths match a brute-force longest path") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 5; ++round) {
    const int n = 50 + static_cast<int>(rng() % 151);
    std::map<std::string, std::string> files;
    std::vector<std::vector<int>> deps(n);
    std::vector<std::string> entries;
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> imports;
      for (int j = 0; j < i; ++j) {
        if (rng() % 7 == 0) {
          deps[i].push_back(j);
          imports.push_back("T" + std::to_string(j));
        }
      }
      files["/thys/T" + std::to_string(i) + ".thy"] =
          theory_source("T" + std::to_string(i), imports);
      entries.push_back("T" + std::to_string(i));
    }
    auto graph = build_graph({flat_session("S", entries)}, map_loader(files));
    REQUIRE(graph.nodes.size() == static_cast<std::size_t>(n));

    std::vector<int> oracle(n, 0);
    auto longest = [&](auto&& self, int v) -> int {
      if (oracle[v]) return oracle[v];
      int best = 0;
      for (int d : deps[v]) best = std::max(best, self(self, d));
      return oracle[v] = best + 1;
    };
    for (int v = 0; v < n; ++v)
      CHECK(graph.nodes.at("/thys/T" + std::to_string(v) + ".thy").depth ==
            longest(longest, v));
  }
}

TEST_CASE("rebuilding from identical inputs yields an identical graph") {
  std::map<std::string, std::string> files = {
      {"/thys/A.thy", theory_source("A", {})},
      {"/thys/B.thy", theory_source("B", {"A"})},
      {"/thys/C.thy", theory_source("C", {"A", "B"})},
  };
  auto g1 = build_graph({flat_session("S", {"C", "B"})}, map_loader(files));
  auto g2 = build_graph({flat_session("S", {"C", "B"})}, map_loader(files));
  REQUIRE(g1.order == g2.order);
  for (const auto& [path, node] : g1.nodes) {
    CHECK(node.child == g2.nodes.at(path).child);
    CHECK(node.depth == g2.nodes.at(path).depth);
  }
  CHECK(g1.nodes.at("/thys/A.thy").child ==
        std::vector<std::string>{"/thys/B.thy", "/thys/C.thy"});
}

TEST_CASE("related_c_code unions ancestors") {
  SUBCASE("no references, no ancestors") {
    auto graph = build_graph({flat_session("S", {"A"})},
                             map_loader({{"/thys/A.thy", theory_source("A", {})}}));
    CHECK(graph.nodes.at("/thys/A.thy").related_c_code.empty());
  }
  SUBCASE("child inherits the parent's reference") {
    auto loader = map_loader({
        {"/thys/P.thy",
         "theory P imports Main begin\ninstall_C_file \"kernel.c\"\nend\n"},
        {"/thys/C.thy", theory_source("C", {"P"})},
    });
    auto graph = build_graph({flat_session("S", {"C"})}, loader);
    CHECK(graph.nodes.at("/thys/C.thy").related_c_code ==
          std::vector<std::string>{"kernel.c"});
  }
  SUBCASE("diamond deduplicates, matching a brute-force ancestor walk") {
    auto loader = map_loader({
        {"/thys/Top.thy", theory_source("Top", {})},
        {"/thys/L.thy",
         "theory L imports Top begin\ninstall_C_file \"a.c\"\nend\n"},
        {"/thys/R.thy",
         "theory R imports Top begin\ninstall_C_file \"a.c\"\ninclude_C_file \"b.c\"\nend\n"},
        {"/thys/Bot.thy", theory_source("Bot", {"L", "R"})},
    });
    auto graph = build_graph({flat_session("S", {"Bot"})}, loader);
    const TheoryNode& bot = graph.nodes.at("/thys/Bot.thy");
    CHECK(bot.related_c_code == std::vector<std::string>{"a.c", "b.c"});

    // brute force: collect over every reachable ancestor
    std::set<std::string> acc;
    std::function<void(const std::string&)> walk = [&](const std::string& p) {
      const auto& n = graph.nodes.at(p);
      acc.insert(n.direct_c_refs.begin(), n.direct_c_refs.end());
      for (const auto& d : n.dep_paths) walk(d);
    };
    walk("/thys/Bot.thy");
    CHECK(std::vector<std::string>(acc.begin(), acc.end()) == bot.related_c_code);
  }
}

TEST_CASE("depth distributions count theories and lemmas") {
  SUBCASE("empty graph") {
    DependencyGraph graph;
    auto h = depth_distributions(graph);
    CHECK(h.by_theory.empty());
    CHECK(h.by_lemma.empty());
  }
  SUBCASE("synthetic graph with hand-computed histogram") {
    std::map<std::string, std::string> files;
    std::vector<std::string> entries;
    // chain of 4 at depths 1..4, plus 6 leaves at depth 1
    files["/thys/C1.thy"] = theory_source("C1", {});
    files["/thys/C2.thy"] = theory_source("C2", {"C1"});
    files["/thys/C3.thy"] = theory_source("C3", {"C2"});
    files["/thys/C4.thy"] = theory_source("C4", {"C3"});
    entries = {"C4"};
    for (int i = 0; i < 6; ++i) {
      files["/thys/L" + std::to_string(i) + ".thy"] =
          theory_source("L" + std::to_string(i), {});
      entries.push_back("L" + std::to_string(i));
    }
    auto graph = build_graph({flat_session("S", entries)}, map_loader(files));
    for (auto& [path, node] : graph.nodes)
      node.lemmas.resize(3);  // 3 lemmas per theory

    auto h = depth_distributions(graph);
    CHECK(h.by_theory == std::map<int, long long>{{1, 7}, {2, 1}, {3, 1}, {4, 1}});
    CHECK(h.by_lemma == std::map<int, long long>{{1, 21}, {2, 3}, {3, 3}, {4, 3}});
    long long theories = 0, lemmas = 0;
    for (auto& [d, c] : h.by_theory) theories += c;
    for (auto& [d, c] : h.by_lemma) lemmas += c;
    CHECK(theories == 10);
    CHECK(lemmas == 30);
  }
}

TEST_CASE("histogram renders as two-column text") {
  CHECK(histogram_to_text({{1, 59}, {2, 29}}) == "1 59\n2 29\n");
}
