// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/c_normalizer.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fvel/c_lexer.hpp"
#include "fvel/errors.hpp"

namespace fvel {

namespace {

using Tokens = std::vector<CToken>;

bool is_punct(const CToken& t, char c) {
  return t.kind == CToken::Kind::Punct && t.text.size() == 1 && t.text[0] == c;
}

const std::set<std::string_view> kTypeishKeywords = {
    "int",    "void",   "char",   "unsigned", "signed", "long",  "short",
    "extern", "static", "const",  "volatile", "struct", "union", "enum",
    "inline", "float",  "double", "_Bool",    "register"};

const std::set<std::string_view> kCallLikeKeywords = {
    "if", "while", "for", "switch", "return", "sizeof", "do", "else"};

std::size_t matching_paren(const Tokens& toks, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < toks.size(); ++i) {
    if (is_punct(toks[i], '(')) ++depth;
    if (is_punct(toks[i], ')') && --depth == 0) return i;
  }
  return toks.size() - 1;
}

std::size_t matching_brace(const Tokens& toks, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < toks.size(); ++i) {
    if (is_punct(toks[i], '{')) ++depth;
    if (is_punct(toks[i], '}') && --depth == 0) return i;
  }
  return toks.size() - 1;
}

// True at statement positions: start of file, after ';' '{' '}' ':', after
// a control-statement ')' or else/do, or after a preprocessor directive.
bool statement_position(const Tokens& toks, std::size_t i) {
  if (i == 0) return true;
  const CToken& p = toks[i - 1];
  if (p.kind == CToken::Kind::Directive) return true;
  if (p.kind == CToken::Kind::Punct && p.text.size() == 1 &&
      (p.text[0] == ';' || p.text[0] == '{' || p.text[0] == '}' || p.text[0] == ':' ||
       p.text[0] == ')'))
    return true;
  if (p.kind == CToken::Kind::Identifier && (p.text == "else" || p.text == "do"))
    return true;
  return false;
}

struct Unit {
  std::size_t tok_begin = 0;
  std::size_t tok_end = 0;  // exclusive
  bool is_function = false;
  bool is_definition = false;
  std::string name;
  std::size_t params_begin = 0;  // '(' token index
  std::size_t params_end = 0;    // ')' token index
  std::size_t body_begin = 0;    // '{' token index
  std::size_t body_end = 0;      // '}' token index
};

// Walks back from a '{' over the parameter list to the function name.
bool function_opener(const Tokens& toks, std::size_t brace, std::size_t lo,
                     std::size_t& name_tok, std::size_t& pb, std::size_t& pe) {
  std::size_t j = brace;
  int depth = 0;
  bool saw = false;
  while (j > lo) {
    --j;
    if (toks[j].kind != CToken::Kind::Punct) {
      if (depth == 0 && !saw) return false;
      continue;
    }
    char c = toks[j].text.size() == 1 ? toks[j].text[0] : '\0';
    if (c == ')') {
      ++depth;
      if (depth == 1) pe = j;
      saw = true;
    } else if (c == '(') {
      if (depth > 0 && --depth == 0) {
        pb = j;
        if (j > lo && toks[j - 1].kind == CToken::Kind::Identifier &&
            kTypeishKeywords.count(toks[j - 1].text) == 0) {
          name_tok = j - 1;
          return true;
        }
        return false;
      }
    } else if (depth == 0) {
      return false;
    }
  }
  return false;
}

std::vector<Unit> scan_units(const Tokens& toks) {
  std::vector<Unit> units;
  std::size_t i = 0;
  while (i < toks.size()) {
    if (toks[i].kind == CToken::Kind::Directive) {
      ++i;
      continue;
    }
    Unit u;
    u.tok_begin = i;
    int paren = 0;
    bool done = false;
    while (i < toks.size() && !done) {
      const CToken& t = toks[i];
      if (t.kind == CToken::Kind::Punct && t.text.size() == 1) {
        char c = t.text[0];
        if (c == '(') {
          ++paren;
        } else if (c == ')') {
          if (paren > 0) --paren;
        } else if (c == ';' && paren == 0) {
          u.tok_end = ++i;
          done = true;
          break;
        } else if (c == '{' && paren == 0) {
          std::size_t name_tok = 0, pb = 0, pe = 0;
          if (function_opener(toks, i, u.tok_begin, name_tok, pb, pe)) {
            u.is_function = true;
            u.is_definition = true;
            u.name = std::string(toks[name_tok].text);
            u.params_begin = pb;
            u.params_end = pe;
            u.body_begin = i;
            u.body_end = matching_brace(toks, i);
            i = u.body_end + 1;
            u.tok_end = i;
            done = true;
            break;
          }
          i = matching_brace(toks, i) + 1;  // aggregate or initializer braces
          continue;
        }
      }
      ++i;
    }
    if (!done) u.tok_end = i;

    if (!u.is_definition) {
      // Declaration: first top-level '(' preceded by a plain identifier.
      int depth = 0;
      for (std::size_t k = u.tok_begin; k < u.tok_end; ++k) {
        if (is_punct(toks[k], '(')) {
          if (depth == 0 && k > u.tok_begin &&
              toks[k - 1].kind == CToken::Kind::Identifier &&
              kTypeishKeywords.count(toks[k - 1].text) == 0) {
            u.is_function = true;
            u.name = std::string(toks[k - 1].text);
            u.params_begin = k;
            u.params_end = matching_paren(toks, k);
            break;
          }
          ++depth;
        } else if (is_punct(toks[k], ')') && depth > 0) {
          --depth;
        }
      }
    }
    if (u.tok_end > u.tok_begin) units.push_back(u);
  }
  return units;
}

struct Edit {
  std::size_t begin;
  std::size_t end;
  std::string replacement;
};

class Normalizer {
 public:
  Normalizer(std::string_view src, Tokens toks) : src_(src), toks_(std::move(toks)) {}

  NormalizationReport run() {
    NormalizationReport report;
    for (const auto& t : toks_) {
      if (t.kind == CToken::Kind::Identifier && (t.text == "float" || t.text == "double")) {
        report.rejected = "floating-point type '" + std::string(t.text) + "' at line " +
                          std::to_string(t.line);
        return report;
      }
    }

    units_ = scan_units(toks_);
    remove_warning_functions();
    remove_calls_to_removed();
    remove_dangling_labels();
    rename_illegal_functions();
    rewrite_assert_assume();
    declare_unknown();

    report.rewrites = std::move(rewrites_);
    report.output = splice();
    return report;
  }

 private:
  void note(const std::string& rule, int line, std::string detail) {
    rewrites_.push_back({rule, line, std::move(detail)});
  }

  bool in_removed(std::size_t tok) const {
    for (const auto& [b, e] : removed_tok_ranges_)
      if (tok >= b && tok < e) return true;
    return false;
  }

  // Extends a byte span over surrounding blank space so deleting a whole
  // line does not leave an empty one behind.
  std::pair<std::size_t, std::size_t> extend_lines(std::size_t begin, std::size_t end) const {
    std::size_t b = begin;
    while (b > 0 && (src_[b - 1] == ' ' || src_[b - 1] == '\t')) --b;
    bool at_line_start = (b == 0 || src_[b - 1] == '\n');
    std::size_t e = end;
    while (e < src_.size() && (src_[e] == ' ' || src_[e] == '\t')) ++e;
    if (at_line_start && e < src_.size() && src_[e] == '\n') return {b, e + 1};
    return {begin, end};
  }

  void remove_unit(const Unit& u, const std::string& what) {
    auto [b, e] = extend_lines(toks_[u.tok_begin].begin, toks_[u.tok_end - 1].end);
    edits_.push_back({b, e, ""});
    removed_tok_ranges_.emplace_back(u.tok_begin, u.tok_end);
    note("R1", toks_[u.tok_begin].line, "removed " + what + " of " + u.name);
  }

  void remove_warning_functions() {
    for (const auto& u : units_) {
      if (!u.is_function || u.name == "main" || u.name == "abort") continue;
      bool char_params = false;
      for (std::size_t k = u.params_begin; k <= u.params_end && k < toks_.size(); ++k)
        if (toks_[k].kind == CToken::Kind::Identifier && toks_[k].text == "char")
          char_params = true;
      bool string_body = false;
      if (u.is_definition)
        for (std::size_t k = u.body_begin; k <= u.body_end; ++k)
          if (toks_[k].kind == CToken::Kind::String) string_body = true;
      if (char_params || string_body) {
        removed_names_.insert(u.name);
        remove_unit(u, u.is_definition ? "definition" : "declaration");
      }
    }
    // Forward declarations of functions whose definitions went away.
    for (const auto& u : units_) {
      if (u.is_function && !u.is_definition && removed_names_.count(u.name) &&
          !in_removed(u.tok_begin))
        remove_unit(u, "declaration");
    }
  }

  void remove_calls_to_removed() {
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
      if (in_removed(i)) continue;
      if (toks_[i].kind != CToken::Kind::Identifier || !removed_names_.count(std::string(toks_[i].text)))
        continue;
      if (!is_punct(toks_[i + 1], '(')) continue;
      std::size_t close = matching_paren(toks_, i + 1);
      if (close + 1 >= toks_.size() || !is_punct(toks_[close + 1], ';')) continue;
      if (!statement_position(toks_, i)) continue;  // expression calls stay

      bool bare = i > 0 && toks_[i - 1].kind == CToken::Kind::Punct &&
                  (toks_[i - 1].text == ";" || toks_[i - 1].text == "{" ||
                   toks_[i - 1].text == "}");
      std::size_t b = toks_[i].begin;
      std::size_t e = toks_[close + 1].end;
      if (bare || i == 0) {
        auto [xb, xe] = extend_lines(b, e);
        edits_.push_back({xb, xe, ""});
      } else {
        // After `if (...)`, `else`, a label, ...: keep an empty statement
        // so the enclosing construct stays well-formed.
        edits_.push_back({b, e, ";"});
      }
      removed_tok_ranges_.emplace_back(i, close + 2);
      removed_call_starts_.insert(i);
      note("R1", toks_[i].line, "removed call to " + std::string(toks_[i].text));
      i = close + 1;
    }
  }

  void remove_dangling_labels() {
    for (std::size_t i = 0; i + 2 < toks_.size(); ++i) {
      if (in_removed(i)) continue;
      if (toks_[i].kind != CToken::Kind::Identifier || toks_[i].text == "default") continue;
      if (!is_punct(toks_[i + 1], ':')) continue;
      if (!statement_position(toks_, i)) continue;
      if (i > 0 && toks_[i - 1].kind == CToken::Kind::Identifier && toks_[i - 1].text == "case")
        continue;

      bool dangling = false;
      if (removed_call_starts_.count(i + 2)) {
        dangling = true;  // the labeled statement was a deleted call
      } else if (is_punct(toks_[i + 2], '{')) {
        std::size_t close = matching_brace(toks_, i + 2);
        for (const auto& [b, e] : removed_tok_ranges_)
          if (b > i + 2 && e <= close + 1) dangling = true;
      }
      if (!dangling) continue;
      std::size_t e = toks_[i + 1].end;
      while (e < src_.size() && (src_[e] == ' ' || src_[e] == '\t')) ++e;
      edits_.push_back({toks_[i].begin, e, ""});
      removed_tok_ranges_.emplace_back(i, i + 2);
      note("R2", toks_[i].line, "removed dangling label " + std::string(toks_[i].text));
    }
  }

  void rename_illegal_functions() {
    std::set<std::string> function_names;
    for (const auto& u : units_)
      if (u.is_function) function_names.insert(u.name);
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i)
      if (toks_[i].kind == CToken::Kind::Identifier && is_punct(toks_[i + 1], '(') &&
          kCallLikeKeywords.count(toks_[i].text) == 0 && !in_removed(i))
        function_names.insert(std::string(toks_[i].text));

    std::map<std::string, std::string> renames;
    for (const auto& name : function_names) {
      if (name.empty() || name[0] != '_' || removed_names_.count(name)) continue;
      auto first = name.find_first_not_of('_');
      if (first == std::string::npos) continue;
      renames.emplace(name, name.substr(first));
    }

    std::set<std::string> noted;
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      if (toks_[i].kind != CToken::Kind::Identifier || in_removed(i)) continue;
      auto it = renames.find(std::string(toks_[i].text));
      if (it == renames.end()) continue;
      edits_.push_back({toks_[i].begin, toks_[i].end, it->second});
      if (noted.insert(it->first).second)
        note("R2", toks_[i].line, "renamed " + it->first + " -> " + it->second);
    }
  }

  std::string enclosing_function(std::size_t tok) const {
    for (const auto& u : units_)
      if (u.is_definition && tok > u.body_begin && tok < u.body_end) return u.name;
    return {};
  }

  void rewrite_assert_assume() {
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
      if (in_removed(i)) continue;
      if (toks_[i].kind != CToken::Kind::Identifier ||
          (toks_[i].text != "assert" && toks_[i].text != "assume"))
        continue;
      if (!is_punct(toks_[i + 1], '(')) continue;
      if (!statement_position(toks_, i)) continue;
      std::size_t close = matching_paren(toks_, i + 1);
      if (close + 1 >= toks_.size() || !is_punct(toks_[close + 1], ';')) continue;

      // Two edits around the untouched condition so rewrites inside it
      // (renames) still apply.
      edits_.push_back({toks_[i].begin, toks_[i + 1].end, "if (!("});
      edits_.push_back({toks_[close].begin, toks_[close + 1].end, ")) {return -1;}"});
      std::string fn = enclosing_function(i);
      std::string detail = "rewrote " + std::string(toks_[i].text) + " to guard";
      if (fn != "main") detail += " (outside main)";
      note("R3", toks_[i].line, detail);
      i = close + 1;
    }
  }

  void declare_unknown() {
    for (const auto& u : units_)
      if (u.is_function && u.name == "unknown") return;
    for (std::size_t i = 0; i + 1 < toks_.size(); ++i) {
      if (in_removed(i)) continue;
      if (toks_[i].kind == CToken::Kind::Identifier && toks_[i].text == "unknown" &&
          is_punct(toks_[i + 1], '(')) {
        edits_.push_back({0, 0, "extern int unknown(void);\n"});
        note("R4", toks_[i].line, "declared extern int unknown(void)");
        return;
      }
    }
  }

  std::string splice() {
    std::sort(edits_.begin(), edits_.end(), [](const Edit& a, const Edit& b) {
      return a.begin != b.begin ? a.begin < b.begin : a.end < b.end;
    });
    std::string out;
    out.reserve(src_.size());
    std::size_t pos = 0;
    for (const auto& e : edits_) {
      if (e.begin < pos) throw Error("normalizer produced overlapping edits");
      out.append(src_.substr(pos, e.begin - pos));
      out.append(e.replacement);
      pos = e.end;
    }
    out.append(src_.substr(pos));
    return out;
  }

  std::string_view src_;
  Tokens toks_;
  std::vector<Unit> units_;
  std::set<std::string> removed_names_;
  std::vector<std::pair<std::size_t, std::size_t>> removed_tok_ranges_;
  std::set<std::size_t> removed_call_starts_;
  std::vector<Edit> edits_;
  std::vector<Rewrite> rewrites_;
};

}  // namespace

NormalizationReport normalize(std::string_view c_source) {
  return Normalizer(c_source, c_tokenize(c_source)).run();
}

std::string to_string(FeatureFlag flag) {
  switch (flag) {
    case FeatureFlag::FloatingPoint: return "FloatingPoint";
    case FeatureFlag::Goto: return "Goto";
    case FeatureFlag::SideEffectInExpression: return "SideEffectInExpression";
  }
  return "Unknown";
}

std::vector<FeatureFlag> check_supported(std::string_view c_source) {
  const auto toks = c_tokenize(c_source);
  std::set<int> flags;

  // for-clause spans: paren token ranges with their two clause-separating
  // semicolon positions, so increments in the third clause are allowed.
  struct ForSpan {
    std::size_t open, close;
    std::vector<std::size_t> semis;
  };
  std::vector<ForSpan> fors;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].kind == CToken::Kind::Identifier && toks[i].text == "for" &&
        is_punct(toks[i + 1], '(')) {
      ForSpan f{i + 1, matching_paren(toks, i + 1), {}};
      int depth = 0;
      for (std::size_t k = f.open; k <= f.close; ++k) {
        if (is_punct(toks[k], '(')) ++depth;
        if (is_punct(toks[k], ')')) --depth;
        if (depth == 1 && is_punct(toks[k], ';')) f.semis.push_back(k);
      }
      fors.push_back(f);
    }
  }
  auto for_clause = [&](std::size_t tok) -> int {  // -1: not directly in a for clause
    for (const auto& f : fors) {
      if (tok <= f.open || tok >= f.close || f.semis.size() != 2) continue;
      // only tokens at the clause level itself, not nested parens
      int depth = 0;
      for (std::size_t k = f.open; k < tok; ++k) {
        if (is_punct(toks[k], '(')) ++depth;
        if (is_punct(toks[k], ')')) --depth;
      }
      if (depth != 1) continue;
      if (tok < f.semis[0]) return 0;
      if (tok < f.semis[1]) return 1;
      return 2;
    }
    return -1;
  };

  int paren_depth = 0;
  std::size_t stmt_start = 0;  // token index after the last boundary
  bool saw_assign_in_stmt = false;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    const CToken& t = toks[i];
    if (t.kind == CToken::Kind::Identifier) {
      if (t.text == "float" || t.text == "double")
        flags.insert(static_cast<int>(FeatureFlag::FloatingPoint));
      if (t.text == "goto") flags.insert(static_cast<int>(FeatureFlag::Goto));
      continue;
    }
    if (t.kind != CToken::Kind::Punct) continue;
    if (t.text.size() == 1) {
      char c = t.text[0];
      if (c == '(') ++paren_depth;
      if (c == ')' && paren_depth > 0) --paren_depth;
      if ((c == ';' || c == '{' || c == '}' || (c == ',' && paren_depth == 0)) ) {
        stmt_start = i + 1;
        saw_assign_in_stmt = false;
      }
    }
    bool is_incdec = t.text == "++" || t.text == "--";
    bool is_assign = t.text == "=" || t.text == "+=" || t.text == "-=" ||
                     t.text == "*=" || t.text == "/=" || t.text == "%=" ||
                     t.text == "&=" || t.text == "|=" || t.text == "^=" ||
                     t.text == "<<=" || t.text == ">>=";
    if (!is_incdec && !is_assign) continue;

    int clause = for_clause(i);
    if (clause == 0 || clause == 2) continue;  // init / increment clauses
    if (clause == 1) {
      flags.insert(static_cast<int>(FeatureFlag::SideEffectInExpression));
      continue;
    }
    if (paren_depth > 0) {
      flags.insert(static_cast<int>(FeatureFlag::SideEffectInExpression));
      continue;
    }
    if (is_assign) {
      if (saw_assign_in_stmt)
        flags.insert(static_cast<int>(FeatureFlag::SideEffectInExpression));
      saw_assign_in_stmt = true;
      continue;
    }
    // ++/-- at statement level: fine only as a plain `x++;` / `++x;` style
    // statement over an lvalue chain.
    bool simple = true;
    for (std::size_t k = stmt_start; k < toks.size() && !is_punct(toks[k], ';'); ++k) {
      if (k == i) continue;
      const CToken& u = toks[k];
      if (u.kind == CToken::Kind::Identifier || u.kind == CToken::Kind::Number) continue;
      if (u.kind == CToken::Kind::Punct &&
          (u.text == "[" || u.text == "]" || u.text == "." || u.text == "->"))
        continue;
      simple = false;
      break;
    }
    if (!simple) flags.insert(static_cast<int>(FeatureFlag::SideEffectInExpression));
  }

  std::vector<FeatureFlag> out;
  for (int f : flags) out.push_back(static_cast<FeatureFlag>(f));
  return out;
}

Json normalization_report_to_json(const NormalizationReport& report) {
  Json doc;
  doc["rejected"] = report.rejected ? Json(*report.rejected) : Json(nullptr);
  Json rewrites = Json::array();
  for (const auto& r : report.rewrites)
    rewrites.push_back({{"rule", r.rule}, {"line", r.line}, {"detail", r.detail}});
  doc["rewrites"] = std::move(rewrites);
  return doc;
}

}  // namespace fvel
