// Copyright (c) the fvel toolkit contributors.
// Licensed under the Apache 2.0 License.

#include "fvel/proof_script.hpp"

#include <cctype>

#include "fvel/errors.hpp"
#include "fvel/outer_syntax.hpp"

namespace fvel {

namespace {

// Keyword table mirroring the outer-syntax commands PISA-style stepping
// splits on. Minor keywords (imports, begin, assumes, shows, fixes, and,
// where, ...) must never appear here: they occur inside statements.
const std::set<std::string, std::less<>> kDefaultCommands = {
    // theory structure
    "theory", "end", "section", "subsection", "subsubsection", "paragraph",
    "chapter", "text", "txt", "ML", "ML_file", "setup", "declare", "lemmas",
    "named_theorems", "method_setup", "syntax", "translations", "notation",
    "no_notation", "hide_const", "hide_fact", "hide_type",
    // specification commands
    "lemma", "theorem", "corollary", "proposition", "schematic_goal",
    "definition", "abbreviation", "fun", "function", "primrec", "primcorec",
    "termination", "datatype", "codatatype", "record", "type_synonym",
    "typedecl", "consts", "axiomatization", "inductive", "inductive_set",
    "coinductive", "overloading", "instantiation", "instance", "subclass",
    "context", "locale", "interpretation", "global_interpretation",
    "sublocale", "experiment",
    // proof commands
    "apply", "by", "proof", "next", "qed", "done", "oops", "sorry", "have",
    "show", "hence", "thus", "obtain", "fix", "assume", "presume", "case",
    "then", "also", "moreover", "ultimately", "finally", "from", "with",
    "note", "let", "using", "unfolding", "supply", "including", "prefer",
    "defer", "back",
    // diagnostics and tool invocations seen in verification projects
    "thm", "term", "value", "prop", "typ", "print_theorems",
    "install_C_file", "include_C_file", "external_file", "autocorres",
    "new_C_include_dir",
};

const std::set<std::string> kStatementKeywords = {"lemma", "theorem", "corollary",
                                                  "schematic_goal"};

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

const SegmentConfig& SegmentConfig::defaults() {
  static const SegmentConfig config{kDefaultCommands};
  return config;
}

std::vector<StepSpan> segment_spans(std::string_view source, const SegmentConfig& config) {
  const auto regions = scan_regions(source, /*strict=*/true);

  std::vector<std::size_t> boundaries;
  int bracket_depth = 0;       // ( ) and [ ] nesting in code regions
  bool in_header = false;      // between `theory` and its `begin`

  for (const auto& region : regions) {
    if (region.kind != RegionKind::Code) continue;
    std::size_t i = region.begin;
    while (i < region.end) {
      char c = source[i];
      if (is_word_char(c)) {
        std::size_t start = i;
        while (i < region.end && (is_word_char(source[i]) ||
                                  (source[i] == '.' && i + 1 < region.end &&
                                   is_word_char(source[i + 1]) && i > start)))
          ++i;
        std::string_view word = source.substr(start, i - start);
        if (bracket_depth == 0) {
          if (in_header) {
            if (word == "begin") in_header = false;
          } else if (config.commands.count(word) > 0) {
            boundaries.push_back(start);
            if (word == "theory") in_header = true;
          }
        }
      } else {
        if (c == '(' || c == '[') ++bracket_depth;
        if ((c == ')' || c == ']') && bracket_depth > 0) --bracket_depth;
        ++i;
      }
    }
  }

  std::size_t first_content = 0;
  while (first_content < source.size() &&
         std::isspace(static_cast<unsigned char>(source[first_content])))
    ++first_content;
  if (first_content == source.size()) return {};

  // Leading improper content (comments, stray text) attaches to the first
  // step rather than becoming a step of its own.
  std::vector<std::size_t> starts;
  if (boundaries.empty() || first_content < boundaries.front()) {
    starts.push_back(first_content);
    starts.insert(starts.end(),
                  boundaries.begin() + (boundaries.empty() ? 0 : 1), boundaries.end());
  } else {
    starts = boundaries;
  }

  std::vector<StepSpan> spans;
  spans.reserve(starts.size());
  for (std::size_t k = 0; k < starts.size(); ++k) {
    std::size_t begin = starts[k];
    std::size_t end = (k + 1 < starts.size()) ? starts[k + 1] : source.size();
    while (end > begin && std::isspace(static_cast<unsigned char>(source[end - 1]))) --end;
    if (end > begin) spans.push_back({begin, end});
  }
  return spans;
}

std::vector<std::string> segment_steps(std::string_view source, const SegmentConfig& config) {
  std::vector<std::string> steps;
  for (const auto& span : segment_spans(source, config))
    steps.emplace_back(source.substr(span.begin, span.end - span.begin));
  return steps;
}

ReplayOutcome replay_theory(const std::vector<std::string>& steps, Session& session) {
  ReplayOutcome outcome;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    ProverReply reply = session.apply_step(steps[i]);
    if (!reply.ok) {
      outcome.failed = true;
      outcome.error_index = static_cast<int>(i);
      if (reply.cheating) {
        outcome.error_message = "cheating keyword in step";
      } else if (!reply.errors.empty()) {
        outcome.error_message = reply.errors.front();
      } else {
        outcome.error_message = "step rejected";
      }
      return outcome;
    }
    ProofStepRecord record;
    record.index = static_cast<int>(i);
    record.step = steps[i];
    record.raw_output = reply.state;
    record.step_time = reply.elapsed;
    outcome.records.push_back(std::move(record));
  }
  return outcome;
}

namespace {

std::string first_word(const std::string& step) {
  for (const auto& tok : tokenize(step))
    if (tok.kind == Token::Kind::Word) return std::string(tok.text);
  return {};
}

}  // namespace

std::vector<LemmaRecord> extract_lemmas(const std::vector<ProofStepRecord>& records,
                                        const std::string& theory_name,
                                        std::optional<std::string_view> theory_source) {
  // Locate each step in the source so lemma contexts are original slices.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  bool have_spans = false;
  if (theory_source) {
    spans.reserve(records.size());
    std::size_t cursor = 0;
    have_spans = true;
    for (const auto& r : records) {
      auto pos = theory_source->find(r.step, cursor);
      if (pos == std::string_view::npos) {
        have_spans = false;
        break;
      }
      spans.emplace_back(pos, pos + r.step.size());
      cursor = pos + r.step.size();
    }
  }

  std::vector<LemmaRecord> lemmas;
  std::optional<std::size_t> open_at;  // index into records of the statement

  auto emit = [&](std::size_t from, std::size_t to, bool incomplete) {
    LemmaRecord lemma;
    for (std::size_t k = from; k <= to; ++k) {
      lemma.proof.push_back(records[k].step);
      lemma.proof_state.push_back(records[k].raw_output);
    }
    lemma.statement = lemma.proof.front();
    lemma.num_steps = static_cast<int>(lemma.proof.size()) - 1;
    lemma.theory_name = theory_name;
    lemma.incomplete = incomplete;
    if (have_spans) {
      lemma.context = std::string(
          theory_source->substr(spans[from].first, spans[to].second - spans[from].first));
    } else {
      for (std::size_t k = 0; k < lemma.proof.size(); ++k) {
        if (k) lemma.context += ' ';
        lemma.context += lemma.proof[k];
      }
    }
    lemmas.push_back(std::move(lemma));
  };

  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!open_at) {
      if (kStatementKeywords.count(first_word(records[i].step)) == 0) continue;
      open_at = i;
    }
    if (records[i].raw_output.empty()) {  // proof closed
      emit(*open_at, i, /*incomplete=*/false);
      open_at.reset();
    }
  }
  if (open_at) emit(*open_at, records.size() - 1, /*incomplete=*/true);
  return lemmas;
}

}  // namespace fvel
