// include/pseval/metrics.hpp

// Copyright 2026  The pseval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/corpus.hpp"
#include "pseval/error.hpp"
#include "pseval/textnorm.hpp"

namespace pseval {

enum class EditOp { Hit, Substitution, Deletion, Insertion };

struct AlignedPair {
  EditOp op;
  std::optional<std::size_t> ref_index;  // absent for insertions
  std::optional<std::size_t> hyp_index;  // absent for deletions

  bool operator==(const AlignedPair&) const = default;
};

struct Alignment {
  std::size_t hits = 0;
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::vector<AlignedPair> ops;

  std::size_t distance() const { return substitutions + insertions + deletions; }
  bool operator==(const Alignment&) const = default;
};

inline std::vector<std::string> tokenize(const NormalizedText& t) {
  std::vector<std::string> out;
  const std::string& s = t.str();
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(' ', start);
    if (end == std::string::npos) end = s.size();
    if (end > start) out.emplace_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

// Levenshtein alignment with unit costs. The backtrace prefers
// hit > substitution > deletion > insertion at every cell.
template <typename T>
Alignment align(std::span<const T> ref, std::span<const T> hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  const std::size_t width = m + 1;
  std::vector<std::uint32_t> d((n + 1) * width);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return d[i * width + j]; };
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    at(i, 0) = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  Alignment a;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const std::uint32_t cur = at(i, j);
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] && at(i - 1, j - 1) == cur) {
      a.ops.push_back({EditOp::Hit, i - 1, j - 1});
      ++a.hits, --i, --j;
    } else if (i > 0 && j > 0 && at(i - 1, j - 1) + 1 == cur) {
      a.ops.push_back({EditOp::Substitution, i - 1, j - 1});
      ++a.substitutions, --i, --j;
    } else if (i > 0 && at(i - 1, j) + 1 == cur) {
      a.ops.push_back({EditOp::Deletion, i - 1, std::nullopt});
      ++a.deletions, --i;
    } else {
      a.ops.push_back({EditOp::Insertion, std::nullopt, j - 1});
      ++a.insertions, --j;
    }
  }
  std::reverse(a.ops.begin(), a.ops.end());
  return a;
}

template <typename T>
Alignment align(const std::vector<T>& ref, const std::vector<T>& hyp) {
  return align(std::span<const T>(ref), std::span<const T>(hyp));
}

inline Alignment align(std::u32string_view ref, std::u32string_view hyp) {
  return align(std::span<const char32_t>(ref.data(), ref.size()), std::span<const char32_t>(hyp.data(), hyp.size()));
}

struct ScoringConfig {
  NormalizationConfig normalization;
  bool cer_count_spaces = true;  // internal single spaces are characters

  bool operator==(const ScoringConfig&) const = default;
};

struct UtteranceScore {
  std::string id;
  std::string model;
  std::string dataset;
  std::string reference;   // normalized
  std::string hypothesis;  // normalized
  std::size_t ref_tokens = 0;
  std::size_t hyp_tokens = 0;
  std::size_t word_edits = 0;
  std::size_t hits = 0;
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  double wer = 0.0;
  std::size_t ref_chars = 0;
  std::size_t hyp_chars = 0;
  std::size_t char_edits = 0;
  double cer = 0.0;
  std::optional<double> audio_duration_s;
  std::optional<double> decode_time_s;

  bool operator==(const UtteranceScore&) const = default;
};

struct CorpusScore {
  std::size_t n_utterances = 0;
  std::size_t total_ref_tokens = 0;
  std::size_t total_word_edits = 0;
  double wer = 0.0;
  std::size_t total_ref_chars = 0;
  std::size_t total_char_edits = 0;
  double cer = 0.0;

  bool operator==(const CorpusScore&) const = default;
};

inline double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

namespace metrics_detail {
inline std::u32string cer_units(const NormalizedText& t, bool count_spaces) {
  std::u32string cps = t.codepoints();
  if (!count_spaces) std::erase(cps, U' ');
  return cps;
}
}  // namespace metrics_detail

inline UtteranceScore score_normalized(const std::string& id, const NormalizedText& ref, const NormalizedText& hyp,
                                       const ScoringConfig& config) {
  if (is_effectively_empty(ref)) {
    throw InvariantError("metrics", "utterance '" + id +
                                        "': normalized reference is empty (filter_empty_references not applied)");
  }
  UtteranceScore s;
  s.id = id;
  s.reference = ref.str();
  s.hypothesis = hyp.str();

  const auto ref_tok = tokenize(ref);
  const auto hyp_tok = tokenize(hyp);
  const Alignment w = align(ref_tok, hyp_tok);
  s.ref_tokens = ref_tok.size();
  s.hyp_tokens = hyp_tok.size();
  s.word_edits = w.distance();
  s.hits = w.hits;
  s.substitutions = w.substitutions;
  s.insertions = w.insertions;
  s.deletions = w.deletions;
  s.wer = ratio(s.word_edits, s.ref_tokens);

  const auto ref_ch = metrics_detail::cer_units(ref, config.cer_count_spaces);
  const auto hyp_ch = metrics_detail::cer_units(hyp, config.cer_count_spaces);
  s.ref_chars = ref_ch.size();
  s.hyp_chars = hyp_ch.size();
  s.char_edits = align(std::u32string_view(ref_ch), std::u32string_view(hyp_ch)).distance();
  s.cer = ratio(s.char_edits, s.ref_chars);
  return s;
}

inline UtteranceScore score_utterance(const UtteranceRecord& record, const ScoringConfig& config,
                                      const CharacterInventory& inventory) {
  UtteranceScore s = score_normalized(record.id, normalize(record.reference, config.normalization, inventory),
                                      normalize(record.hypothesis, config.normalization, inventory), config);
  s.model = record.model;
  s.dataset = record.dataset;
  s.audio_duration_s = record.audio_duration_s;
  s.decode_time_s = record.decode_time_s;
  return s;
}

inline UtteranceScore score_utterance(const UtteranceRecord& record, const ScoringConfig& config = {}) {
  static const CharacterInventory inventory = default_inventory();
  return score_utterance(record, config, inventory);
}

// Micro-average: total edits over total reference units.
inline CorpusScore score_corpus(std::span<const UtteranceScore> scores) {
  if (scores.empty()) throw InputError("metrics", "no scorable utterances");
  CorpusScore c;
  for (const auto& s : scores) {
    ++c.n_utterances;
    c.total_ref_tokens += s.ref_tokens;
    c.total_word_edits += s.word_edits;
    c.total_ref_chars += s.ref_chars;
    c.total_char_edits += s.char_edits;
  }
  c.wer = ratio(c.total_word_edits, c.total_ref_tokens);
  c.cer = ratio(c.total_char_edits, c.total_ref_chars);
  return c;
}

inline CorpusScore score_corpus(const std::vector<UtteranceScore>& scores) {
  return score_corpus(std::span<const UtteranceScore>(scores));
}

inline nlohmann::ordered_json to_json(const CorpusScore& c) {
  return {{"n_utterances", c.n_utterances},         {"total_ref_tokens", c.total_ref_tokens},
          {"total_word_edits", c.total_word_edits}, {"wer", c.wer},
          {"total_ref_chars", c.total_ref_chars},   {"total_char_edits", c.total_char_edits},
          {"cer", c.cer}};
}

inline CorpusScore corpus_score_from_json(const nlohmann::json& j) {
  CorpusScore c;
  c.n_utterances = j.at("n_utterances").get<std::size_t>();
  c.total_ref_tokens = j.at("total_ref_tokens").get<std::size_t>();
  c.total_word_edits = j.at("total_word_edits").get<std::size_t>();
  c.wer = j.at("wer").get<double>();
  c.total_ref_chars = j.at("total_ref_chars").get<std::size_t>();
  c.total_char_edits = j.at("total_char_edits").get<std::size_t>();
  c.cer = j.at("cer").get<double>();
  return c;
}

}  // namespace pseval
