// include/pseval/diagnostics.hpp

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

// Decoder-failure diagnostics: structural signals of repetition loops and
// near-empty output, plus corpus real-time factor from ingested timings.
// The thresholds are heuristics tuned to separate looping output from
// ordinary recognition errors; they are configuration, not constants.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/corpus.hpp"
#include "pseval/error.hpp"
#include "pseval/scriptid.hpp"
#include "pseval/utf8.hpp"

namespace pseval {

struct LoopSignals {
  std::optional<double> length_ratio;          // hyp tokens / ref tokens; null for an empty reference
  std::optional<double> top_bigram_share;      // null when the hypothesis has < 2 tokens
  std::optional<double> distinct_token_ratio;  // null when the hypothesis has < 2 tokens
  bool near_empty = false;                     // <= 1 non-whitespace character

  bool operator==(const LoopSignals&) const = default;
};

enum class FailureLabel { None, RepetitionLoop, LanguageSwitchLoop, NearEmpty };

inline constexpr std::array<FailureLabel, 4> kAllFailureLabels = {
    FailureLabel::None, FailureLabel::RepetitionLoop, FailureLabel::LanguageSwitchLoop, FailureLabel::NearEmpty};

inline std::string_view to_string(FailureLabel l) {
  switch (l) {
    case FailureLabel::None: return "None";
    case FailureLabel::RepetitionLoop: return "RepetitionLoop";
    case FailureLabel::LanguageSwitchLoop: return "LanguageSwitchLoop";
    case FailureLabel::NearEmpty: return "NearEmpty";
  }
  return "?";
}

inline FailureLabel failure_label_from_string(std::string_view s) {
  for (FailureLabel l : kAllFailureLabels) {
    if (to_string(l) == s) return l;
  }
  throw InputError("diagnostics", "unknown failure label '" + std::string(s) + "'");
}

struct FailureThresholds {
  double repetition_length_ratio = 2.0;
  double switch_length_ratio = 1.5;
  double top_bigram_share = 0.3;

  bool operator==(const FailureThresholds&) const = default;
};

inline LoopSignals loop_signals(const std::vector<std::string>& ref_tokens,
                                const std::vector<std::string>& hyp_tokens) {
  LoopSignals s;
  if (!ref_tokens.empty()) {
    s.length_ratio = static_cast<double>(hyp_tokens.size()) / static_cast<double>(ref_tokens.size());
  }
  std::size_t chars = 0;
  for (const auto& t : hyp_tokens) {
    for (char32_t cp : utf8::decode(t)) {
      if (!is_unicode_whitespace(cp)) ++chars;
    }
  }
  s.near_empty = chars <= 1;
  if (hyp_tokens.size() >= 2) {
    std::map<std::pair<std::string_view, std::string_view>, std::size_t> bigrams;
    std::size_t top = 0;
    for (std::size_t i = 0; i + 1 < hyp_tokens.size(); ++i) {
      top = std::max(top, ++bigrams[{hyp_tokens[i], hyp_tokens[i + 1]}]);
    }
    s.top_bigram_share = static_cast<double>(top) / static_cast<double>(hyp_tokens.size() - 1);
    const std::set<std::string_view> distinct(hyp_tokens.begin(), hyp_tokens.end());
    s.distinct_token_ratio = static_cast<double>(distinct.size()) / static_cast<double>(hyp_tokens.size());
  }
  return s;
}

// Precedence: NearEmpty > RepetitionLoop > LanguageSwitchLoop > None.
inline FailureLabel classify_failure(const LoopSignals& s, ScriptLabel script, const FailureThresholds& t = {}) {
  if (s.near_empty) return FailureLabel::NearEmpty;
  if (!s.length_ratio || !s.top_bigram_share) return FailureLabel::None;
  const bool repetitive = *s.top_bigram_share >= t.top_bigram_share;
  if (repetitive && *s.length_ratio >= t.repetition_length_ratio) return FailureLabel::RepetitionLoop;
  if (repetitive && *s.length_ratio >= t.switch_length_ratio && script == ScriptLabel::ArDaUr) {
    return FailureLabel::LanguageSwitchLoop;
  }
  return FailureLabel::None;
}

inline double rtf(double decode_time_s, double audio_duration_s) {
  if (!(audio_duration_s > 0.0)) throw InputError("diagnostics", "audio duration must be > 0 for RTF");
  return decode_time_s / audio_duration_s;
}

struct RtfSummary {
  std::optional<double> rtf;  // null when no record carries both timings
  std::size_t included = 0;
  std::size_t excluded = 0;

  std::string coverage_note() const {
    return std::to_string(excluded) + " of " + std::to_string(included + excluded) + " excluded";
  }
  bool operator==(const RtfSummary&) const = default;
};

// Sum of decode time over sum of audio duration. Records missing either
// timing are excluded and counted.
template <typename Timed>
RtfSummary corpus_rtf(std::span<const Timed> records) {
  RtfSummary out;
  double decode = 0.0, audio = 0.0;
  for (const auto& r : records) {
    if (!r.decode_time_s || !r.audio_duration_s) {
      ++out.excluded;
      continue;
    }
    ++out.included;
    decode += *r.decode_time_s;
    audio += *r.audio_duration_s;
  }
  if (out.included == 0) return out;
  if (!(audio > 0.0)) throw InputError("diagnostics", "total audio duration is zero; RTF undefined");
  out.rtf = decode / audio;
  return out;
}

template <typename Timed>
RtfSummary corpus_rtf(const std::vector<Timed>& records) {
  return corpus_rtf(std::span<const Timed>(records));
}

inline nlohmann::ordered_json to_json(const LoopSignals& s) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  return {{"length_ratio", opt(s.length_ratio)},
          {"top_bigram_share", opt(s.top_bigram_share)},
          {"distinct_token_ratio", opt(s.distinct_token_ratio)},
          {"near_empty", s.near_empty}};
}

inline LoopSignals loop_signals_from_json(const nlohmann::json& j) {
  auto opt = [](const nlohmann::json& v) { return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()); };
  LoopSignals s;
  s.length_ratio = opt(j.at("length_ratio"));
  s.top_bigram_share = opt(j.at("top_bigram_share"));
  s.distinct_token_ratio = opt(j.at("distinct_token_ratio"));
  s.near_empty = j.at("near_empty").get<bool>();
  return s;
}

inline nlohmann::ordered_json to_json(const FailureThresholds& t) {
  return {{"repetition_length_ratio", t.repetition_length_ratio},
          {"switch_length_ratio", t.switch_length_ratio},
          {"top_bigram_share", t.top_bigram_share}};
}

inline FailureThresholds failure_thresholds_from_json(const nlohmann::json& j) {
  FailureThresholds t;
  if (!j.is_object()) throw InputError("diagnostics", "'failure_thresholds' must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw InputError("diagnostics", "'" + k + "' must be a number");
    if (k == "repetition_length_ratio") t.repetition_length_ratio = v.get<double>();
    else if (k == "switch_length_ratio") t.switch_length_ratio = v.get<double>();
    else if (k == "top_bigram_share") t.top_bigram_share = v.get<double>();
    else throw InputError("diagnostics", "unknown threshold '" + k + "'");
  }
  return t;
}

}  // namespace pseval
