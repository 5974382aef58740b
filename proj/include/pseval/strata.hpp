// include/pseval/strata.hpp

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

// Character-class stratification: WER/CER over the utterances whose normalized
// reference contains at least one character of a class, and the deviation of
// that subset WER from the overall WER. Classes overlap.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/classcatalog.hpp"
#include "pseval/error.hpp"
#include "pseval/metrics.hpp"

namespace pseval {

struct StratumResult {
  std::string class_name;
  std::string chars;  // space-separated glyphs
  bool pashto_unique = false;
  std::size_t n = 0;
  std::optional<double> wer;  // null when n == 0
  std::optional<double> cer;
  std::optional<double> delta;  // wer - overall wer

  bool operator==(const StratumResult&) const = default;
};

inline double delta_from_overall(double class_wer, double overall_wer) { return class_wer - overall_wer; }

inline bool contains_any(std::u32string_view text, const CodepointSet& chars) {
  for (char32_t cp : text) {
    if (chars.count(cp)) return true;
  }
  return false;
}

inline std::vector<StratumResult> stratify(std::span<const UtteranceScore> scores, std::span<const CharClass> classes,
                                           const CorpusScore& overall) {
  if (classes.empty()) throw InputError("strata", "empty class catalogue");
  std::vector<std::u32string> refs;
  refs.reserve(scores.size());
  for (const auto& s : scores) refs.push_back(utf8::decode(s.reference));

  std::vector<StratumResult> out;
  out.reserve(classes.size());
  for (const auto& cls : classes) {
    if (cls.chars.empty()) throw InputError("strata", "class '" + cls.name + "' has no characters");
    StratumResult r;
    r.class_name = cls.name;
    r.chars = glyphs(cls.chars);
    r.pashto_unique = cls.pashto_unique;
    std::vector<UtteranceScore> subset;
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (contains_any(refs[i], cls.chars)) subset.push_back(scores[i]);
    }
    r.n = subset.size();
    if (!subset.empty()) {
      const CorpusScore c = score_corpus(subset);
      r.wer = c.wer;
      r.cer = c.cer;
      r.delta = delta_from_overall(c.wer, overall.wer);
    }
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<StratumResult> stratify(const std::vector<UtteranceScore>& scores,
                                           const std::vector<CharClass>& classes, const CorpusScore& overall) {
  return stratify(std::span<const UtteranceScore>(scores), std::span<const CharClass>(classes), overall);
}

inline nlohmann::ordered_json to_json(const StratumResult& r) {
  auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(); };
  return {{"class", r.class_name}, {"chars", r.chars}, {"pashto_unique", r.pashto_unique}, {"n", r.n},
          {"wer", opt(r.wer)},     {"cer", opt(r.cer)},   {"delta", opt(r.delta)}};
}

inline StratumResult stratum_from_json(const nlohmann::json& j) {
  auto opt = [](const nlohmann::json& v) { return v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()); };
  StratumResult r;
  r.class_name = j.at("class").get<std::string>();
  r.chars = j.at("chars").get<std::string>();
  r.pashto_unique = j.at("pashto_unique").get<bool>();
  r.n = j.at("n").get<std::size_t>();
  r.wer = opt(j.at("wer"));
  r.cer = opt(j.at("cer"));
  r.delta = opt(j.at("delta"));
  return r;
}

}  // namespace pseval
