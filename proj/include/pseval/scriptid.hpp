// include/pseval/scriptid.hpp

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

// Script audit: which writing system a hypothesis is actually in. A hypothesis
// counts as Pashto only if most of its characters are in the Arabic block AND
// it carries at least one Pashto-exclusive letter; otherwise Arabic-block text
// is indistinguishable from Arabic, Dari or Urdu.

#include <array>
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pseval/classcatalog.hpp"
#include "pseval/error.hpp"
#include "pseval/textnorm.hpp"

namespace pseval {

enum class ScriptLabel { Pashto, ArDaUr, Latin, Empty, Indeterminate };

inline constexpr std::array<ScriptLabel, 5> kAllScriptLabels = {
    ScriptLabel::Pashto, ScriptLabel::ArDaUr, ScriptLabel::Latin, ScriptLabel::Empty, ScriptLabel::Indeterminate};

inline std::string_view to_string(ScriptLabel l) {
  switch (l) {
    case ScriptLabel::Pashto: return "Pashto";
    case ScriptLabel::ArDaUr: return "ArDaUr";
    case ScriptLabel::Latin: return "Latin";
    case ScriptLabel::Empty: return "Empty";
    case ScriptLabel::Indeterminate: return "Indeterminate";
  }
  return "?";
}

inline ScriptLabel script_label_from_string(std::string_view s) {
  for (ScriptLabel l : kAllScriptLabels) {
    if (to_string(l) == s) return l;
  }
  throw InputError("scriptid", "unknown script label '" + std::string(s) + "'");
}

inline bool is_latin_letter(char32_t cp) { return (cp >= U'A' && cp <= U'Z') || (cp >= U'a' && cp <= U'z'); }

// Arabic-Indic and extended Arabic-Indic digits sit inside the Arabic block but
// count as neither Arabic-script nor Latin text.
inline bool is_arabic_digit(char32_t cp) { return (cp >= 0x0660 && cp <= 0x0669) || (cp >= 0x06F0 && cp <= 0x06F9); }

inline ScriptLabel classify_codepoints(std::u32string_view text, const CharacterInventory& inventory) {
  std::size_t total = 0, arabic = 0, latin = 0;
  bool has_unique = false;
  for (char32_t cp : text) {
    if (is_unicode_whitespace(cp)) continue;
    ++total;
    if (inventory.arabic_block.contains(cp) && !is_arabic_digit(cp)) ++arabic;
    if (is_latin_letter(cp)) ++latin;
    if (inventory.pashto_unique.count(cp)) has_unique = true;
  }
  if (total == 0) return ScriptLabel::Empty;
  // Strict majority; an exact half goes to Indeterminate.
  if (2 * arabic > total) return has_unique ? ScriptLabel::Pashto : ScriptLabel::ArDaUr;
  if (2 * latin > total) return ScriptLabel::Latin;
  return ScriptLabel::Indeterminate;
}

inline ScriptLabel classify(const NormalizedText& hyp, const CharacterInventory& inventory) {
  return classify_codepoints(hyp.codepoints(), inventory);
}

struct ScriptDistribution {
  std::size_t n = 0;
  std::array<std::size_t, 5> counts{};  // indexed by ScriptLabel
  double pashto_pct = 0.0;
  double ardaur_pct = 0.0;
  double latin_pct = 0.0;
  double empty_pct = 0.0;
  double indeterminate_pct = 0.0;

  std::size_t count(ScriptLabel l) const { return counts[static_cast<std::size_t>(l)]; }
  bool operator==(const ScriptDistribution&) const = default;
};

inline ScriptDistribution audit(std::span<const ScriptLabel> labels) {
  if (labels.empty()) throw InputError("scriptid", "cannot audit an empty manifest");
  ScriptDistribution d;
  d.n = labels.size();
  for (ScriptLabel l : labels) ++d.counts[static_cast<std::size_t>(l)];
  auto pct = [&](ScriptLabel l) { return 100.0 * static_cast<double>(d.count(l)) / static_cast<double>(d.n); };
  d.pashto_pct = pct(ScriptLabel::Pashto);
  d.ardaur_pct = pct(ScriptLabel::ArDaUr);
  d.latin_pct = pct(ScriptLabel::Latin);
  d.empty_pct = pct(ScriptLabel::Empty);
  d.indeterminate_pct = pct(ScriptLabel::Indeterminate);
  return d;
}

inline ScriptDistribution audit(const std::vector<ScriptLabel>& labels) {
  return audit(std::span<const ScriptLabel>(labels));
}

inline nlohmann::ordered_json to_json(const ScriptDistribution& d) {
  nlohmann::ordered_json counts;
  for (ScriptLabel l : kAllScriptLabels) counts[std::string(to_string(l))] = d.count(l);
  return {{"n", d.n},
          {"pashto_pct", d.pashto_pct},
          {"ardaur_pct", d.ardaur_pct},
          {"latin_pct", d.latin_pct},
          {"empty_pct", d.empty_pct},
          {"indeterminate_pct", d.indeterminate_pct},
          {"counts", counts}};
}

inline ScriptDistribution script_distribution_from_json(const nlohmann::json& j) {
  ScriptDistribution d;
  d.n = j.at("n").get<std::size_t>();
  d.pashto_pct = j.at("pashto_pct").get<double>();
  d.ardaur_pct = j.at("ardaur_pct").get<double>();
  d.latin_pct = j.at("latin_pct").get<double>();
  d.empty_pct = j.at("empty_pct").get<double>();
  d.indeterminate_pct = j.at("indeterminate_pct").get<double>();
  for (ScriptLabel l : kAllScriptLabels) {
    d.counts[static_cast<std::size_t>(l)] = j.at("counts").at(std::string(to_string(l))).get<std::size_t>();
  }
  return d;
}

}  // namespace pseval
