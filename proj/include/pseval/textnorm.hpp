// include/pseval/textnorm.hpp

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

// Text normalization applied to every reference and hypothesis before scoring:
// NFC, kashida removal, punctuation stripping, zero-width removal, whitespace
// collapse, trim.

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "pseval/classcatalog.hpp"
#include "pseval/nfc.hpp"
#include "pseval/utf8.hpp"

namespace pseval {

struct NormalizationConfig {
  bool strip_arabic_punctuation = true;
  bool strip_latin_punctuation = true;
  bool remove_zero_width = true;
  bool collapse_whitespace = true;

  bool operator==(const NormalizationConfig&) const = default;
};

// Unicode White_Space property.
inline constexpr bool is_unicode_whitespace(char32_t cp) {
  return (cp >= 0x0009 && cp <= 0x000D) || cp == 0x0020 || cp == 0x0085 || cp == 0x00A0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 || cp == 0x2029 ||
         cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

class NormalizedText;
NormalizedText normalize(std::string_view raw, const NormalizationConfig& config,
                         const CharacterInventory& inventory);

// Output of normalize(); only normalize() can produce one.
class NormalizedText {
 public:
  NormalizedText() = default;

  const std::string& str() const noexcept { return text_; }
  std::u32string codepoints() const { return utf8::decode(text_); }
  bool empty() const noexcept { return text_.empty(); }

  bool operator==(const NormalizedText&) const = default;

 private:
  explicit NormalizedText(std::string text) : text_(std::move(text)) {}
  friend NormalizedText normalize(std::string_view, const NormalizationConfig&, const CharacterInventory&);

  std::string text_;
};

inline std::u32string normalize_codepoints(std::u32string_view raw, const NormalizationConfig& config,
                                           const CharacterInventory& inventory) {
  std::u32string composed = nfc::nfc(raw);

  std::u32string kept;
  kept.reserve(composed.size());
  for (char32_t cp : composed) {
    if (cp == inventory.kashida) continue;
    if (config.strip_arabic_punctuation && inventory.arabic_punctuation.count(cp)) continue;
    if (config.strip_latin_punctuation && inventory.latin_punctuation.count(cp)) continue;
    if (config.remove_zero_width && inventory.zero_width.count(cp)) continue;
    kept.push_back(cp);
  }

  if (config.collapse_whitespace) {
    std::u32string collapsed;
    collapsed.reserve(kept.size());
    bool pending_space = false;
    for (char32_t cp : kept) {
      if (is_unicode_whitespace(cp)) {
        pending_space = !collapsed.empty();
        continue;
      }
      if (pending_space) collapsed.push_back(U' ');
      pending_space = false;
      collapsed.push_back(cp);
    }
    kept = std::move(collapsed);
  }

  // Removing a character can leave a base and a combining mark adjacent
  // (e.g. waw, kashida, hamza above), so recompose once more.
  return nfc::nfc(kept);
}

inline NormalizedText normalize(std::string_view raw, const NormalizationConfig& config,
                                const CharacterInventory& inventory) {
  return NormalizedText(utf8::encode(normalize_codepoints(utf8::decode(raw), config, inventory)));
}

inline NormalizedText normalize(std::string_view raw, const NormalizationConfig& config = {}) {
  static const CharacterInventory inventory = default_inventory();
  return normalize(raw, config, inventory);
}

inline bool is_effectively_empty(const NormalizedText& t) {
  for (char32_t cp : t.codepoints()) {
    if (!is_unicode_whitespace(cp)) return false;
  }
  return true;
}

inline nlohmann::ordered_json to_json(const NormalizationConfig& c) {
  return {{"strip_arabic_punctuation", c.strip_arabic_punctuation},
          {"strip_latin_punctuation", c.strip_latin_punctuation},
          {"remove_zero_width", c.remove_zero_width},
          {"collapse_whitespace", c.collapse_whitespace}};
}

inline NormalizationConfig normalization_config_from_json(const nlohmann::json& j) {
  NormalizationConfig c;
  if (!j.is_object()) throw InputError("textnorm", "'normalization' must be an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_boolean()) throw InputError("textnorm", "'" + k + "' must be a boolean");
    if (k == "strip_arabic_punctuation") c.strip_arabic_punctuation = v.get<bool>();
    else if (k == "strip_latin_punctuation") c.strip_latin_punctuation = v.get<bool>();
    else if (k == "remove_zero_width") c.remove_zero_width = v.get<bool>();
    else if (k == "collapse_whitespace") c.collapse_whitespace = v.get<bool>();
    else throw InputError("textnorm", "unknown normalization option '" + k + "'");
  }
  return c;
}

}  // namespace pseval
