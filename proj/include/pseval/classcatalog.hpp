// include/pseval/classcatalog.hpp

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

// The character inventories every other module reads: the Pashto-exclusive
// letters, the stratification class catalogue, the stripped punctuation, and
// the kashida. Nothing else in the library hardcodes a code point list.

#include <openssl/evp.h>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/error.hpp"
#include "pseval/utf8.hpp"

namespace pseval {

using CodepointSet = std::set<char32_t>;

struct CharClass {
  std::string name;
  CodepointSet chars;
  bool pashto_unique = false;  // display flag only

  bool operator==(const CharClass&) const = default;
};

struct CodepointRange {
  char32_t first;
  char32_t last;
  bool contains(char32_t cp) const { return cp >= first && cp <= last; }
  bool operator==(const CodepointRange&) const = default;
};

struct CharacterInventory {
  CodepointSet pashto_unique;
  std::vector<CharClass> strata_classes;
  CodepointSet arabic_punctuation;
  CodepointSet latin_punctuation;
  CodepointSet zero_width;
  char32_t kashida = 0x0640;
  CodepointRange arabic_block{0x0600, 0x06FF};

  bool operator==(const CharacterInventory&) const = default;
};

namespace inventory_data {

struct NamedCodepoint {
  char32_t cp;
  const char* name;
};

// Names checked against the Unicode Character Database.
inline constexpr NamedCodepoint kPashtoUnique[] = {
    {0x067C, "ARABIC LETTER TEH WITH RING"},
    {0x0681, "ARABIC LETTER HAH WITH HAMZA ABOVE"},
    {0x0685, "ARABIC LETTER HAH WITH THREE DOTS ABOVE"},
    {0x0689, "ARABIC LETTER DAL WITH RING"},
    {0x0693, "ARABIC LETTER REH WITH RING"},
    {0x0696, "ARABIC LETTER REH WITH DOT BELOW AND DOT ABOVE"},
    {0x069A, "ARABIC LETTER SEEN WITH DOT BELOW AND DOT ABOVE"},
    {0x06AB, "ARABIC LETTER KAF WITH RING"},
    {0x06BC, "ARABIC LETTER NOON WITH RING"},
    {0x06C0, "ARABIC LETTER HEH WITH YEH ABOVE"},
    {0x06CD, "ARABIC LETTER YEH WITH TAIL"},
    {0x06D0, "ARABIC LETTER E"},
};

inline constexpr NamedCodepoint kArabicPunctuation[] = {
    {0x060C, "ARABIC COMMA"},
    {0x061F, "ARABIC QUESTION MARK"},
    {0x06D4, "ARABIC FULL STOP"},
};

inline constexpr std::string_view kLatinPunctuation = ".,?!;:\"'()";

inline constexpr NamedCodepoint kZeroWidth[] = {
    {0x200C, "ZERO WIDTH NON-JOINER"},
    {0x200D, "ZERO WIDTH JOINER"},
    {0x200E, "LEFT-TO-RIGHT MARK"},
    {0x200F, "RIGHT-TO-LEFT MARK"},
    {0xFEFF, "ZERO WIDTH NO-BREAK SPACE"},
};

struct ClassSpec {
  const char* name;
  std::u32string_view chars;
  bool pashto_unique;
};

inline constexpr ClassSpec kStrataClasses[] = {
    {"Voiced lateral fric.", U"ږ", true},
    {"Lateral fricative", U"ښ", true},
    {"Retroflex stops", U"ټډ", true},
    {"Pashto vowel markers", U"ئۍ", false},
    {"Affricates", U"ځڅ", true},
    {"Retroflex flap", U"ړ", true},
    {"Common liquids", U"رل", false},
    {"Dental stops", U"تدط", false},
    {"Common nasals", U"من", false},
    {"Velars", U"کګ", false},
    {"Common fricatives", U"زسشص", false},
    {"Uvulars", U"خغق", false},
};

}  // namespace inventory_data

inline std::string format_codepoint(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

// Accepts "U+067C" or a string holding exactly one code point.
inline char32_t parse_codepoint(std::string_view s) {
  if (s.size() > 2 && (s[0] == 'U' || s[0] == 'u') && s[1] == '+') {
    unsigned long v = 0;
    std::size_t k = 2;
    for (; k < s.size(); ++k) {
      const char c = s[k];
      int d;
      if (c >= '0' && c <= '9') d = c - '0';
      else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
      else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
      else break;
      v = v * 16 + static_cast<unsigned>(d);
      if (v > 0x10FFFF) break;
    }
    if (k == s.size() && k <= 8 && v <= 0x10FFFF && !(v >= 0xD800 && v <= 0xDFFF)) {
      return static_cast<char32_t>(v);
    }
    throw InputError("classcatalog", "bad code point literal '" + std::string(s) + "'");
  }
  auto cps = utf8::try_decode(s);
  if (!cps || cps->size() != 1) {
    throw InputError("classcatalog", "expected a single character or U+XXXX, got '" + std::string(s) + "'");
  }
  return (*cps)[0];
}

// A JSON array of code point strings, or one string of characters (whitespace ignored).
inline CodepointSet parse_codepoint_set(const nlohmann::json& j) {
  CodepointSet out;
  if (j.is_string()) {
    for (char32_t cp : utf8::decode(j.get<std::string>())) {
      if (cp != U' ' && cp != U'\t') out.insert(cp);
    }
    return out;
  }
  if (!j.is_array()) throw InputError("classcatalog", "character set must be a string or an array");
  for (const auto& e : j) {
    if (!e.is_string()) throw InputError("classcatalog", "character set entries must be strings");
    out.insert(parse_codepoint(e.get<std::string>()));
  }
  return out;
}

inline std::vector<CharClass> default_strata_classes() {
  std::vector<CharClass> out;
  for (const auto& spec : inventory_data::kStrataClasses) {
    out.push_back({spec.name, CodepointSet(spec.chars.begin(), spec.chars.end()), spec.pashto_unique});
  }
  return out;
}

inline CharacterInventory default_inventory() {
  CharacterInventory inv;
  for (const auto& c : inventory_data::kPashtoUnique) inv.pashto_unique.insert(c.cp);
  for (const auto& c : inventory_data::kArabicPunctuation) inv.arabic_punctuation.insert(c.cp);
  for (char c : inventory_data::kLatinPunctuation) inv.latin_punctuation.insert(static_cast<char32_t>(c));
  for (const auto& c : inventory_data::kZeroWidth) inv.zero_width.insert(c.cp);
  inv.strata_classes = default_strata_classes();
  return inv;
}

inline std::vector<CharClass> parse_class_catalogue(const nlohmann::json& j) {
  if (!j.is_array()) throw InputError("classcatalog", "class catalogue must be an array");
  std::vector<CharClass> out;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("name") || !e.contains("chars")) {
      throw InputError("classcatalog", "each class needs 'name' and 'chars'");
    }
    for (const auto& [key, _] : e.items()) {
      if (key != "name" && key != "chars" && key != "pashto_unique") {
        throw InputError("classcatalog", "unknown class field '" + key + "'");
      }
    }
    CharClass cls;
    cls.name = e.at("name").get<std::string>();
    cls.chars = parse_codepoint_set(e.at("chars"));
    cls.pashto_unique = e.value("pashto_unique", false);
    out.push_back(std::move(cls));
  }
  return out;
}

// Throws naming the first violated rule.
inline void validate(const CharacterInventory& inv) {
  auto fail = [](const std::string& rule) { throw InputError("classcatalog", "inventory rejected: " + rule); };
  if (inv.pashto_unique.empty()) fail("pashto_unique must not be empty");
  for (char32_t cp : inv.pashto_unique) {
    if (!inv.arabic_block.contains(cp)) {
      fail("pashto_unique must lie inside the Arabic block U+0600..U+06FF (" + format_codepoint(cp) + ")");
    }
  }
  auto check_disjoint = [&](const CodepointSet& s, const char* what) {
    for (char32_t cp : s) {
      if (inv.pashto_unique.count(cp)) {
        fail(std::string(what) + " must be disjoint from pashto_unique (" + format_codepoint(cp) + ")");
      }
    }
  };
  check_disjoint(inv.arabic_punctuation, "stripped punctuation");
  check_disjoint(inv.latin_punctuation, "stripped punctuation");
  check_disjoint(inv.zero_width, "zero-width set");
  if (inv.pashto_unique.count(inv.kashida)) fail("kashida must be disjoint from pashto_unique");
  if (inv.strata_classes.empty()) fail("class catalogue must not be empty");
  std::set<std::string> names;
  for (const auto& cls : inv.strata_classes) {
    if (cls.name.empty()) fail("class names must be non-empty");
    if (!names.insert(cls.name).second) fail("class names must be unique ('" + cls.name + "')");
    if (cls.chars.empty()) fail("class '" + cls.name + "' must have at least one character");
    if (cls.pashto_unique) {
      for (char32_t cp : cls.chars) {
        if (!inv.pashto_unique.count(cp)) {
          fail("class '" + cls.name + "' is flagged pashto_unique but " + format_codepoint(cp) +
               " is not in pashto_unique");
        }
      }
    }
  }
}

// Override schema: {"pashto_unique": {"add": [...], "remove": [...]}, same for
// "arabic_punctuation", "latin_punctuation", "zero_width"; "strata_classes": [...]
// replaces the catalogue}. Unknown keys are rejected.
inline CharacterInventory apply_override(CharacterInventory inv, const nlohmann::json& override_json) {
  if (!override_json.is_object()) throw InputError("classcatalog", "inventory override must be an object");
  auto apply_set = [](CodepointSet& target, const nlohmann::json& delta, const std::string& key) {
    if (!delta.is_object()) throw InputError("classcatalog", "'" + key + "' must be an object with add/remove");
    for (const auto& [k, v] : delta.items()) {
      if (k == "add") {
        auto s = parse_codepoint_set(v);
        target.insert(s.begin(), s.end());
      } else if (k == "remove") {
        for (char32_t cp : parse_codepoint_set(v)) target.erase(cp);
      } else {
        throw InputError("classcatalog", "unknown key '" + k + "' under '" + key + "'");
      }
    }
  };
  for (const auto& [key, value] : override_json.items()) {
    if (key == "pashto_unique") apply_set(inv.pashto_unique, value, key);
    else if (key == "arabic_punctuation") apply_set(inv.arabic_punctuation, value, key);
    else if (key == "latin_punctuation") apply_set(inv.latin_punctuation, value, key);
    else if (key == "zero_width") apply_set(inv.zero_width, value, key);
    else if (key == "strata_classes") inv.strata_classes = parse_class_catalogue(value);
    else throw InputError("classcatalog", "unknown inventory override key '" + key + "'");
  }
  return inv;
}

inline CharacterInventory load_inventory() {
  CharacterInventory inv = default_inventory();
  validate(inv);
  return inv;
}

inline CharacterInventory load_inventory(const nlohmann::json& override_json) {
  CharacterInventory inv = apply_override(default_inventory(), override_json);
  validate(inv);
  return inv;
}

inline nlohmann::json read_json_file(const std::string& path, const char* module) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(module, "cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(module, "'" + path + "': " + e.what());
  }
}

inline CharacterInventory load_inventory_file(const std::string& path) {
  return load_inventory(read_json_file(path, "classcatalog"));
}

inline nlohmann::ordered_json codepoint_set_json(const CodepointSet& s) {
  auto arr = nlohmann::ordered_json::array();
  for (char32_t cp : s) arr.push_back(format_codepoint(cp));
  return arr;
}

inline std::string glyphs(const CodepointSet& s) {
  std::string out;
  for (char32_t cp : s) {
    if (!out.empty()) out.push_back(' ');
    utf8::append(out, cp);
  }
  return out;
}

// Canonical form: sets sorted by code point, classes in catalogue order.
inline nlohmann::ordered_json to_json(const CharacterInventory& inv) {
  nlohmann::ordered_json j;
  j["pashto_unique"] = codepoint_set_json(inv.pashto_unique);
  j["arabic_punctuation"] = codepoint_set_json(inv.arabic_punctuation);
  j["latin_punctuation"] = codepoint_set_json(inv.latin_punctuation);
  j["zero_width"] = codepoint_set_json(inv.zero_width);
  j["kashida"] = format_codepoint(inv.kashida);
  j["arabic_block"] = {format_codepoint(inv.arabic_block.first), format_codepoint(inv.arabic_block.last)};
  auto classes = nlohmann::ordered_json::array();
  for (const auto& cls : inv.strata_classes) {
    nlohmann::ordered_json c;
    c["name"] = cls.name;
    c["chars"] = codepoint_set_json(cls.chars);
    c["pashto_unique"] = cls.pashto_unique;
    classes.push_back(std::move(c));
  }
  j["strata_classes"] = std::move(classes);
  return j;
}

inline std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw InvariantError("classcatalog", "SHA-256 computation failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

// SHA-256 of the canonical JSON dump.
inline std::string checksum(const CharacterInventory& inv) { return sha256_hex(to_json(inv).dump()); }

}  // namespace pseval
