// tests/test_util.hpp

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

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/utf8.hpp"

namespace pseval::testing {

inline std::string fixture(const std::string& name) { return std::string(PSEVAL_FIXTURE_DIR) + "/" + name; }

struct LabelledText {
  std::string id;
  std::string text;
  std::string label;
};

// Hand-labelled script identification examples.
inline std::vector<LabelledText> script_labels() {
  std::ifstream in(fixture("script_labels.jsonl"));
  std::vector<LabelledText> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    out.push_back({j.at("id"), j.at("text"), j.at("label")});
  }
  return out;
}

inline std::string from_cps(std::u32string_view cps) { return utf8::encode(cps); }

// Random text over a mix of ranges relevant to Arabic-script evaluation.
class TextFuzzer {
 public:
  explicit TextFuzzer(std::uint64_t seed) : rng_(seed) {}

  char32_t codepoint() {
    switch (pick(8)) {
      case 0: return range(0x0600, 0x06FF);  // Arabic
      case 1: return range(0x0750, 0x077F);  // Arabic Supplement
      case 2: return range(0x0020, 0x007E);  // ASCII
      case 3: return range(0x00C0, 0x024F);  // Latin-1 / Extended
      case 4: return range(0x0300, 0x036F);  // combining diacritics
      case 5: {
        static constexpr char32_t kSpecial[] = {0x0640, 0x060C, 0x061F, 0x06D4, 0x200C, 0x200D, 0x200E,
                                                0x200F, 0xFEFF, 0x0020, 0x00A0, 0x2003, 0x0009, 0x0654,
                                                0x0655, 0x064B, 0x0670, 0x3000, 0x2028, 0xAC00, 0x1100};
        return kSpecial[pick(std::size(kSpecial))];
      }
      case 6: return range(0xAC00, 0xD7A3);  // Hangul syllables
      default: {
        char32_t cp;
        do {
          cp = range(0x0001, 0x10FFFF);
        } while (cp >= 0xD800 && cp <= 0xDFFF);
        return cp;
      }
    }
  }

  std::u32string text(std::size_t max_len) {
    std::u32string s;
    const std::size_t len = pick(max_len + 1);
    for (std::size_t i = 0; i < len; ++i) s.push_back(codepoint());
    return s;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

 private:
  char32_t range(char32_t lo, char32_t hi) {
    return static_cast<char32_t>(std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng_));
  }
  std::mt19937_64 rng_;
};

}  // namespace pseval::testing
