// tests/test_textnorm.cpp

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

#include <catch2/catch_amalgamated.hpp>

#include "pseval/textnorm.hpp"
#include "test_util.hpp"

using namespace pseval;

namespace {

const CharacterInventory& inv() {
  static const CharacterInventory i = default_inventory();
  return i;
}

void check_invariants(const NormalizedText& t) {
  const auto cps = t.codepoints();
  for (char32_t cp : cps) {
    REQUIRE(cp != 0x0640);
    REQUIRE(cp != 0x060C);
    REQUIRE(cp != 0x06D4);
    REQUIRE(cp != 0x061F);
    REQUIRE((!is_unicode_whitespace(cp) || cp == U' '));
  }
  if (!cps.empty()) {
    REQUIRE(cps.front() != U' ');
    REQUIRE(cps.back() != U' ');
  }
  REQUIRE(t.str().find("  ") == std::string::npos);
  REQUIRE(nfc::nfc(cps) == cps);
}

}  // namespace

TEST_CASE("normalize examples", "[textnorm]") {
  CHECK(normalize("کـتاب").str() == "کتاب");
  CHECK(normalize("سلام، دنیا؟").str() == "سلام دنیا");
  CHECK(normalize("  a   b\t\n").str() == "a b");
  CHECK(normalize("").str().empty());
  // Decomposed heh + hamza stays two code points after NFC.
  CHECK(utf8::codepoint_list(normalize("پهٔ").codepoints()) == "U+067E U+0647 U+0654");
  // Decomposed ae + hamza composes.
  CHECK(normalize("\u06D5\u0654").str() == "\u06C0");
  CHECK(normalize("Hello, world.").str() == "Hello world");
  CHECK(normalize("ښار‌ونه‏").str() == "ښارونه");
  // Digits are untouched.
  CHECK(normalize("۱۲۳ 123 ١٢٣").str() == "۱۲۳ 123 ١٢٣");
  // No orthographic folding beyond NFC: Arabic yeh stays Arabic yeh.
  CHECK(normalize("ي").str() == "ي");
}

TEST_CASE("kashida between a letter and hamza recomposes", "[textnorm]") {
  // NFC cannot compose across the kashida; once it is removed the pair must compose.
  CHECK(normalize("وـٔ").str() == "ؤ");
  CHECK(normalize("ه‌ٔ").str() == "هٔ");
}

TEST_CASE("configuration flags", "[textnorm]") {
  NormalizationConfig keep_latin;
  keep_latin.strip_latin_punctuation = false;
  CHECK(normalize("Hello, world.", keep_latin).str() == "Hello, world.");
  CHECK(normalize("سلام، دنیا؟", keep_latin).str() == "سلام دنیا");

  NormalizationConfig keep_arabic;
  keep_arabic.strip_arabic_punctuation = false;
  CHECK(normalize("سلام، دنیا؟", keep_arabic).str() == "سلام، دنیا؟");

  NormalizationConfig keep_zw;
  keep_zw.remove_zero_width = false;
  CHECK(normalize("a‌b", keep_zw).str() == "a‌b");

  NormalizationConfig no_collapse;
  no_collapse.collapse_whitespace = false;
  CHECK(normalize(" a  b ", no_collapse).str() == " a  b ");
}

TEST_CASE("is_effectively_empty", "[textnorm]") {
  CHECK(is_effectively_empty(normalize("")));
  CHECK_FALSE(is_effectively_empty(normalize("ا")));
  CHECK(is_effectively_empty(normalize("ـــ،؟")));
  CHECK(is_effectively_empty(normalize(" ‌﻿ ۔ ")));
}

TEST_CASE("invalid UTF-8 is rejected", "[textnorm]") { CHECK_THROWS_AS(normalize("\xC3("), InputError); }

TEST_CASE("normalize is idempotent and satisfies its invariants on fuzzed text", "[textnorm][property]") {
  testing::TextFuzzer fuzz(424242);
  for (int i = 0; i < 12000; ++i) {
    const std::string raw = testing::from_cps(fuzz.text(24));
    const NormalizedText once = normalize(raw, {}, inv());
    const NormalizedText twice = normalize(once.str(), {}, inv());
    INFO(utf8::codepoint_list(utf8::decode(raw)));
    REQUIRE(once == twice);
    check_invariants(once);
  }
}

TEST_CASE("strings of removable characters normalize to empty", "[textnorm][property]") {
  const std::u32string removable = U"ـ،۔؟.,?!;:\"'()‌‍‎‏﻿ \t\n 　";
  testing::TextFuzzer fuzz(99);
  for (int i = 0; i < 3000; ++i) {
    std::u32string s;
    const std::size_t len = fuzz.pick(20);
    for (std::size_t k = 0; k < len; ++k) s.push_back(removable[fuzz.pick(removable.size())]);
    REQUIRE(is_effectively_empty(normalize(testing::from_cps(s), {}, inv())));
  }
}

TEST_CASE("normalize output is byte-stable", "[textnorm]") {
  const std::string raw = "  پهٔ   ټاپوګانواو،  جهيلونو؟ ";
  CHECK(normalize(raw).str() == normalize(raw).str());
  CHECK(normalize(raw).str() == "پهٔ ټاپوګانواو جهيلونو");
}
