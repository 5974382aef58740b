// tests/test_nfc.cpp

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

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <catch2/catch_amalgamated.hpp>

#include "pseval/nfc.hpp"
#include "pseval/utf8.hpp"
#include "test_util.hpp"

using namespace pseval;

namespace {

std::u32string icu_nfc(const std::u32string& in) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* n = icu::Normalizer2::getNFCInstance(status);
  REQUIRE(U_SUCCESS(status));
  icu::UnicodeString src = icu::UnicodeString::fromUTF32(reinterpret_cast<const UChar32*>(in.data()),
                                                         static_cast<int32_t>(in.size()));
  icu::UnicodeString dst = n->normalize(src, status);
  REQUIRE(U_SUCCESS(status));
  std::u32string out(static_cast<std::size_t>(dst.countChar32()), U'\0');
  dst.toUTF32(reinterpret_cast<UChar32*>(out.data()), static_cast<int32_t>(out.size()), status);
  REQUIRE(U_SUCCESS(status));
  return out;
}

}  // namespace

TEST_CASE("utf8 rejects ill-formed input", "[utf8]") {
  CHECK(utf8::is_valid("سلام"));
  CHECK(utf8::is_valid(""));
  CHECK_FALSE(utf8::is_valid("\xC0\x80"));          // overlong NUL
  CHECK_FALSE(utf8::is_valid("\xED\xA0\x80"));      // surrogate
  CHECK_FALSE(utf8::is_valid("\xF4\x90\x80\x80"));  // > U+10FFFF
  CHECK_FALSE(utf8::is_valid("\xD8"));              // truncated
  CHECK_FALSE(utf8::is_valid("\x80"));
  CHECK_THROWS_AS(utf8::decode("\xFF"), InputError);
}

TEST_CASE("utf8 encode inverts decode", "[utf8]") {
  testing::TextFuzzer fuzz(11);
  for (int i = 0; i < 2000; ++i) {
    const auto cps = fuzz.text(16);
    CHECK(utf8::decode(utf8::encode(cps)) == cps);
  }
}

TEST_CASE("NFC fixtures", "[nfc]") {
  // Heh + hamza above has no precomposed form; the sequence survives NFC.
  CHECK(nfc::nfc(std::u32string(U"هٔ")) == U"هٔ");
  CHECK(utf8::codepoint_list(nfc::nfc(utf8::decode("پهٔ"))) == "U+067E U+0647 U+0654");
  // Ae + hamza above composes to U+06C0, one of the Pashto-unique letters.
  CHECK(nfc::nfc(std::u32string(U"ۀ")) == U"ۀ");
  CHECK(nfc::nfc(std::u32string(U"ئ")) == U"ئ");
  CHECK(nfc::nfc(std::u32string(U"آ")) == U"آ");
  CHECK(nfc::nfc(std::u32string(U"ؤ")) == U"ؤ");
  CHECK(nfc::nfc(std::u32string(U"é")) == U"é");
  // Canonical reordering: dot below (220) sorts before dot above (230), then composes.
  CHECK(nfc::nfc(std::u32string(U"ṩ")) == U"ṩ");
  // Hangul L + V + T.
  CHECK(nfc::nfc(std::u32string(U"각")) == U"각");
  // Singleton decomposition: Angstrom sign -> A with ring.
  CHECK(nfc::nfc(std::u32string(U"Å")) == U"Å");
  // A mark blocked by an intervening starter does not compose.
  CHECK(nfc::nfc(std::u32string(U"وـٔ")) == U"وـٔ");
  CHECK(nfc::nfc(std::u32string()) == U"");
}

TEST_CASE("combining classes", "[nfc]") {
  CHECK(nfc::combining_class(U'a') == 0);
  CHECK(nfc::combining_class(0x0654) == 230);
  CHECK(nfc::combining_class(0x0655) == 220);
  CHECK(nfc::combining_class(0x064B) == 27);
  CHECK(nfc::combining_class(0x0301) == 230);
}

TEST_CASE("NFC agrees with ICU on fuzzed text", "[nfc][oracle]") {
  testing::TextFuzzer fuzz(2026);
  for (int i = 0; i < 20000; ++i) {
    const auto s = fuzz.text(12);
    INFO(utf8::codepoint_list(s));
    REQUIRE(nfc::nfc(s) == icu_nfc(s));
  }
}

TEST_CASE("NFC agrees with ICU on every single code point", "[nfc][oracle]") {
  for (char32_t cp = 1; cp < 0x30000; ++cp) {
    if (cp >= 0xD800 && cp <= 0xDFFF) continue;
    const std::u32string s{cp};
    INFO(utf8::codepoint_list(s));
    REQUIRE(nfc::nfc(s) == icu_nfc(s));
  }
}
