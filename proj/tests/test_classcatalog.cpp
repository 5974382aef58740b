// tests/test_classcatalog.cpp

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

#include "pseval/classcatalog.hpp"
#include "test_util.hpp"

using namespace pseval;
using nlohmann::json;

TEST_CASE("default inventory", "[classcatalog]") {
  const auto inv = load_inventory();
  CHECK(inv.pashto_unique.size() == 12);
  for (char32_t cp : {0x067C, 0x06CD, 0x0696, 0x069A}) CHECK(inv.pashto_unique.count(cp));
  // The eight consonants plus the four vowel / kaf letters, as printed glyphs.
  CHECK(inv.pashto_unique == CodepointSet{U'ټ', U'ډ', U'ڼ', U'ړ', U'ښ', U'ږ', U'ځ', U'څ', U'ۍ', U'ې', U'ۀ', U'ګ'});
  CHECK(inv.arabic_punctuation == CodepointSet{0x060C, 0x06D4, 0x061F});
  CHECK(inv.kashida == 0x0640);
  CHECK(inv.strata_classes.size() == 12);
  CHECK(inv.strata_classes.front().name == "Voiced lateral fric.");
  CHECK(inv.strata_classes.front().chars == CodepointSet{U'ږ'});
  CHECK(inv.strata_classes.back().chars == CodepointSet{U'خ', U'غ', U'ق'});
  CHECK_NOTHROW(validate(inv));
}

TEST_CASE("shipped class catalogue file matches the built-in default", "[classcatalog]") {
  const auto j = read_json_file(std::string(PSEVAL_DATA_DIR) + "/classes.default.json", "test");
  CHECK(parse_class_catalogue(j) == default_strata_classes());
}

TEST_CASE("override adds a 13th unique letter", "[classcatalog]") {
  const auto inv = load_inventory(json{{"pashto_unique", {{"add", {"ے"}}}}});
  CHECK(inv.pashto_unique.size() == 13);
  CHECK(inv.pashto_unique.count(0x06D2));
  CHECK(checksum(inv) != checksum(load_inventory()));
}

TEST_CASE("override violating disjointness is rejected with the rule named", "[classcatalog]") {
  try {
    load_inventory(json{{"arabic_punctuation", {{"add", {"U+069A"}}}}});
    FAIL("expected rejection");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("disjoint from pashto_unique") != std::string::npos);
    CHECK(std::string(e.what()).find("U+069A") != std::string::npos);
  }
}

TEST_CASE("other invalid overrides", "[classcatalog]") {
  CHECK_THROWS_AS(load_inventory(json{{"pashto_unique", {{"add", {"A"}}}}}), InputError);  // outside the block
  CHECK_THROWS_AS(load_inventory(json{{"no_such_key", 1}}), InputError);
  CHECK_THROWS_AS(load_inventory(json{{"pashto_unique", {{"append", {"ے"}}}}}), InputError);
  CHECK_THROWS_AS(load_inventory(json{{"strata_classes", json::array()}}), InputError);
  CHECK_THROWS_AS(load_inventory(json{{"strata_classes", {{{"name", "x"}, {"chars", ""}}}}}), InputError);
  CHECK_THROWS_AS(load_inventory(json{{"strata_classes", {{{"name", "x"}, {"chars", "ر"}, {"pashto_unique", true}}}}}),
                  InputError);
  CHECK_THROWS_AS(parse_codepoint("U+D800"), InputError);
  CHECK_THROWS_AS(parse_codepoint("ab"), InputError);
}

TEST_CASE("inventory loading ignores override key order", "[classcatalog]") {
  const auto a = json::parse(R"({"pashto_unique": {"add": ["ے"]}, "latin_punctuation": {"remove": ["'"]}})");
  const auto b = json::parse(R"({"latin_punctuation": {"remove": ["'"]}, "pashto_unique": {"add": ["U+06D2"]}})");
  CHECK(checksum(load_inventory(a)) == checksum(load_inventory(b)));
  CHECK(load_inventory(a) == load_inventory(b));
}

TEST_CASE("checksum is stable", "[classcatalog]") {
  CHECK(checksum(load_inventory()) == checksum(default_inventory()));
  CHECK(checksum(load_inventory()).size() == 64);
}
