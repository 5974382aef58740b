// tests/test_scriptid.cpp

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

#include "pseval/scriptid.hpp"
#include "test_util.hpp"

using namespace pseval;
using Catch::Approx;

namespace {

const CharacterInventory& inv() {
  static const CharacterInventory i = default_inventory();
  return i;
}

ScriptLabel label(const std::string& s) { return classify(normalize(s, {}, inv()), inv()); }

}  // namespace

TEST_CASE("classify examples", "[scriptid]") {
  CHECK(label("ښار") == ScriptLabel::Pashto);
  CHECK(label("سلام") == ScriptLabel::ArDaUr);
  CHECK(label("hello") == ScriptLabel::Latin);
  CHECK(label("") == ScriptLabel::Empty);
  CHECK(label("12345") == ScriptLabel::Indeterminate);
  // Exact half is not a majority.
  CHECK(label("ab سل") == ScriptLabel::Indeterminate);
  CHECK(label("abc سل") == ScriptLabel::Latin);
  // Arabic-Indic digits do not count toward the Arabic majority.
  CHECK(label("س ١٢") == ScriptLabel::Indeterminate);
  CHECK(label("سل ١") == ScriptLabel::ArDaUr);
}

TEST_CASE("hand-labelled fixture set", "[scriptid][fixture]") {
  const auto items = testing::script_labels();
  REQUIRE(items.size() == 30);
  std::array<int, 5> per_label{};
  for (const auto& it : items) {
    INFO(it.id << " " << it.text);
    CHECK(to_string(label(it.text)) == it.label);
    ++per_label[static_cast<std::size_t>(script_label_from_string(it.label))];
  }
  for (int c : per_label) CHECK(c == 6);
}

TEST_CASE("one Pashto-unique character promotes ArDaUr to Pashto", "[scriptid][property]") {
  for (const auto& it : testing::script_labels()) {
    if (it.label != "ArDaUr") continue;
    for (char32_t u : inv().pashto_unique) {
      const std::string flipped = it.text + testing::from_cps(std::u32string(1, u));
      INFO(flipped);
      CHECK(label(flipped) == ScriptLabel::Pashto);
    }
  }
}

TEST_CASE("Pashto-unique characters need a block majority", "[scriptid]") {
  // Unique letters inside mostly Latin text do not make it Pashto.
  CHECK(label("hello world ښ") == ScriptLabel::Latin);
}

TEST_CASE("emptiness wins over everything", "[scriptid][property]") {
  testing::TextFuzzer fuzz(2024);
  for (int i = 0; i < 2000; ++i) {
    const auto n = normalize(testing::from_cps(fuzz.text(10)), {}, inv());
    const ScriptLabel l = classify(n, inv());
    REQUIRE((l == ScriptLabel::Empty) == is_effectively_empty(n));
  }
}

TEST_CASE("custom inventory changes the Pashto tier", "[scriptid]") {
  const auto extended = load_inventory(nlohmann::json::parse(R"({"pashto_unique": {"add": ["U+06D2"]}})"));
  CHECK(classify(normalize("سلامے", {}, extended), extended) == ScriptLabel::Pashto);
  CHECK(label("سلامے") == ScriptLabel::ArDaUr);
}

TEST_CASE("audit percentages", "[scriptid]") {
  const auto items = testing::script_labels();
  std::vector<ScriptLabel> labels;
  for (const auto& it : items) labels.push_back(label(it.text));
  const ScriptDistribution d = audit(labels);
  CHECK(d.n == 30);
  CHECK(d.pashto_pct == Approx(20.0));
  const double sum = d.pashto_pct + d.ardaur_pct + d.latin_pct + d.empty_pct + d.indeterminate_pct;
  CHECK(sum == Approx(100.0).margin(0.2));
  CHECK_THROWS_AS(audit(std::vector<ScriptLabel>{}), InputError);

  testing::TextFuzzer fuzz(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<ScriptLabel> ls;
    for (std::size_t i = 0, n = 1 + fuzz.pick(40); i < n; ++i) ls.push_back(kAllScriptLabels[fuzz.pick(5)]);
    const auto dd = audit(ls);
    const double s = dd.pashto_pct + dd.ardaur_pct + dd.latin_pct + dd.empty_pct + dd.indeterminate_pct;
    REQUIRE(s == Approx(100.0).margin(0.2));
  }
}

TEST_CASE("script labels round-trip through strings", "[scriptid]") {
  for (ScriptLabel l : kAllScriptLabels) CHECK(script_label_from_string(to_string(l)) == l);
  CHECK_THROWS_AS(script_label_from_string("Dari"), InputError);
}

TEST_CASE("distribution JSON round-trip", "[scriptid]") {
  const auto d = audit(std::vector<ScriptLabel>{ScriptLabel::Pashto, ScriptLabel::Latin, ScriptLabel::Latin});
  CHECK(script_distribution_from_json(nlohmann::json::parse(to_json(d).dump())) == d);
}
