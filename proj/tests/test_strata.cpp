// tests/test_strata.cpp

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

#include <cmath>

#include <catch2/catch_amalgamated.hpp>

#include "pseval/strata.hpp"
#include "test_util.hpp"

using namespace pseval;
using Catch::Approx;

namespace {

UtteranceScore sc(const std::string& ref, const std::string& hyp) {
  return score_utterance({"u" + ref, ref, hyp, "", "", std::nullopt, std::nullopt});
}

CharClass cls(std::string name, std::u32string chars, bool unique = false) {
  return {std::move(name), CodepointSet(chars.begin(), chars.end()), unique};
}

}  // namespace

TEST_CASE("stratify examples", "[strata]") {
  const std::vector<UtteranceScore> s{sc("ښار ښکلی", "خار ښکلی"), sc("سلام دنیا", "سلام دنیا"), sc("ټول", "تول")};
  const CorpusScore overall = score_corpus(s);
  CHECK(overall.wer == Approx(2.0 / 5.0));
  const std::vector<CharClass> classes{cls("lateral", U"ښږ", true), cls("retroflex", U"ټډ", true),
                                       cls("none", U"ڼ", true)};
  const auto r = stratify(s, classes, overall);
  REQUIRE(r.size() == 3);
  CHECK(r[0].n == 1);
  CHECK(*r[0].wer == Approx(0.5));
  CHECK(*r[0].delta == Approx(0.1));
  CHECK(r[0].chars == "ږ ښ");
  CHECK(r[1].n == 1);
  CHECK(*r[1].wer == Approx(1.0));
  CHECK(r[2].n == 0);
  CHECK_FALSE(r[2].wer);
  CHECK_FALSE(r[2].delta);
  CHECK_THROWS_AS(stratify(s, std::vector<CharClass>{}, overall), InputError);
}

TEST_CASE("stratum membership depends only on references", "[strata][property]") {
  testing::TextFuzzer fuzz(11);
  const auto classes = default_strata_classes();
  std::vector<UtteranceScore> a, b;
  for (int i = 0; i < 200; ++i) {
    const auto ref = testing::from_cps(fuzz.text(12)) + "ښ";
    a.push_back(sc(ref, testing::from_cps(fuzz.text(12))));
    b.push_back(sc(ref, testing::from_cps(fuzz.text(12))));
  }
  const auto ra = stratify(a, classes, score_corpus(a));
  const auto rb = stratify(b, classes, score_corpus(b));
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) CHECK(ra[i].n == rb[i].n);
}

TEST_CASE("a class covering every reference has zero delta", "[strata][property]") {
  testing::TextFuzzer fuzz(12);
  for (int t = 0; t < 50; ++t) {
    std::vector<UtteranceScore> s;
    const CodepointSet all{U'x'};
    for (std::size_t i = 0, n = 1 + fuzz.pick(20); i < n; ++i) {
      // The space keeps a fuzzed combining mark from composing with the marker.
      s.push_back(sc("x " + testing::from_cps(fuzz.text(8)), testing::from_cps(fuzz.text(8))));
    }
    const std::vector<CharClass> classes{{"all", all, false}};
    const auto r = stratify(s, classes, score_corpus(s));
    REQUIRE(r[0].n == s.size());
    REQUIRE(*r[0].delta == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("systematic substitution raises the class WER", "[strata]") {
  // Every ښ word is misrecognised; nothing else is.
  std::vector<UtteranceScore> s;
  for (int i = 0; i < 10; ++i) s.push_back(sc("ښار لوی دی", "خار لوی دی"));
  for (int i = 0; i < 30; ++i) s.push_back(sc("کور لوی دی", "کور لوی دی"));
  const auto overall = score_corpus(s);
  const auto r = stratify(s, default_strata_classes(), overall);
  const auto it = std::find_if(r.begin(), r.end(), [](const StratumResult& x) { return x.chars == "ښ"; });
  REQUIRE(it != r.end());
  CHECK(it->n == 10);
  CHECK(*it->wer == Approx(1.0 / 3.0));
  CHECK(*it->delta > 0.0);
}

TEST_CASE("stratum JSON round-trip", "[strata]") {
  const std::vector<UtteranceScore> s{sc("ښار", "خار")};
  for (const auto& r : stratify(s, default_strata_classes(), score_corpus(s)))
    CHECK(stratum_from_json(nlohmann::json::parse(to_json(r).dump())) == r);
}

TEST_CASE("published class deltas are consistent with one-decimal rounding", "[strata][fixture]") {
  // Each WER is rounded to 0.1, so the true difference lies within 0.1 of the
  // difference of the rounded values; that is the most the table supports.
  const auto j = read_json_file(testing::fixture("class_wer_table.json"), "test");
  const double overall = j.at("overall_wer_pct").get<double>();
  for (const auto& row : j.at("rows")) {
    const double diff = row.at("wer_pct").get<double>() - overall;
    INFO(row.at("class").get<std::string>());
    CHECK(std::fabs(diff - row.at("delta_pp").get<double>()) <= 0.1 + 1e-9);
  }
}
