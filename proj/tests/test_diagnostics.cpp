// tests/test_diagnostics.cpp

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

#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "pseval/report.hpp"
#include "test_util.hpp"

using namespace pseval;
using Catch::Approx;

namespace {

std::map<std::string, UtteranceRow> rows_of(const std::string& fixture) {
  const EvalConfig config;
  const auto inv = default_inventory();
  std::map<std::string, UtteranceRow> out;
  for (const auto& r : load_manifest_file(testing::fixture(fixture)).records) out.emplace(r.id, make_row(r, config, inv));
  return out;
}

std::vector<std::string> toks(const std::string& s) { return tokenize(normalize(s)); }

}  // namespace

TEST_CASE("printed looping patterns get their labels", "[diagnostics][fixture]") {
  const auto rows = rows_of("looping.jsonl");
  CHECK(rows.at("d1-repetition").failure == FailureLabel::RepetitionLoop);
  CHECK(rows.at("d2-language-switch").failure == FailureLabel::LanguageSwitchLoop);
  CHECK(rows.at("d3-near-empty").failure == FailureLabel::NearEmpty);
  CHECK(rows.at("d2-language-switch").script == ScriptLabel::ArDaUr);
  // 24 tokens against 9 reference words; 12 against 8 caps the second at 150%.
  CHECK(rows.at("d1-repetition").score.wer == Approx(24.0 / 9.0));
  CHECK(rows.at("d2-language-switch").score.wer == Approx(1.5));
  CHECK(rows.at("d3-near-empty").score.wer == Approx(1.0));
}

TEST_CASE("clean transcripts are not flagged", "[diagnostics][fixture]") {
  for (const auto& [id, row] : rows_of("clean.jsonl")) {
    INFO(id);
    CHECK(row.failure == FailureLabel::None);
  }
}

TEST_CASE("loop signals", "[diagnostics]") {
  auto s = loop_signals(toks("a b c d"), toks("a b a b a b a b"));
  CHECK(*s.length_ratio == 2.0);
  CHECK(*s.top_bigram_share == Approx(4.0 / 7.0));
  CHECK(*s.distinct_token_ratio == Approx(0.25));
  CHECK_FALSE(s.near_empty);

  s = loop_signals(toks("a b"), toks("x"));
  CHECK(s.near_empty);
  CHECK_FALSE(s.top_bigram_share);

  s = loop_signals(toks("a b"), toks(""));
  CHECK(s.near_empty);
  CHECK(*s.length_ratio == 0.0);

  s = loop_signals(toks("a"), toks("ab"));
  CHECK_FALSE(s.near_empty);
}

TEST_CASE("failure label precedence", "[diagnostics]") {
  LoopSignals s;
  s.length_ratio = 3.0;
  s.top_bigram_share = 0.9;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr) == FailureLabel::RepetitionLoop);
  CHECK(classify_failure(s, ScriptLabel::Pashto) == FailureLabel::RepetitionLoop);
  s.near_empty = true;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr) == FailureLabel::NearEmpty);
  s.near_empty = false;
  s.length_ratio = 1.7;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr) == FailureLabel::LanguageSwitchLoop);
  CHECK(classify_failure(s, ScriptLabel::Pashto) == FailureLabel::None);
  CHECK(classify_failure(s, ScriptLabel::Latin) == FailureLabel::None);
  s.top_bigram_share = 0.29;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr) == FailureLabel::None);
  s.top_bigram_share = 0.3;
  s.length_ratio = 1.5;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr) == FailureLabel::LanguageSwitchLoop);
  s.length_ratio = 1.49;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr) == FailureLabel::None);

  FailureThresholds strict;
  strict.top_bigram_share = 0.95;
  s.length_ratio = 3.0;
  s.top_bigram_share = 0.9;
  CHECK(classify_failure(s, ScriptLabel::ArDaUr, strict) == FailureLabel::None);
}

TEST_CASE("real-time factor", "[diagnostics]") {
  CHECK(rtf(7.07, 10.0) == Approx(0.707));
  CHECK(rtf(1.0, 10.0) == Approx(0.1));
  CHECK_THROWS_AS(rtf(1.0, 0.0), InputError);

  std::vector<UtteranceRecord> recs{
      {"a", "x", "x", "", "", 10.0, 7.07},
      {"b", "x", "x", "", "", 20.0, 14.14},
      {"c", "x", "x", "", "", std::nullopt, 3.0},
  };
  auto summary = corpus_rtf(recs);
  REQUIRE(summary.rtf);
  CHECK(*summary.rtf == Approx(0.707));
  CHECK(summary.included == 2);
  CHECK(summary.coverage_note() == "1 of 3 excluded");

  recs = {{"a", "x", "x", "", "", 0.0, 1.0}};
  CHECK_THROWS_AS(corpus_rtf(recs), InputError);
  recs = {{"a", "x", "x", "", "", std::nullopt, std::nullopt}};
  CHECK_FALSE(corpus_rtf(recs).rtf);
}

TEST_CASE("failure labels round-trip through strings", "[diagnostics]") {
  for (FailureLabel l : kAllFailureLabels) CHECK(failure_label_from_string(to_string(l)) == l);
  CHECK_THROWS_AS(failure_label_from_string("Loop"), InputError);
}
