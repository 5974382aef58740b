// tests/acceptance.cpp

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

// Acceptance suite. Prints one "[PASS]" or "[FAIL]" line per criterion.
//
//   acceptance          run every criterion
//   acceptance N ...    run only the listed criteria
//
// Exit status is 0 only if every selected criterion passes.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bootstrap_reference.hpp"
#include "edit_oracle.hpp"
#include "pseval/pseval.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace pseval;

namespace {

// Collects failure details; a criterion passes when none were recorded.
class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

std::string fmt(double v, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

const CharacterInventory& inv() {
  static const CharacterInventory i = default_inventory();
  return i;
}

// 1. Utterance-level WERs of the printed transcripts.
void fixture_exactness(Checker& c) {
  const EvalReport r = run_evaluate(testing::fixture("combined.jsonl"), EvalConfig{});
  std::map<std::string, double> wer;
  for (const auto& row : r.per_utterance) wer[row.score.id] = row.score.wer;
  const std::vector<std::tuple<std::string, double, double>> expected{
      {"a8-whisper-large-v3", 1.00, 0.005}, {"a8-pashto-asr-v3", 0.60, 0.005}, {"a8-ps-base-l1", 0.70, 0.005},
      {"b-pashto-asr-v3", 0.20, 0.005},     {"c-pashto-asr-v3", 0.25, 0.005},  {"c-ps-base-l1", 1.00, 0.15}};
  for (const auto& [id, want, tol] : expected) {
    const bool present = wer.count(id) > 0;
    c.expect(present, id + " missing");
    if (present) c.expect(std::fabs(wer[id] - want) <= tol, id + ": WER " + fmt(wer[id]) + ", expected " + fmt(want));
  }
}

// 2. Each printed class delta equals its WER minus the overall WER.
void class_delta_arithmetic(Checker& c) {
  const auto j = read_json_file(testing::fixture("class_wer_table.json"), "acceptance");
  const double overall = j.at("overall_wer_pct").get<double>();
  const auto classes = default_strata_classes();
  c.expect(j.at("rows").size() == classes.size(), "row count differs from the default catalogue");
  std::size_t i = 0;
  for (const auto& row : j.at("rows")) {
    const std::string name = row.at("class");
    if (i < classes.size()) c.expect(classes[i].name == name, "row " + std::to_string(i) + " is not '" + name + "'");
    ++i;
    const double computed = 100.0 * delta_from_overall(row.at("wer_pct").get<double>() / 100.0, overall / 100.0);
    const double printed = row.at("delta_pp").get<double>();
    c.expect(std::fabs(computed - printed) <= 0.05 + 1e-9,
             name + ": " + fmt(row.at("wer_pct").get<double>(), 1) + " - " + fmt(overall, 1) + " = " +
                 format_delta_pp(computed / 100.0) + ", printed " + format_delta_pp(printed / 100.0));
  }
}

// 3. Dynamic-programming distance against breadth-first search.
void edit_distance_oracle(Checker& c) {
  const auto report = testing::check_align_exhaustive(3, 6);
  c.expect(report.pairs >= 4096, "only " + std::to_string(report.pairs) + " pairs checked");
  c.expect(report.mismatches == 0, std::to_string(report.mismatches) + " mismatches, first " + report.first_failure);
}

// 4. normalize(normalize(x)) == normalize(x).
void normalization_idempotence(Checker& c) {
  testing::TextFuzzer fuzz(20261015);
  std::size_t failures = 0;
  std::string first;
  for (int i = 0; i < 12000; ++i) {
    const std::string raw = testing::from_cps(fuzz.text(32));
    const auto once = normalize(raw, {}, inv());
    if (!(normalize(once.str(), {}, inv()) == once) && failures++ == 0) first = utf8::codepoint_list(utf8::decode(raw));
  }
  c.expect(failures == 0, std::to_string(failures) + " failures, first input " + first);
}

// 5. Hand-labelled script fixtures and tier dominance.
void script_audit_fixtures(Checker& c) {
  const auto items = testing::script_labels();
  c.expect(items.size() == 30, "expected 30 fixtures");
  std::set<std::string> labels_seen;
  for (const auto& it : items) {
    const ScriptLabel got = classify(normalize(it.text, {}, inv()), inv());
    labels_seen.insert(it.label);
    c.expect(to_string(got) == it.label, it.id + ": got " + std::string(to_string(got)) + ", expected " + it.label);
    if (it.label == "ArDaUr") {
      const ScriptLabel flipped = classify(normalize(it.text + "ټ", {}, inv()), inv());
      c.expect(flipped == ScriptLabel::Pashto, it.id + ": adding a Pashto-unique letter did not flip it");
    }
  }
  c.expect(labels_seen.size() == 5, "not every category is covered");
}

// 6. kept + dropped == total; punctuation-only references are dropped.
void filtering_conservation(Checker& c) {
  testing::TextFuzzer fuzz(606);
  const std::u32string punct = U"،؟۔ـ.,?!;:\"'() ‌‏﻿";
  auto normalizer = [](const std::string& s) { return normalize(s, {}, inv()); };
  for (int trial = 0; trial < 500; ++trial) {
    Manifest m;
    std::set<std::string> punct_ids;
    for (std::size_t i = 0, n = fuzz.pick(40); i < n; ++i) {
      std::u32string ref;
      const std::string id = "u" + std::to_string(i);
      if (fuzz.pick(3) == 0) {
        for (std::size_t k = 0, len = fuzz.pick(8); k < len; ++k) ref.push_back(punct[fuzz.pick(punct.size())]);
        punct_ids.insert(id);
      } else {
        ref = fuzz.text(12);
      }
      m.records.push_back({id, testing::from_cps(ref), testing::from_cps(fuzz.text(6)), "", "", {}, {}});
    }
    const FilterResult r = filter_empty_references(m, normalizer);
    c.expect(r.kept.size() + r.dropped.size() == m.size(), "trial " + std::to_string(trial) + ": counts differ");
    std::set<std::string> dropped;
    for (const auto& d : r.dropped.records) dropped.insert(d.id);
    for (const auto& id : punct_ids)
      c.expect(dropped.count(id) > 0, "trial " + std::to_string(trial) + ": " + id + " was kept");
  }
}

// 7. Seeded bootstrap: determinism, independent agreement, degenerate cases.
void bootstrap_determinism(Checker& c) {
  std::vector<std::size_t> a, b, r;
  testing::pairs200(a, b, r);
  const auto sa = testing::synthetic_scores(a, r), sb = testing::synthetic_scores(b, r);
  const auto pairs = testing::make_pairs(sa, sb);
  const BootstrapConfig cfg(7, 1000, 0.95);

  const auto p1 = paired_bootstrap(pairs, cfg), p2 = paired_bootstrap(pairs, cfg);
  c.expect(p1 == p2, "paired test differs between runs");
  const auto ci1 = bootstrap_ci(sa, cfg), ci2 = bootstrap_ci(sa, cfg);
  c.expect(ci1 == ci2, "CI differs between runs");

  const auto ref_p = testing::ref_paired(a, b, r, 7, 1000);
  c.expect(p1.p_value == ref_p.p, "p " + fmt(p1.p_value) + " vs reference " + fmt(ref_p.p));
  c.expect(p1.delta_point == ref_p.delta, "delta differs from reference");
  const auto ref_ci = testing::ref_ci(a, r, 7, 1000, 0.95);
  c.expect(ci1.ci_low == ref_ci.low && ci1.ci_high == ref_ci.high, "CI differs from reference");

  const auto flat = testing::synthetic_scores(std::vector<std::size_t>(200, 3), std::vector<std::size_t>(200, 10));
  const auto flat_ci = bootstrap_ci(flat, cfg);
  c.expect(flat_ci.ci_low == flat_ci.ci_high, "all-equal corpus has a non-zero-width CI");
  const auto same = paired_bootstrap(testing::make_pairs(flat, flat), cfg);
  c.expect(same.p_value == 1.0, "all-equal corpus p = " + fmt(same.p_value));
  const auto ident = paired_bootstrap(testing::make_pairs(sa, sa), cfg);
  c.expect(!ident.significant, "identical systems reported significant");
}

// 8. Decoder-failure labels.
void failure_labels(Checker& c) {
  const EvalConfig config;
  auto label_of = [&](const std::string& fixture) {
    std::map<std::string, FailureLabel> out;
    for (const auto& r : load_manifest_file(testing::fixture(fixture)).records)
      out[r.id] = make_row(r, config, inv()).failure;
    return out;
  };
  const auto d = label_of("looping.jsonl");
  c.expect(d.at("d1-repetition") == FailureLabel::RepetitionLoop, "repetition pattern mislabelled");
  c.expect(d.at("d2-language-switch") == FailureLabel::LanguageSwitchLoop, "language-switch pattern mislabelled");
  c.expect(d.at("d3-near-empty") == FailureLabel::NearEmpty, "near-empty pattern mislabelled");
  const auto clean = label_of("clean.jsonl");
  c.expect(clean.size() == 5, "expected five clean fixtures");
  for (const auto& [id, l] : clean) c.expect(l == FailureLabel::None, id + " labelled " + std::string(to_string(l)));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 9. Two CLI runs produce byte-identical outputs.
void end_to_end_determinism(Checker& c) {
  const fs::path dir = fs::temp_directory_path() / ("pseval-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  for (const char* run : {"one", "two"}) {
    const std::string cmd = std::string(PSEVAL_CLI_PATH) + " evaluate --manifest " + testing::fixture("combined.jsonl") +
                            " --seed 20261015 --out " + (dir / run).string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, std::string("evaluate run '") + run + "' failed");
  }
  std::size_t files = 0;
  if (fs::exists(dir / "one")) {
    for (const auto& e : fs::directory_iterator(dir / "one")) {
      ++files;
      const fs::path other = dir / "two" / e.path().filename();
      c.expect(fs::exists(other) && slurp(e.path()) == slurp(other), e.path().filename().string() + " differs");
    }
  }
  c.expect(files >= 12, "only " + std::to_string(files) + " output files");
  c.expect(fs::exists(dir / "one" / "scores.jsonl"), "no score file written");
  fs::remove_all(dir);
}

struct Criterion {
  int number;
  const char* name;
  std::function<void(Checker&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "utterance-level fixture WERs", fixture_exactness},
      {2, "class delta arithmetic", class_delta_arithmetic},
      {3, "edit distance equals exhaustive search", edit_distance_oracle},
      {4, "normalization idempotence", normalization_idempotence},
      {5, "script audit fixtures", script_audit_fixtures},
      {6, "filtering conservation", filtering_conservation},
      {7, "bootstrap determinism and degeneracy", bootstrap_determinism},
      {8, "decoder failure labels", failure_labels},
      {9, "end-to-end determinism", end_to_end_determinism},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) {
    try {
      selected.insert(std::stoi(argv[i]));
    } catch (const std::exception&) {
      std::cerr << "usage: acceptance [criterion-number ...]\n";
      return 2;
    }
  }
  bool all_ok = true;
  for (const auto& cr : all) {
    if (!selected.empty() && !selected.count(cr.number)) continue;
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.ok() ? "[PASS] " : "[FAIL] ") << cr.number << " " << cr.name << " (" << c.checks() << " checks, "
              << fmt(secs, 2) << " s)\n";
    for (const auto& f : c.failures()) std::cout << "       " << f << '\n';
    all_ok = all_ok && c.ok();
  }
  return all_ok ? 0 : 1;
}
