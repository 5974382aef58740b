// include/pseval/report.hpp

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

// End-to-end evaluation and report rendering. Rendering is a pure function of
// the report, so identical inputs give byte-identical files.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/classcatalog.hpp"
#include "pseval/config.hpp"
#include "pseval/corpus.hpp"
#include "pseval/diagnostics.hpp"
#include "pseval/error.hpp"
#include "pseval/metrics.hpp"
#include "pseval/scriptid.hpp"
#include "pseval/stats.hpp"
#include "pseval/strata.hpp"
#include "pseval/textnorm.hpp"

namespace pseval {

inline constexpr const char* kUnlabelledModel = "(unlabelled)";

struct UtteranceRow {
  UtteranceScore score;
  ScriptLabel script = ScriptLabel::Empty;
  LoopSignals signals;
  FailureLabel failure = FailureLabel::None;
  std::optional<double> rtf;

  bool operator==(const UtteranceRow&) const = default;
};

struct ModelSummary {
  std::string model;
  CorpusScore corpus;
  ScriptDistribution script;
  std::array<std::size_t, 4> failure_counts{};  // indexed by FailureLabel
  double flag_rate = 0.0;                       // fraction labelled other than None
  RtfSummary rtf;

  std::size_t failures(FailureLabel l) const { return failure_counts[static_cast<std::size_t>(l)]; }
  bool operator==(const ModelSummary&) const = default;
};

struct EvalReport {
  std::string source;
  std::size_t n_input = 0;
  std::size_t n_dropped = 0;
  CorpusScore corpus;
  std::vector<UtteranceRow> per_utterance;
  ScriptDistribution script_distribution;
  std::vector<ModelSummary> models;
  std::vector<StratumResult> strata;
  std::optional<BootstrapResult> bootstrap;
  std::string inventory_checksum;
  nlohmann::ordered_json config_echo;

  bool operator==(const EvalReport&) const = default;
};

inline std::string model_key(const std::string& model) { return model.empty() ? kUnlabelledModel : model; }

inline UtteranceRow make_row(const UtteranceRecord& record, const EvalConfig& config,
                             const CharacterInventory& inventory) {
  UtteranceRow row;
  row.score = score_utterance(record, config.scoring, inventory);
  const NormalizedText ref = normalize(row.score.reference, config.scoring.normalization, inventory);
  const NormalizedText hyp = normalize(row.score.hypothesis, config.scoring.normalization, inventory);
  row.script = classify(hyp, inventory);
  row.signals = loop_signals(tokenize(ref), tokenize(hyp));
  row.failure = classify_failure(row.signals, row.script, config.thresholds);
  if (record.decode_time_s && record.audio_duration_s && *record.audio_duration_s > 0.0) {
    row.rtf = rtf(*record.decode_time_s, *record.audio_duration_s);
  }
  return row;
}

inline std::vector<UtteranceScore> scores_of(const std::vector<UtteranceRow>& rows) {
  std::vector<UtteranceScore> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.score);
  return out;
}

inline ModelSummary summarize_model(const std::string& model, const std::vector<const UtteranceRow*>& rows) {
  ModelSummary m;
  m.model = model;
  std::vector<UtteranceScore> scores;
  std::vector<ScriptLabel> labels;
  std::size_t flagged = 0;
  for (const auto* r : rows) {
    scores.push_back(r->score);
    labels.push_back(r->script);
    ++m.failure_counts[static_cast<std::size_t>(r->failure)];
    if (r->failure != FailureLabel::None) ++flagged;
  }
  m.corpus = score_corpus(scores);
  m.script = audit(labels);
  m.flag_rate = static_cast<double>(flagged) / static_cast<double>(rows.size());
  m.rtf = corpus_rtf(scores);
  return m;
}

// Builds every aggregate from the per-utterance rows alone.
inline EvalReport aggregate(std::vector<UtteranceRow> rows, const EvalConfig& config,
                            const CharacterInventory& inventory) {
  if (rows.empty()) throw InputError("report", "no scorable utterances");
  EvalReport rep;
  rep.per_utterance = std::move(rows);
  const auto scores = scores_of(rep.per_utterance);
  rep.corpus = score_corpus(scores);

  std::vector<ScriptLabel> labels;
  std::vector<std::string> order;
  std::map<std::string, std::vector<const UtteranceRow*>> by_model;
  for (const auto& r : rep.per_utterance) {
    labels.push_back(r.script);
    const std::string key = model_key(r.score.model);
    auto [it, inserted] = by_model.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back(&r);
  }
  rep.script_distribution = audit(labels);
  for (const auto& key : order) rep.models.push_back(summarize_model(key, by_model[key]));
  rep.strata = stratify(scores, inventory.strata_classes, rep.corpus);
  if (auto b = config.bootstrap()) rep.bootstrap = bootstrap_ci(scores, *b);
  rep.inventory_checksum = checksum(inventory);
  rep.config_echo = config_echo(config, inventory);
  return rep;
}

// normalize -> filter -> score -> classify -> diagnose -> aggregate (strata, bootstrap).
inline EvalReport run_evaluate(const Manifest& manifest, const EvalConfig& config,
                               const CharacterInventory& inventory) {
  const FilterResult filtered = filter_empty_references(manifest, [&](const std::string& s) {
    return normalize(s, config.scoring.normalization, inventory);
  });
  if (filtered.kept.records.empty()) throw InputError("report", "no scorable utterances");
  std::vector<UtteranceRow> rows;
  rows.reserve(filtered.kept.size());
  for (const auto& r : filtered.kept.records) rows.push_back(make_row(r, config, inventory));
  EvalReport rep = aggregate(std::move(rows), config, inventory);
  rep.source = manifest.source_note;
  rep.n_input = manifest.size();
  rep.n_dropped = filtered.dropped.size();
  return rep;
}

inline EvalReport run_evaluate(const std::string& manifest_path, const EvalConfig& config) {
  const CharacterInventory inventory = load_inventory(config);
  return run_evaluate(load_manifest_file(manifest_path), config, inventory);
}

// ---------------------------------------------------------------------------
// Per-utterance score records (scores.jsonl)

namespace report_detail {
inline nlohmann::ordered_json opt(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
}
inline std::optional<double> opt_from(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<double>();
}
}  // namespace report_detail

inline nlohmann::ordered_json to_json(const UtteranceRow& row) {
  using report_detail::opt;
  const auto& s = row.score;
  nlohmann::ordered_json j;
  j["id"] = s.id;
  j["model"] = s.model;
  j["dataset"] = s.dataset;
  j["reference"] = s.reference;
  j["hypothesis"] = s.hypothesis;
  j["ref_tokens"] = s.ref_tokens;
  j["hyp_tokens"] = s.hyp_tokens;
  j["word_edits"] = s.word_edits;
  j["hits"] = s.hits;
  j["substitutions"] = s.substitutions;
  j["insertions"] = s.insertions;
  j["deletions"] = s.deletions;
  j["wer"] = s.wer;
  j["ref_chars"] = s.ref_chars;
  j["hyp_chars"] = s.hyp_chars;
  j["char_edits"] = s.char_edits;
  j["cer"] = s.cer;
  j["audio_duration_s"] = opt(s.audio_duration_s);
  j["decode_time_s"] = opt(s.decode_time_s);
  j["rtf"] = opt(row.rtf);
  j["script"] = std::string(to_string(row.script));
  j["failure"] = std::string(to_string(row.failure));
  j["signals"] = to_json(row.signals);
  return j;
}

inline UtteranceRow utterance_row_from_json(const nlohmann::json& j) {
  using report_detail::opt_from;
  UtteranceRow row;
  auto& s = row.score;
  s.id = j.at("id").get<std::string>();
  s.model = j.at("model").get<std::string>();
  s.dataset = j.at("dataset").get<std::string>();
  s.reference = j.at("reference").get<std::string>();
  s.hypothesis = j.at("hypothesis").get<std::string>();
  s.ref_tokens = j.at("ref_tokens").get<std::size_t>();
  s.hyp_tokens = j.at("hyp_tokens").get<std::size_t>();
  s.word_edits = j.at("word_edits").get<std::size_t>();
  s.hits = j.at("hits").get<std::size_t>();
  s.substitutions = j.at("substitutions").get<std::size_t>();
  s.insertions = j.at("insertions").get<std::size_t>();
  s.deletions = j.at("deletions").get<std::size_t>();
  s.wer = j.at("wer").get<double>();
  s.ref_chars = j.at("ref_chars").get<std::size_t>();
  s.hyp_chars = j.at("hyp_chars").get<std::size_t>();
  s.char_edits = j.at("char_edits").get<std::size_t>();
  s.cer = j.at("cer").get<double>();
  s.audio_duration_s = opt_from(j, "audio_duration_s");
  s.decode_time_s = opt_from(j, "decode_time_s");
  row.rtf = opt_from(j, "rtf");
  row.script = script_label_from_string(j.at("script").get<std::string>());
  row.failure = failure_label_from_string(j.at("failure").get<std::string>());
  row.signals = loop_signals_from_json(j.at("signals"));
  return row;
}

inline void write_scores(std::ostream& out, const std::vector<UtteranceRow>& rows) {
  for (const auto& r : rows) out << to_json(r).dump() << '\n';
}

inline std::vector<UtteranceRow> read_scores(std::istream& in, const std::string& source = "scores") {
  std::vector<UtteranceRow> rows;
  std::set<std::string> ids;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      rows.push_back(utterance_row_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw InputError("report", source + ": line " + std::to_string(n) + ": bad score record (" + e.what() + ")");
    }
    if (!ids.insert(rows.back().score.id).second) {
      throw InputError("report", source + ": line " + std::to_string(n) + ": duplicate id '" +
                                     rows.back().score.id + "'");
    }
  }
  return rows;
}

inline std::vector<UtteranceRow> read_scores_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("report", "cannot open score file '" + path + "'");
  return read_scores(in, path);
}

// ---------------------------------------------------------------------------
// Structured summary (summary.json); per-utterance rows live in scores.jsonl.

inline nlohmann::ordered_json to_json(const RtfSummary& r) {
  return {{"rtf", report_detail::opt(r.rtf)}, {"included", r.included}, {"excluded", r.excluded}};
}

inline nlohmann::ordered_json to_json(const ModelSummary& m) {
  nlohmann::ordered_json failures;
  for (FailureLabel l : kAllFailureLabels) failures[std::string(to_string(l))] = m.failures(l);
  return {{"model", m.model},       {"corpus", to_json(m.corpus)},  {"script", to_json(m.script)},
          {"failures", failures},   {"flag_rate", m.flag_rate},     {"rtf", to_json(m.rtf)}};
}

inline ModelSummary model_summary_from_json(const nlohmann::json& j) {
  ModelSummary m;
  m.model = j.at("model").get<std::string>();
  m.corpus = corpus_score_from_json(j.at("corpus"));
  m.script = script_distribution_from_json(j.at("script"));
  for (FailureLabel l : kAllFailureLabels) {
    m.failure_counts[static_cast<std::size_t>(l)] = j.at("failures").at(std::string(to_string(l))).get<std::size_t>();
  }
  m.flag_rate = j.at("flag_rate").get<double>();
  m.rtf.rtf = report_detail::opt_from(j.at("rtf"), "rtf");
  m.rtf.included = j.at("rtf").at("included").get<std::size_t>();
  m.rtf.excluded = j.at("rtf").at("excluded").get<std::size_t>();
  return m;
}

inline nlohmann::ordered_json summary_json(const EvalReport& r) {
  nlohmann::ordered_json j;
  j["source"] = r.source;
  j["n_input"] = r.n_input;
  j["n_dropped"] = r.n_dropped;
  j["corpus"] = to_json(r.corpus);
  j["script_distribution"] = to_json(r.script_distribution);
  auto models = nlohmann::ordered_json::array();
  for (const auto& m : r.models) models.push_back(to_json(m));
  j["models"] = std::move(models);
  auto strata = nlohmann::ordered_json::array();
  for (const auto& s : r.strata) strata.push_back(to_json(s));
  j["strata"] = std::move(strata);
  j["bootstrap"] = r.bootstrap ? to_json(*r.bootstrap) : nlohmann::ordered_json();
  j["inventory_checksum"] = r.inventory_checksum;
  j["config"] = r.config_echo;
  return j;
}

inline EvalReport report_from_json(const nlohmann::ordered_json& summary, std::vector<UtteranceRow> rows) {
  EvalReport r;
  r.source = summary.at("source").get<std::string>();
  r.n_input = summary.at("n_input").get<std::size_t>();
  r.n_dropped = summary.at("n_dropped").get<std::size_t>();
  r.corpus = corpus_score_from_json(summary.at("corpus"));
  r.script_distribution = script_distribution_from_json(summary.at("script_distribution"));
  for (const auto& m : summary.at("models")) r.models.push_back(model_summary_from_json(m));
  for (const auto& s : summary.at("strata")) r.strata.push_back(stratum_from_json(s));
  if (!summary.at("bootstrap").is_null()) r.bootstrap = bootstrap_result_from_json(summary.at("bootstrap"));
  r.inventory_checksum = summary.at("inventory_checksum").get<std::string>();
  r.config_echo = summary.at("config");
  r.per_utterance = std::move(rows);
  return r;
}

// ---------------------------------------------------------------------------
// Tables

// One decimal place, round half to even. Values within 1e-9 of a tie are ties,
// so 0.3545 (stored as 0.35449999...) still rounds as the exact decimal would.
inline std::string format_fixed1(double value) {
  const double scaled = value * 10.0;
  const double fl = std::floor(scaled);
  double rounded;
  if (std::fabs(scaled - fl - 0.5) < 1e-9) {
    rounded = std::fmod(fl, 2.0) == 0.0 ? fl : fl + 1.0;
  } else {
    rounded = std::round(scaled);
  }
  if (rounded == 0.0) rounded = 0.0;  // no "-0.0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", rounded / 10.0);
  return buf;
}

inline std::string format_pct(double ratio) { return format_fixed1(ratio * 100.0); }

// Signed percentage points, as in "+1.6", "-0.1", "±0.0".
inline std::string format_delta_pp(double ratio) {
  std::string s = format_fixed1(ratio * 100.0);
  if (s == "0.0") return "±0.0";
  return s[0] == '-' ? s : "+" + s;
}

struct Table {
  std::string name;  // file stem, e.g. "table_corpus"
  std::vector<std::string> header;
  std::vector<bool> right_align;
  std::vector<std::vector<std::string>> rows;
  std::string footer;  // markdown only
};

inline std::string render_markdown(const Table& t) {
  std::ostringstream os;
  os << '|';
  for (const auto& h : t.header) os << ' ' << h << " |";
  os << "\n|";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (t.right_align[i] ? "---:|" : "---|");
  os << '\n';
  for (const auto& row : t.rows) {
    os << '|';
    for (const auto& c : row) os << ' ' << (c.empty() ? "-" : c) << " |";
    os << '\n';
  }
  if (!t.footer.empty()) os << '\n' << t.footer << '\n';
  return os.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out.push_back(c);
  }
  return out + "\"";
}

inline std::string render_csv(const Table& t) {
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
    os << '\n';
  };
  line(t.header);
  for (const auto& row : t.rows) line(row);
  return os.str();
}

inline std::string checksum_footer(const std::string& checksum) { return "Inventory checksum: " + checksum; }

inline Table corpus_table(const EvalReport& r) {
  Table t{"table_corpus", {"Model", "N", "WER", "CER", "Ps%"}, {false, true, true, true, true}, {}, {}};
  for (const auto& m : r.models) {
    t.rows.push_back({m.model, std::to_string(m.corpus.n_utterances), format_pct(m.corpus.wer),
                      format_pct(m.corpus.cer), format_fixed1(m.script.pashto_pct)});
  }
  t.footer = checksum_footer(r.inventory_checksum);
  return t;
}

inline Table script_table(const std::vector<ModelSummary>& models, const std::string& checksum) {
  Table t{"table_script",
          {"Model", "N", "Ps%", "Ar/Da/Ur%", "La%", "Em%", "In%"},
          {false, true, true, true, true, true, true},
          {},
          checksum_footer(checksum)};
  for (const auto& m : models) {
    const auto& d = m.script;
    t.rows.push_back({m.model, std::to_string(d.n), format_fixed1(d.pashto_pct), format_fixed1(d.ardaur_pct),
                      format_fixed1(d.latin_pct), format_fixed1(d.empty_pct), format_fixed1(d.indeterminate_pct)});
  }
  return t;
}

inline Table strata_table(const std::vector<StratumResult>& strata, const CorpusScore& overall,
                          const std::string& checksum) {
  Table t{"table_strata",
          {"Class", "Chars", "WER%", "CER%", "Δ", "N"},
          {false, false, true, true, true, true},
          {},
          "Overall WER " + format_pct(overall.wer) + "%, CER " + format_pct(overall.cer) + "%. " +
              checksum_footer(checksum)};
  for (const auto& s : strata) {
    const std::string name = s.pashto_unique ? s.class_name + " [Pashto-unique]" : s.class_name;
    t.rows.push_back({name, s.chars, s.wer ? format_pct(*s.wer) : "", s.cer ? format_pct(*s.cer) : "",
                      s.delta ? format_delta_pp(*s.delta) : "", std::to_string(s.n)});
  }
  return t;
}

inline Table diagnostics_table(const std::vector<ModelSummary>& models, const std::string& checksum) {
  Table t{"table_diagnostics",
          {"Model", "N", "RepetitionLoop", "LanguageSwitchLoop", "NearEmpty", "Flag%", "RTF", "RTF coverage"},
          {false, true, true, true, true, true, true, false},
          {},
          checksum_footer(checksum)};
  for (const auto& m : models) {
    char rtf_buf[32] = "";
    if (m.rtf.rtf) std::snprintf(rtf_buf, sizeof rtf_buf, "%.3f", *m.rtf.rtf);
    t.rows.push_back({m.model, std::to_string(m.corpus.n_utterances),
                      std::to_string(m.failures(FailureLabel::RepetitionLoop)),
                      std::to_string(m.failures(FailureLabel::LanguageSwitchLoop)),
                      std::to_string(m.failures(FailureLabel::NearEmpty)), format_pct(m.flag_rate), rtf_buf,
                      m.rtf.coverage_note()});
  }
  return t;
}

inline Table bootstrap_table(const EvalReport& r) {
  Table t{"table_bootstrap",
          {"WER", "CI low", "CI high", "Confidence", "Resamples", "Seed"},
          {true, true, true, true, true, true},
          {},
          checksum_footer(r.inventory_checksum)};
  const auto& b = *r.bootstrap;
  t.rows.push_back({format_pct(b.point), format_pct(b.ci_low), format_pct(b.ci_high), format_pct(b.confidence),
                    std::to_string(b.n_resamples), std::to_string(b.seed)});
  return t;
}

enum class Format { Markdown, Csv, Structured };

inline std::set<Format> parse_formats(const std::string& spec) {
  std::set<Format> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "markdown") out.insert(Format::Markdown);
    else if (item == "csv") out.insert(Format::Csv);
    else if (item == "structured") out.insert(Format::Structured);
    else throw InputError("report", "unknown format '" + item + "' (expected markdown, csv, structured)");
  }
  if (out.empty()) throw InputError("report", "no output format requested");
  return out;
}

using RenderedFiles = std::map<std::string, std::string>;  // file name -> contents

inline void add_table(RenderedFiles& files, const Table& t, const std::set<Format>& formats) {
  if (formats.count(Format::Markdown)) files[t.name + ".md"] = render_markdown(t);
  if (formats.count(Format::Csv)) files[t.name + ".csv"] = render_csv(t);
}

inline RenderedFiles render_tables(const EvalReport& r, const std::set<Format>& formats) {
  RenderedFiles files;
  add_table(files, corpus_table(r), formats);
  add_table(files, script_table(r.models, r.inventory_checksum), formats);
  add_table(files, strata_table(r.strata, r.corpus, r.inventory_checksum), formats);
  add_table(files, diagnostics_table(r.models, r.inventory_checksum), formats);
  if (r.bootstrap) add_table(files, bootstrap_table(r), formats);
  std::ostringstream scores;
  write_scores(scores, r.per_utterance);
  files["scores.jsonl"] = scores.str();
  if (formats.count(Format::Structured)) files["summary.json"] = summary_json(r).dump(2) + "\n";
  return files;
}

inline void write_files(const std::filesystem::path& dir, const RenderedFiles& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("report", "cannot create output directory '" + dir.string() + "'");
  for (const auto& [name, content] : files) {
    std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("report", "cannot write '" + (dir / name).string() + "'");
    out << content;
  }
}

}  // namespace pseval
