// tools/pseval.cpp

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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pseval/pseval.hpp"

namespace {

using namespace pseval;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

constexpr const char* kDifferentTestSets =
    "a direct significance test is not applicable: the two systems were evaluated on different test "
    "sets, so utterance-level differences are confounded with test-set differences";

struct CommonOptions {
  std::string config_path;
  std::string inventory_path;
  std::optional<std::uint64_t> seed;
  std::string formats = "markdown,csv,structured";
  std::string out_dir;
};

EvalConfig resolve_config(const CommonOptions& o) {
  EvalConfig c = o.config_path.empty() ? EvalConfig{} : load_eval_config(o.config_path);
  if (!o.inventory_path.empty()) c.inventory_override = read_json_file(o.inventory_path, "classcatalog");
  c.seed = o.seed;
  return c;
}

void add_config_options(CLI::App* app, CommonOptions& o) {
  app->add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app->add_option("--inventory", o.inventory_path, "JSON inventory override file")->check(CLI::ExistingFile);
}

void add_output_options(CLI::App* app, CommonOptions& o) {
  app->add_option("--formats", o.formats, "Comma-separated: markdown,csv,structured");
  app->add_option("--out", o.out_dir, "Output directory (tables go to stdout when omitted)");
}

// Writes files to --out, or prints the markdown tables to stdout.
void emit(const CommonOptions& o, const RenderedFiles& files) {
  if (!o.out_dir.empty()) {
    write_files(o.out_dir, files);
    return;
  }
  for (const auto& [name, content] : files) {
    if (name.size() > 3 && name.compare(name.size() - 3, 3, ".md") == 0) std::cout << content << '\n';
  }
}

std::vector<UtteranceRow> evaluate_rows(const std::vector<std::string>& manifests, const EvalConfig& config,
                                        const CharacterInventory& inventory) {
  std::vector<UtteranceRow> rows;
  for (const auto& path : manifests) {
    EvalReport r = run_evaluate(load_manifest_file(path), config, inventory);
    for (auto& row : r.per_utterance) rows.push_back(std::move(row));
  }
  return rows;
}

int cmd_normalize(const CommonOptions& o, const std::string& input) {
  const EvalConfig config = resolve_config(o);
  const CharacterInventory inventory = load_inventory(config);
  std::ifstream file;
  if (!input.empty() && input != "-") {
    file.open(input, std::ios::binary);
    if (!file) throw InputError("textnorm", "cannot open '" + input + "'");
  }
  std::istream& in = file.is_open() ? static_cast<std::istream&>(file) : std::cin;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!utf8::is_valid(line)) throw InputError("textnorm", "line " + std::to_string(n) + ": ill-formed UTF-8");
    std::cout << normalize(line, config.scoring.normalization, inventory).str() << '\n';
  }
  return kExitOk;
}

int cmd_filter(const CommonOptions& o, const std::string& manifest_path) {
  const EvalConfig config = resolve_config(o);
  const CharacterInventory inventory = load_inventory(config);
  const Manifest m = load_manifest_file(manifest_path);
  const FilterResult r = filter_empty_references(
      m, [&](const std::string& s) { return normalize(s, config.scoring.normalization, inventory); });
  const std::string summary = "kept " + std::to_string(r.kept.size()) + " dropped " +
                              std::to_string(r.dropped.size()) + " total " + std::to_string(m.size());
  if (!o.out_dir.empty()) {
    std::ostringstream kept, dropped;
    write_manifest(kept, r.kept);
    write_manifest(dropped, r.dropped);
    write_files(o.out_dir, {{"kept.jsonl", kept.str()}, {"dropped.jsonl", dropped.str()}, {"filter_summary.txt", summary + "\n"}});
  }
  std::cout << summary << '\n';
  return kExitOk;
}

int cmd_evaluate(const CommonOptions& o, const std::string& manifest_path) {
  const EvalConfig config = resolve_config(o);
  const CharacterInventory inventory = load_inventory(config);
  const EvalReport report = run_evaluate(load_manifest_file(manifest_path), config, inventory);
  emit(o, render_tables(report, parse_formats(o.formats)));
  std::cerr << "scored " << report.corpus.n_utterances << " of " << report.n_input << " utterances ("
            << report.n_dropped << " dropped with empty references); WER " << format_pct(report.corpus.wer)
            << "% CER " << format_pct(report.corpus.cer) << "%\n";
  return kExitOk;
}

int cmd_audit(const CommonOptions& o, const std::vector<std::string>& manifests) {
  const EvalConfig config = resolve_config(o);
  const CharacterInventory inventory = load_inventory(config);
  const EvalReport report = aggregate(evaluate_rows(manifests, config, inventory), config, inventory);
  const auto formats = parse_formats(o.formats);
  RenderedFiles files;
  add_table(files, script_table(report.models, report.inventory_checksum), formats);
  std::ostringstream scores;
  write_scores(scores, report.per_utterance);
  files["scores.jsonl"] = scores.str();
  if (formats.count(Format::Structured)) {
    nlohmann::ordered_json j;
    for (const auto& m : report.models) j[m.model] = to_json(m.script);
    files["audit.json"] = j.dump(2) + "\n";
  }
  emit(o, files);
  return kExitOk;
}

int cmd_stratify(const CommonOptions& o, const std::string& manifest_path, const std::string& classes_path) {
  EvalConfig config = resolve_config(o);
  if (!classes_path.empty()) {
    nlohmann::json ov = config.inventory_override.value_or(nlohmann::json::object());
    ov["strata_classes"] = read_json_file(classes_path, "strata");
    config.inventory_override = ov;
  }
  const CharacterInventory inventory = load_inventory(config);
  const EvalReport report = run_evaluate(load_manifest_file(manifest_path), config, inventory);
  const auto formats = parse_formats(o.formats);
  RenderedFiles files;
  add_table(files, strata_table(report.strata, report.corpus, report.inventory_checksum), formats);
  if (formats.count(Format::Structured)) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& s : report.strata) arr.push_back(to_json(s));
    files["strata.json"] = nlohmann::ordered_json{{"overall", to_json(report.corpus)}, {"strata", arr}}.dump(2) + "\n";
  }
  emit(o, files);
  return kExitOk;
}

std::set<std::string> dataset_tags(const std::vector<UtteranceRow>& rows) {
  std::set<std::string> tags;
  for (const auto& r : rows) tags.insert(r.score.dataset);
  return tags;
}

std::string model_of(const std::vector<UtteranceRow>& rows, const std::string& fallback) {
  std::set<std::string> models;
  for (const auto& r : rows) models.insert(r.score.model);
  return models.size() == 1 && !models.begin()->empty() ? *models.begin() : fallback;
}

int cmd_compare(const CommonOptions& o, const std::string& path_a, const std::string& path_b) {
  const EvalConfig config = resolve_config(o);
  const BootstrapConfig boot = config.require_bootstrap("compare");
  const auto rows_a = read_scores_file(path_a);
  const auto rows_b = read_scores_file(path_b);
  if (rows_a.empty() || rows_b.empty()) throw InputError("stats", "score files must not be empty");
  if (dataset_tags(rows_a) != dataset_tags(rows_b)) {
    std::cerr << "compare: refusing to test: " << kDifferentTestSets << '\n';
    return kExitInput;
  }
  const auto scores_a = scores_of(rows_a);
  const auto scores_b = scores_of(rows_b);
  const auto pairing = pair_systems(scores_a, scores_b);
  for (const auto& p : pairing.pairs) {
    if (p.a.reference != p.b.reference) {
      std::cerr << "compare: refusing to test: utterance '" << p.id << "' has different references. "
                << kDifferentTestSets << '\n';
      return kExitInput;
    }
  }
  if (!pairing.unmatched_a.empty() || !pairing.unmatched_b.empty()) {
    std::cerr << "compare: warning: " << pairing.unmatched_a.size() << " utterances only in A, "
              << pairing.unmatched_b.size() << " only in B; testing the " << pairing.pairs.size()
              << " shared utterances\n";
  }
  std::vector<ScorePair> pairs;
  std::vector<UtteranceScore> shared_a, shared_b;
  for (const auto& p : pairing.pairs) {
    shared_a.push_back(p.a);
    shared_b.push_back(p.b);
  }
  for (std::size_t i = 0; i < shared_a.size(); ++i) pairs.push_back({&shared_a[i], &shared_b[i]});
  const PairedTestResult res = paired_bootstrap(pairs, boot);
  const CorpusScore ca = score_corpus(shared_a), cb = score_corpus(shared_b);

  const std::string name_a = model_of(rows_a, "A"), name_b = model_of(rows_b, "B");
  char p_buf[32];
  std::snprintf(p_buf, sizeof p_buf, "%.3f", res.p_value);
  Table t{"table_compare",
          {"Model A", "Model B", "N", "WER A", "WER B", "Δ", "CI low", "CI high", "p", "Significant"},
          {false, false, true, true, true, true, true, true, true, false},
          {{name_a, name_b, std::to_string(res.n_pairs), format_pct(ca.wer), format_pct(cb.wer),
            format_delta_pp(res.delta_point), format_delta_pp(res.ci_low), format_delta_pp(res.ci_high), p_buf,
            res.significant ? "yes" : "no"}},
          "Two-sided paired bootstrap, " + std::to_string(res.n_resamples) + " resamples, seed " +
              std::to_string(res.seed) + ", significance at p < 0.05."};
  const auto formats = parse_formats(o.formats);
  RenderedFiles files;
  add_table(files, t, formats);
  if (formats.count(Format::Structured)) {
    nlohmann::ordered_json j = to_json(res);
    j["model_a"] = name_a;
    j["model_b"] = name_b;
    j["wer_a"] = ca.wer;
    j["wer_b"] = cb.wer;
    j["unmatched_a"] = pairing.unmatched_a;
    j["unmatched_b"] = pairing.unmatched_b;
    files["compare.json"] = j.dump(2) + "\n";
  }
  emit(o, files);
  return kExitOk;
}

int cmd_diagnose(const CommonOptions& o, const std::vector<std::string>& manifests) {
  const EvalConfig config = resolve_config(o);
  const CharacterInventory inventory = load_inventory(config);
  const EvalReport report = aggregate(evaluate_rows(manifests, config, inventory), config, inventory);
  const auto formats = parse_formats(o.formats);
  RenderedFiles files;
  add_table(files, diagnostics_table(report.models, report.inventory_checksum), formats);
  std::ostringstream per_utt;
  for (const auto& r : report.per_utterance) {
    nlohmann::ordered_json j;
    j["id"] = r.score.id;
    j["model"] = r.score.model;
    j["failure"] = std::string(to_string(r.failure));
    j["script"] = std::string(to_string(r.script));
    j["signals"] = to_json(r.signals);
    j["wer"] = r.score.wer;
    j["rtf"] = r.rtf ? nlohmann::ordered_json(*r.rtf) : nlohmann::ordered_json();
    per_utt << j.dump() << '\n';
  }
  files["diagnostics.jsonl"] = per_utt.str();
  if (formats.count(Format::Structured)) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& m : report.models) arr.push_back(to_json(m));
    files["diagnostics_summary.json"] = arr.dump(2) + "\n";
  }
  emit(o, files);
  return kExitOk;
}

int cmd_inventory_show(const CommonOptions& o, bool as_json) {
  const EvalConfig config = resolve_config(o);
  const CharacterInventory inv = load_inventory(config);
  if (as_json) {
    nlohmann::ordered_json j = to_json(inv);
    j["checksum"] = checksum(inv);
    std::cout << j.dump(2) << '\n';
    return kExitOk;
  }
  auto print_set = [](const char* title, const CodepointSet& s) {
    std::cout << title << " (" << s.size() << "):\n";
    for (char32_t cp : s) {
      std::string g;
      utf8::append(g, cp);
      std::cout << "  " << format_codepoint(cp) << "  " << g << '\n';
    }
  };
  print_set("Pashto-unique", inv.pashto_unique);
  print_set("Arabic punctuation", inv.arabic_punctuation);
  print_set("Latin punctuation", inv.latin_punctuation);
  print_set("Zero-width", inv.zero_width);
  std::cout << "Kashida: " << format_codepoint(inv.kashida) << '\n';
  std::cout << "Arabic block: " << format_codepoint(inv.arabic_block.first) << ".."
            << format_codepoint(inv.arabic_block.last) << '\n';
  std::cout << "Strata classes (" << inv.strata_classes.size() << "):\n";
  for (const auto& c : inv.strata_classes) {
    std::cout << "  " << c.name << ": " << glyphs(c.chars) << (c.pashto_unique ? "  [Pashto-unique]" : "") << '\n';
  }
  std::cout << "Unicode version: " << nfc::unicode_version() << '\n';
  std::cout << "Checksum: " << checksum(inv) << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseval: deterministic ASR evaluation for Pashto and other Arabic-script languages"};
  app.require_subcommand(1);
  CommonOptions o;
  std::string input, manifest, classes, score_a, score_b;
  std::vector<std::string> manifests;
  bool as_json = false;
  std::uint64_t seed_value = 0;

  auto add_seed = [&](CLI::App* sub) { return sub->add_option("--seed", seed_value, "Bootstrap seed"); };

  auto* normalize_cmd = app.add_subcommand("normalize", "Normalize text lines (stdin or --input) to stdout");
  add_config_options(normalize_cmd, o);
  normalize_cmd->add_option("--input", input, "Input text file ('-' for stdin)");

  auto* filter_cmd = app.add_subcommand("filter", "Drop utterances whose reference normalizes to empty");
  add_config_options(filter_cmd, o);
  filter_cmd->add_option("--manifest", manifest, "Manifest (JSON lines)")->required()->check(CLI::ExistingFile);
  filter_cmd->add_option("--out", o.out_dir, "Directory for kept.jsonl and dropped.jsonl");

  auto* eval_cmd = app.add_subcommand("evaluate", "Run the full evaluation pipeline on a manifest");
  add_config_options(eval_cmd, o);
  add_output_options(eval_cmd, o);
  eval_cmd->add_option("--manifest", manifest, "Manifest (JSON lines)")->required()->check(CLI::ExistingFile);
  auto* eval_seed = add_seed(eval_cmd);

  auto* audit_cmd = app.add_subcommand("audit", "Script audit, one row per model");
  add_config_options(audit_cmd, o);
  add_output_options(audit_cmd, o);
  audit_cmd->add_option("--manifest", manifests, "Manifest(s)")->required()->check(CLI::ExistingFile);

  auto* strat_cmd = app.add_subcommand("stratify", "Character-class WER stratification");
  add_config_options(strat_cmd, o);
  add_output_options(strat_cmd, o);
  strat_cmd->add_option("--manifest", manifest, "Manifest (JSON lines)")->required()->check(CLI::ExistingFile);
  strat_cmd->add_option("--classes", classes, "Class catalogue JSON file")->check(CLI::ExistingFile);

  auto* cmp_cmd = app.add_subcommand("compare", "Paired bootstrap comparison of two score files");
  add_config_options(cmp_cmd, o);
  add_output_options(cmp_cmd, o);
  cmp_cmd->add_option("--a", score_a, "scores.jsonl of system A")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--b", score_b, "scores.jsonl of system B")->required()->check(CLI::ExistingFile);
  auto* cmp_seed = add_seed(cmp_cmd)->required();

  auto* diag_cmd = app.add_subcommand("diagnose", "Decoder-failure labels and RTF");
  add_config_options(diag_cmd, o);
  add_output_options(diag_cmd, o);
  diag_cmd->add_option("--manifest", manifests, "Manifest(s)")->required()->check(CLI::ExistingFile);

  auto* inv_cmd = app.add_subcommand("inventory", "Character inventory");
  inv_cmd->require_subcommand(1);
  auto* inv_show = inv_cmd->add_subcommand("show", "Print the active inventory and its checksum");
  add_config_options(inv_show, o);
  inv_show->add_flag("--json", as_json, "Print as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  try {
    if (eval_seed->count() > 0 || cmp_seed->count() > 0) o.seed = seed_value;
    if (*normalize_cmd) return cmd_normalize(o, input);
    if (*filter_cmd) return cmd_filter(o, manifest);
    if (*eval_cmd) return cmd_evaluate(o, manifest);
    if (*audit_cmd) return cmd_audit(o, manifests);
    if (*strat_cmd) return cmd_stratify(o, manifest, classes);
    if (*cmp_cmd) return cmd_compare(o, score_a, score_b);
    if (*diag_cmd) return cmd_diagnose(o, manifests);
    if (*inv_show) return cmd_inventory_show(o, as_json);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}
