// include/pseval/config.hpp

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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "pseval/classcatalog.hpp"
#include "pseval/diagnostics.hpp"
#include "pseval/error.hpp"
#include "pseval/metrics.hpp"
#include "pseval/nfc.hpp"
#include "pseval/stats.hpp"

namespace pseval {

// Everything that influences a report. The seed never has a default: bootstrap
// statistics are computed only when one is supplied.
struct EvalConfig {
  ScoringConfig scoring;
  FailureThresholds thresholds;
  std::size_t bootstrap_resamples = 1000;
  double bootstrap_confidence = 0.95;
  bool add_one_smoothing = false;
  std::optional<std::uint64_t> seed;
  std::optional<nlohmann::json> inventory_override;

  std::optional<BootstrapConfig> bootstrap() const {
    if (!seed) return std::nullopt;
    BootstrapConfig b(*seed, bootstrap_resamples, bootstrap_confidence);
    b.add_one_smoothing = add_one_smoothing;
    return b;
  }

  BootstrapConfig require_bootstrap(const char* what) const {
    auto b = bootstrap();
    if (!b) throw InputError("stats", std::string(what) + " requires --seed");
    return *b;
  }

  bool operator==(const EvalConfig&) const = default;
};

// Schema:
// {
//   "normalization": {"strip_arabic_punctuation": bool, "strip_latin_punctuation": bool,
//                     "remove_zero_width": bool, "collapse_whitespace": bool},
//   "cer_count_spaces": bool,
//   "failure_thresholds": {"repetition_length_ratio": x, "switch_length_ratio": x, "top_bigram_share": x},
//   "bootstrap": {"n_resamples": n, "confidence": x, "add_one_smoothing": bool},
//   "inventory_override": {...}
// }
// Seeds are rejected here; they come from the command line only.
inline EvalConfig eval_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("config", "config must be a JSON object");
  EvalConfig c;
  for (const auto& [k, v] : j.items()) {
    if (k == "normalization") {
      c.scoring.normalization = normalization_config_from_json(v);
    } else if (k == "cer_count_spaces") {
      if (!v.is_boolean()) throw InputError("config", "'cer_count_spaces' must be a boolean");
      c.scoring.cer_count_spaces = v.get<bool>();
    } else if (k == "failure_thresholds") {
      c.thresholds = failure_thresholds_from_json(v);
    } else if (k == "bootstrap") {
      if (!v.is_object()) throw InputError("config", "'bootstrap' must be an object");
      for (const auto& [bk, bv] : v.items()) {
        if (bk == "n_resamples" && bv.is_number_unsigned()) c.bootstrap_resamples = bv.get<std::size_t>();
        else if (bk == "confidence" && bv.is_number()) c.bootstrap_confidence = bv.get<double>();
        else if (bk == "add_one_smoothing" && bv.is_boolean()) c.add_one_smoothing = bv.get<bool>();
        else if (bk == "seed") throw InputError("config", "the bootstrap seed must be given with --seed");
        else throw InputError("config", "bad bootstrap option '" + bk + "'");
      }
      validate(BootstrapConfig(0, c.bootstrap_resamples, c.bootstrap_confidence));
    } else if (k == "inventory_override") {
      c.inventory_override = v;
    } else {
      throw InputError("config", "unknown config key '" + k + "'");
    }
  }
  return c;
}

inline EvalConfig load_eval_config(const std::string& path) {
  return eval_config_from_json(read_json_file(path, "config"));
}

inline CharacterInventory load_inventory(const EvalConfig& c) {
  return c.inventory_override ? load_inventory(*c.inventory_override) : load_inventory();
}

// Effective configuration echoed into reports, including the resolved inventory.
inline nlohmann::ordered_json config_echo(const EvalConfig& c, const CharacterInventory& inventory) {
  nlohmann::ordered_json j;
  j["normalization"] = to_json(c.scoring.normalization);
  j["cer_count_spaces"] = c.scoring.cer_count_spaces;
  j["failure_thresholds"] = to_json(c.thresholds);
  j["bootstrap"] = {{"n_resamples", c.bootstrap_resamples},
                    {"confidence", c.bootstrap_confidence},
                    {"add_one_smoothing", c.add_one_smoothing},
                    {"seed", c.seed ? nlohmann::ordered_json(*c.seed) : nlohmann::ordered_json()}};
  j["unicode_version"] = nfc::unicode_version();
  j["inventory"] = to_json(inventory);
  j["inventory_checksum"] = checksum(inventory);
  return j;
}

}  // namespace pseval
