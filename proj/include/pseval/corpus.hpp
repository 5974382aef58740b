// include/pseval/corpus.hpp

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

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/error.hpp"
#include "pseval/textnorm.hpp"
#include "pseval/utf8.hpp"

namespace pseval {

struct UtteranceRecord {
  std::string id;
  std::string reference;
  std::string hypothesis;
  std::string model;
  std::string dataset;
  std::optional<double> audio_duration_s;
  std::optional<double> decode_time_s;

  bool operator==(const UtteranceRecord&) const = default;
};

struct Manifest {
  std::vector<UtteranceRecord> records;
  std::string dataset_name;  // common dataset tag of the records, empty when mixed or absent
  std::string source_note;

  std::size_t size() const { return records.size(); }
  bool operator==(const Manifest&) const = default;
};

namespace corpus_detail {

inline std::string common_dataset(const std::vector<UtteranceRecord>& records) {
  if (records.empty()) return {};
  const std::string& first = records.front().dataset;
  for (const auto& r : records) {
    if (r.dataset != first) return {};
  }
  return first;
}

inline std::string where(std::size_t line) { return "line " + std::to_string(line); }

inline std::string required_string(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end()) throw InputError("corpus", where(line) + ": missing required field '" + key + "'");
  if (!it->is_string()) throw InputError("corpus", where(line) + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

inline std::string optional_string(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return {};
  if (!it->is_string()) throw InputError("corpus", where(line) + ": field '" + key + "' must be a string");
  return it->get<std::string>();
}

inline std::optional<double> optional_seconds(const nlohmann::json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number()) throw InputError("corpus", where(line) + ": field '" + key + "' must be a number");
  const double v = it->get<double>();
  if (!(v >= 0.0)) throw InputError("corpus", where(line) + ": field '" + key + "' must be >= 0");
  return v;
}

}  // namespace corpus_detail

inline UtteranceRecord parse_record(const std::string& line_text, std::size_t line) {
  using namespace corpus_detail;
  if (!utf8::is_valid(line_text)) throw InputError("corpus", where(line) + ": ill-formed UTF-8");
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("corpus", where(line) + ": malformed record (" + e.what() + ")");
  }
  if (!obj.is_object()) throw InputError("corpus", where(line) + ": malformed record (not an object)");
  UtteranceRecord r;
  r.id = required_string(obj, "id", line);
  if (r.id.empty()) throw InputError("corpus", where(line) + ": field 'id' must be non-empty");
  r.reference = required_string(obj, "reference", line);
  r.hypothesis = required_string(obj, "hypothesis", line);
  r.model = optional_string(obj, "model", line);
  r.dataset = optional_string(obj, "dataset", line);
  r.audio_duration_s = optional_seconds(obj, "audio_duration_s", line);
  r.decode_time_s = optional_seconds(obj, "decode_time_s", line);
  return r;
}

// One JSON object per line. Blank lines are skipped but still counted.
inline Manifest load_manifest(std::istream& in, std::string source_note = {}) {
  Manifest m;
  m.source_note = std::move(source_note);
  std::unordered_map<std::string, std::size_t> seen;
  std::string line_text;
  std::size_t line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    if (!line_text.empty() && line_text.back() == '\r') line_text.pop_back();
    if (line_text.find_first_not_of(" \t") == std::string::npos) continue;
    UtteranceRecord r = parse_record(line_text, line);
    auto [it, inserted] = seen.emplace(r.id, line);
    if (!inserted) {
      throw InputError("corpus", "duplicate id '" + r.id + "' at lines " + std::to_string(it->second) + " and " +
                                     std::to_string(line));
    }
    m.records.push_back(std::move(r));
  }
  m.dataset_name = corpus_detail::common_dataset(m.records);
  return m;
}

inline Manifest load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("corpus", "cannot open manifest '" + path + "'");
  return load_manifest(in, path);
}

inline nlohmann::ordered_json to_json(const UtteranceRecord& r) {
  nlohmann::ordered_json j;
  j["id"] = r.id;
  j["reference"] = r.reference;
  j["hypothesis"] = r.hypothesis;
  if (!r.model.empty()) j["model"] = r.model;
  if (!r.dataset.empty()) j["dataset"] = r.dataset;
  if (r.audio_duration_s) j["audio_duration_s"] = *r.audio_duration_s;
  if (r.decode_time_s) j["decode_time_s"] = *r.decode_time_s;
  return j;
}

inline void write_manifest(std::ostream& out, const Manifest& m) {
  for (const auto& r : m.records) out << to_json(r).dump() << '\n';
}

struct FilterResult {
  Manifest kept;
  Manifest dropped;
};

// Drops records whose normalized reference is effectively empty. Hypotheses
// that normalize to empty are kept.
template <typename Normalizer>
FilterResult filter_empty_references(const Manifest& manifest, Normalizer&& normalizer) {
  FilterResult out;
  out.kept.source_note = out.dropped.source_note = manifest.source_note;
  for (const auto& r : manifest.records) {
    if (is_effectively_empty(normalizer(r.reference))) {
      out.dropped.records.push_back(r);
    } else {
      out.kept.records.push_back(r);
    }
  }
  out.kept.dataset_name = corpus_detail::common_dataset(out.kept.records);
  out.dropped.dataset_name = corpus_detail::common_dataset(out.dropped.records);
  return out;
}

template <typename A, typename B>
struct Pairing {
  struct Pair {
    std::string id;
    A a;
    B b;
  };
  std::vector<Pair> pairs;  // in a's order
  std::vector<std::string> unmatched_a;
  std::vector<std::string> unmatched_b;
};

// Matches elements by their `id` member. Works for records and scores alike.
template <typename A, typename B>
Pairing<A, B> pair_systems(const std::vector<A>& a, const std::vector<B>& b) {
  Pairing<A, B> out;
  std::unordered_map<std::string, const B*> by_id;
  for (const auto& e : b) by_id.emplace(e.id, &e);
  std::set<std::string> matched;
  for (const auto& e : a) {
    auto it = by_id.find(e.id);
    if (it == by_id.end()) {
      out.unmatched_a.push_back(e.id);
    } else {
      out.pairs.push_back({e.id, e, *it->second});
      matched.insert(e.id);
    }
  }
  for (const auto& e : b) {
    if (!matched.count(e.id)) out.unmatched_b.push_back(e.id);
  }
  if (out.pairs.empty()) {
    throw InputError("corpus", "incomparable manifests: no utterance ids in common");
  }
  return out;
}

inline Pairing<UtteranceRecord, UtteranceRecord> pair_systems(const Manifest& a, const Manifest& b) {
  return pair_systems(a.records, b.records);
}

}  // namespace pseval
