// include/pseval/stats.hpp

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

// Utterance-level bootstrap. The resampling stream is fully specified so that
// any implementation can reproduce it:
//
//   generator   SplitMix64 seeded with `seed` (state += 0x9E3779B97F4A7C15,
//               then the standard 30/27/31 xor-shift-multiply finalizer)
//   index draw  Lemire's multiply-shift bounded integer with rejection:
//               m = x * n (128-bit); reject while low64(m) < (2^64 - n) mod n;
//               index = high64(m)
//   order       resample 0 draws its n indices first, then resample 1, ...
//   statistic   micro-averaged WER over the drawn indices
//   interval    percentiles with linear interpolation between order
//               statistics (h = (R - 1) q), at q = (1 - c)/2 and 1 - (1 - c)/2
//
// A paired test draws ONE index vector per resample and applies it to both
// systems.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pseval/error.hpp"
#include "pseval/metrics.hpp"

namespace pseval {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t bounded(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t state_;
};

struct BootstrapConfig {
  explicit BootstrapConfig(std::uint64_t seed_, std::size_t n_resamples_ = 1000, double confidence_ = 0.95)
      : n_resamples(n_resamples_), confidence(confidence_), seed(seed_) {}

  std::size_t n_resamples;
  double confidence;
  std::uint64_t seed;
  bool add_one_smoothing = false;  // p = (k + 1) / (R + 1) per tail

  bool operator==(const BootstrapConfig&) const = default;
};

inline void validate(const BootstrapConfig& c) {
  if (c.n_resamples < 1) throw InputError("stats", "n_resamples must be >= 1");
  if (!(c.confidence > 0.0 && c.confidence < 1.0)) throw InputError("stats", "confidence must be in (0, 1)");
}

struct BootstrapResult {
  double point = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double confidence = 0.0;
  std::size_t n_resamples = 0;
  std::uint64_t seed = 0;

  bool operator==(const BootstrapResult&) const = default;
};

struct PairedTestResult {
  double delta_point = 0.0;  // WER_A - WER_B
  double ci_low = 0.0;       // percentile interval of the resampled deltas
  double ci_high = 0.0;
  double p_value = 1.0;
  bool significant = false;  // p_value < 0.05
  std::size_t n_pairs = 0;
  std::size_t n_resamples = 0;
  std::uint64_t seed = 0;

  bool operator==(const PairedTestResult&) const = default;
};

inline constexpr double kSignificanceLevel = 0.05;

// Linear interpolation between order statistics of a sorted sample.
inline double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw InvariantError("stats", "percentile of an empty sample");
  const double h = static_cast<double>(sorted.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

// Draws the index vector of each resample in stream order.
class ResampleStream {
 public:
  ResampleStream(std::uint64_t seed, std::size_t n) : rng_(seed), n_(n), indices_(n) {}

  std::span<const std::size_t> next() {
    for (auto& idx : indices_) idx = static_cast<std::size_t>(rng_.bounded(n_));
    return indices_;
  }

 private:
  SplitMix64 rng_;
  std::size_t n_;
  std::vector<std::size_t> indices_;
};

inline BootstrapResult bootstrap_ci(std::span<const UtteranceScore> scores, const BootstrapConfig& config) {
  validate(config);
  if (scores.empty()) throw InputError("stats", "cannot bootstrap an empty score list");
  BootstrapResult r;
  r.point = score_corpus(scores).wer;
  r.confidence = config.confidence;
  r.n_resamples = config.n_resamples;
  r.seed = config.seed;

  ResampleStream stream(config.seed, scores.size());
  std::vector<double> stats;
  stats.reserve(config.n_resamples);
  for (std::size_t k = 0; k < config.n_resamples; ++k) {
    std::size_t edits = 0, ref = 0;
    for (std::size_t idx : stream.next()) {
      edits += scores[idx].word_edits;
      ref += scores[idx].ref_tokens;
    }
    stats.push_back(ratio(edits, ref));
  }
  std::sort(stats.begin(), stats.end());
  const double alpha = (1.0 - config.confidence) / 2.0;
  r.ci_low = percentile_sorted(stats, alpha);
  r.ci_high = percentile_sorted(stats, 1.0 - alpha);
  return r;
}

inline BootstrapResult bootstrap_ci(const std::vector<UtteranceScore>& scores, const BootstrapConfig& config) {
  return bootstrap_ci(std::span<const UtteranceScore>(scores), config);
}

struct ScorePair {
  const UtteranceScore* a;
  const UtteranceScore* b;
};

// Called once per resample with its index vector and the resulting delta.
using ResampleObserver = std::function<void(std::span<const std::size_t>, double)>;

inline PairedTestResult paired_bootstrap(std::span<const ScorePair> pairs, const BootstrapConfig& config,
                                         const ResampleObserver& observer = {}) {
  validate(config);
  if (pairs.empty()) throw InputError("stats", "cannot compare an empty pair list");
  PairedTestResult r;
  r.n_pairs = pairs.size();
  r.n_resamples = config.n_resamples;
  r.seed = config.seed;
  {
    std::size_t ea = 0, ra = 0, eb = 0, rb = 0;
    for (const auto& p : pairs) {
      ea += p.a->word_edits, ra += p.a->ref_tokens;
      eb += p.b->word_edits, rb += p.b->ref_tokens;
    }
    r.delta_point = ratio(ea, ra) - ratio(eb, rb);
  }

  ResampleStream stream(config.seed, pairs.size());
  std::vector<double> deltas;
  deltas.reserve(config.n_resamples);
  std::size_t at_or_below = 0, at_or_above = 0;
  for (std::size_t k = 0; k < config.n_resamples; ++k) {
    const auto indices = stream.next();
    std::size_t ea = 0, ra = 0, eb = 0, rb = 0;
    for (std::size_t idx : indices) {
      ea += pairs[idx].a->word_edits, ra += pairs[idx].a->ref_tokens;
      eb += pairs[idx].b->word_edits, rb += pairs[idx].b->ref_tokens;
    }
    const double d = ratio(ea, ra) - ratio(eb, rb);
    if (d <= 0.0) ++at_or_below;
    if (d >= 0.0) ++at_or_above;
    deltas.push_back(d);
    if (observer) observer(indices, d);
  }
  const auto resamples = static_cast<double>(config.n_resamples);
  auto tail = [&](std::size_t k) {
    return config.add_one_smoothing ? (static_cast<double>(k) + 1.0) / (resamples + 1.0)
                                    : static_cast<double>(k) / resamples;
  };
  r.p_value = std::clamp(2.0 * std::min(tail(at_or_below), tail(at_or_above)), 0.0, 1.0);
  r.significant = r.p_value < kSignificanceLevel;

  std::sort(deltas.begin(), deltas.end());
  const double alpha = (1.0 - config.confidence) / 2.0;
  r.ci_low = percentile_sorted(deltas, alpha);
  r.ci_high = percentile_sorted(deltas, 1.0 - alpha);
  return r;
}

inline PairedTestResult paired_bootstrap(const std::vector<ScorePair>& pairs, const BootstrapConfig& config,
                                         const ResampleObserver& observer = {}) {
  return paired_bootstrap(std::span<const ScorePair>(pairs), config, observer);
}

inline nlohmann::ordered_json to_json(const BootstrapResult& r) {
  return {{"point", r.point},   {"ci_low", r.ci_low},           {"ci_high", r.ci_high},
          {"confidence", r.confidence}, {"n_resamples", r.n_resamples}, {"seed", r.seed}};
}

inline BootstrapResult bootstrap_result_from_json(const nlohmann::json& j) {
  BootstrapResult r;
  r.point = j.at("point").get<double>();
  r.ci_low = j.at("ci_low").get<double>();
  r.ci_high = j.at("ci_high").get<double>();
  r.confidence = j.at("confidence").get<double>();
  r.n_resamples = j.at("n_resamples").get<std::size_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  return r;
}

inline nlohmann::ordered_json to_json(const PairedTestResult& r) {
  return {{"delta_point", r.delta_point}, {"ci_low", r.ci_low},       {"ci_high", r.ci_high},
          {"p_value", r.p_value},         {"significant", r.significant}, {"n_pairs", r.n_pairs},
          {"n_resamples", r.n_resamples}, {"seed", r.seed}};
}

}  // namespace pseval
