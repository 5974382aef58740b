// tests/bootstrap_reference.hpp

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

// A second, deliberately plain implementation of the resampling scheme used by
// pseval::bootstrap_ci and pseval::paired_bootstrap. It avoids 128-bit
// arithmetic and the library's helpers so that agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pseval/stats.hpp"

namespace pseval::testing {

struct RefRng {
  std::uint64_t s;
  std::uint64_t next() {
    s += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = s;
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }
};

// Full 64x64 -> 128 product from 32-bit halves.
inline void mul64(std::uint64_t a, std::uint64_t b, std::uint64_t& hi, std::uint64_t& lo) {
  const std::uint64_t a0 = a & 0xFFFFFFFFu, a1 = a >> 32, b0 = b & 0xFFFFFFFFu, b1 = b >> 32;
  const std::uint64_t p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
  const std::uint64_t mid = (p00 >> 32) + (p01 & 0xFFFFFFFFu) + (p10 & 0xFFFFFFFFu);
  lo = (mid << 32) | (p00 & 0xFFFFFFFFu);
  hi = p11 + (p01 >> 32) + (p10 >> 32) + (mid >> 32);
}

inline std::uint64_t ref_bounded(RefRng& rng, std::uint64_t n) {
  const std::uint64_t threshold = (~n + 1) % n;  // 2^64 mod n
  for (;;) {
    std::uint64_t hi, lo;
    mul64(rng.next(), n, hi, lo);
    if (lo >= threshold) return hi;
  }
}

inline double ref_percentile(const std::vector<double>& v, double q) {
  const double h = (static_cast<double>(v.size()) - 1.0) * q;
  const double f = std::floor(h);
  const auto i = static_cast<std::size_t>(f);
  if (i + 1 >= v.size()) return v.back();
  return v[i] + (h - f) * (v[i + 1] - v[i]);
}

struct RefCi {
  double point, low, high;
};

inline RefCi ref_ci(const std::vector<std::size_t>& edits, const std::vector<std::size_t>& ref, std::uint64_t seed,
                    std::size_t resamples, double confidence) {
  RefRng rng{seed};
  const std::size_t n = ref.size();
  std::vector<double> stats;
  for (std::size_t k = 0; k < resamples; ++k) {
    double e = 0, r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = ref_bounded(rng, n);
      e += static_cast<double>(edits[idx]);
      r += static_cast<double>(ref[idx]);
    }
    stats.push_back(e / r);
  }
  std::sort(stats.begin(), stats.end());
  double te = 0, tr = 0;
  for (std::size_t i = 0; i < n; ++i) te += static_cast<double>(edits[i]), tr += static_cast<double>(ref[i]);
  const double alpha = (1.0 - confidence) / 2.0;
  return {te / tr, ref_percentile(stats, alpha), ref_percentile(stats, 1.0 - alpha)};
}

struct RefPaired {
  double delta, p;
};

// Both systems share the reference lengths here, as in a real comparison.
inline RefPaired ref_paired(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                            const std::vector<std::size_t>& ref, std::uint64_t seed, std::size_t resamples) {
  RefRng rng{seed};
  const std::size_t n = ref.size();
  std::size_t le = 0, ge = 0;
  for (std::size_t k = 0; k < resamples; ++k) {
    double ea = 0, eb = 0, r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto idx = ref_bounded(rng, n);
      ea += static_cast<double>(a[idx]);
      eb += static_cast<double>(b[idx]);
      r += static_cast<double>(ref[idx]);
    }
    const double d = ea / r - eb / r;
    le += d <= 0.0;
    ge += d >= 0.0;
  }
  double sa = 0, sb = 0, sr = 0;
  for (std::size_t i = 0; i < n; ++i)
    sa += static_cast<double>(a[i]), sb += static_cast<double>(b[i]), sr += static_cast<double>(ref[i]);
  const double R = static_cast<double>(resamples);
  return {sa / sr - sb / sr, std::min(1.0, 2.0 * std::min(le / R, ge / R))};
}

// Synthetic score lists with known word_edits / ref_tokens.
inline std::vector<UtteranceScore> synthetic_scores(const std::vector<std::size_t>& edits,
                                                    const std::vector<std::size_t>& ref) {
  std::vector<UtteranceScore> out(ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i) {
    out[i].id = "u" + std::to_string(i);
    out[i].word_edits = edits[i];
    out[i].ref_tokens = ref[i];
    out[i].wer = ratio(edits[i], ref[i]);
  }
  return out;
}

// The two frozen corpora; the same generators appear in oracles/bootstrap_oracle.py.
inline void corpus100(std::vector<std::size_t>& edits, std::vector<std::size_t>& ref) {
  edits.clear();
  ref.clear();
  for (std::size_t i = 0; i < 100; ++i) {
    ref.push_back(5 + (i * 7) % 11);
    edits.push_back((i * 13) % (ref.back() + 2));
  }
}

inline void pairs200(std::vector<std::size_t>& a, std::vector<std::size_t>& b, std::vector<std::size_t>& ref) {
  a.clear(), b.clear(), ref.clear();
  for (std::size_t i = 0; i < 200; ++i) {
    ref.push_back(6 + (i * 5) % 9);
    a.push_back((i * 3) % 4 + (i % 50 == 0 ? 1 : 0));
    b.push_back((i * 7) % 4);
  }
}

inline std::vector<ScorePair> make_pairs(const std::vector<UtteranceScore>& a, const std::vector<UtteranceScore>& b) {
  std::vector<ScorePair> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back({&a[i], &b[i]});
  return out;
}

}  // namespace pseval::testing
