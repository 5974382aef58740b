// include/pseval/nfc.hpp

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

// Unicode canonical composition (NFC) driven by tables generated from the
// Unicode Character Database, so output does not depend on the platform's ICU.

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>

#include "pseval/detail/unicode_tables.hpp"
#include "pseval/utf8.hpp"

namespace pseval::nfc {

inline constexpr const char* unicode_version() { return detail::kUnicodeVersion; }

namespace detail_hangul {
inline constexpr char32_t kSBase = 0xAC00, kLBase = 0x1100, kVBase = 0x1161, kTBase = 0x11A7;
inline constexpr int kLCount = 19, kVCount = 21, kTCount = 28;
inline constexpr int kNCount = kVCount * kTCount, kSCount = kLCount * kNCount;
}  // namespace detail_hangul

inline std::uint8_t combining_class(char32_t cp) {
  const auto& t = detail::kCccRanges;
  auto it = std::upper_bound(t.begin(), t.end(), cp,
                             [](char32_t c, const detail::CccRange& r) { return c < r.first; });
  if (it == t.begin()) return 0;
  --it;
  return cp <= it->last ? it->ccc : 0;
}

namespace internal {

inline const detail::Decomposition* find_decomposition(char32_t cp) {
  const auto& t = detail::kDecompositions;
  auto it = std::lower_bound(t.begin(), t.end(), cp,
                             [](const detail::Decomposition& d, char32_t c) { return d.cp < c; });
  return (it != t.end() && it->cp == cp) ? &*it : nullptr;
}

inline void decompose_into(char32_t cp, std::u32string& out) {
  using namespace detail_hangul;
  if (cp >= kSBase && cp < kSBase + kSCount) {
    const int s = static_cast<int>(cp - kSBase);
    out.push_back(kLBase + s / kNCount);
    out.push_back(kVBase + (s % kNCount) / kTCount);
    if (s % kTCount != 0) out.push_back(kTBase + s % kTCount);
    return;
  }
  if (const auto* d = find_decomposition(cp)) {
    decompose_into(d->first, out);
    if (d->second != 0) decompose_into(d->second, out);
    return;
  }
  out.push_back(cp);
}

// Returns 0 when the pair has no primary composite.
inline char32_t compose_pair(char32_t a, char32_t b) {
  using namespace detail_hangul;
  if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount) {
    return kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
  }
  if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 && b > kTBase &&
      b < kTBase + kTCount) {
    return a + (b - kTBase);
  }
  const auto& t = detail::kCompositions;
  auto it = std::lower_bound(t.begin(), t.end(), std::pair{a, b},
                             [](const detail::Composition& c, const std::pair<char32_t, char32_t>& k) {
                               return c.first != k.first ? c.first < k.first : c.second < k.second;
                             });
  return (it != t.end() && it->first == a && it->second == b) ? it->composite : 0;
}

}  // namespace internal

// Canonical decomposition followed by canonical ordering.
inline std::u32string nfd(std::u32string_view in) {
  std::u32string out;
  out.reserve(in.size() + in.size() / 4);
  for (char32_t cp : in) internal::decompose_into(cp, out);
  // Stable sort each run of non-starters by combining class.
  std::size_t i = 0;
  while (i < out.size()) {
    if (combining_class(out[i]) == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < out.size() && combining_class(out[j]) != 0) ++j;
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(i),
                     out.begin() + static_cast<std::ptrdiff_t>(j),
                     [](char32_t a, char32_t b) { return combining_class(a) < combining_class(b); });
    i = j;
  }
  return out;
}

inline std::u32string nfc(std::u32string_view in) {
  std::u32string s = nfd(in);
  if (s.empty()) return s;
  std::size_t starter = std::u32string::npos;
  std::size_t write = 0;
  int last_ccc = 0;  // class of the last character kept after the current starter
  for (std::size_t read = 0; read < s.size(); ++read) {
    const char32_t cp = s[read];
    const int ccc = combining_class(cp);
    if (starter != std::u32string::npos) {
      const bool adjacent = write == starter + 1;
      if (adjacent || (last_ccc != 0 && last_ccc < ccc)) {
        if (char32_t c = internal::compose_pair(s[starter], cp); c != 0) {
          s[starter] = c;
          continue;
        }
      }
    }
    if (ccc == 0) starter = write;
    last_ccc = ccc;
    s[write++] = cp;
  }
  s.resize(write);
  return s;
}

inline std::string nfc(std::string_view utf8_text) { return utf8::encode(nfc(utf8::decode(utf8_text))); }

}  // namespace pseval::nfc
