// tests/test_stats.cpp

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

#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "bootstrap_reference.hpp"
#include "pseval/stats.hpp"

using namespace pseval;
using testing::make_pairs;
using testing::synthetic_scores;

TEST_CASE("SplitMix64 reference outputs", "[stats]") {
  SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafULL);
  CHECK(g.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(g.next() == 0x06c45d188009454fULL);

  SplitMix64 a(123456789);
  testing::RefRng b{123456789};
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next() == b.next());
}

TEST_CASE("bounded draws agree with the reference and stay in range", "[stats]") {
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 7ULL, 100ULL, 1000ULL, (1ULL << 63) + 5, ~0ULL}) {
    SplitMix64 a(n);
    testing::RefRng b{n};
    for (int i = 0; i < 2000; ++i) {
      const auto x = a.bounded(n);
      REQUIRE(x < n);
      REQUIRE(x == testing::ref_bounded(b, n));
    }
  }
}

TEST_CASE("percentile interpolation", "[stats]") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(percentile_sorted(v, 0.0) == 1.0);
  CHECK(percentile_sorted(v, 1.0) == 4.0);
  CHECK(percentile_sorted(v, 0.5) == 2.5);
  CHECK(percentile_sorted(std::vector<double>{7.0}, 0.3) == 7.0);
}

TEST_CASE("bootstrap CI matches frozen reference values", "[stats][oracle]") {
  std::vector<std::size_t> e, r;
  testing::corpus100(e, r);
  const auto scores = synthetic_scores(e, r);
  const auto got = bootstrap_ci(scores, BootstrapConfig(42, 1000, 0.95));
  // Printed by oracles/bootstrap_oracle.py.
  CHECK(got.point == 0.5477386934673367);
  CHECK(got.ci_low == 0.47440834407924815);
  CHECK(got.ci_high == 0.6159932998455763);

  const auto ref = testing::ref_ci(e, r, 42, 1000, 0.95);
  CHECK(got.point == ref.point);
  CHECK(got.ci_low == ref.low);
  CHECK(got.ci_high == ref.high);
}

TEST_CASE("paired bootstrap matches frozen reference values", "[stats][oracle]") {
  std::vector<std::size_t> a, b, r;
  testing::pairs200(a, b, r);
  const auto sa = synthetic_scores(a, r), sb = synthetic_scores(b, r);
  const auto got = paired_bootstrap(make_pairs(sa, sb), BootstrapConfig(7, 1000, 0.95));
  CHECK(got.delta_point == 0.0020030045067601365);
  CHECK(got.p_value == 0.036);
  CHECK(got.significant);

  const auto ref = testing::ref_paired(a, b, r, 7, 1000);
  CHECK(got.delta_point == ref.delta);
  CHECK(got.p_value == ref.p);

  for (std::uint64_t seed : {1ULL, 99ULL, 0xDEADBEEFULL}) {
    const auto g2 = paired_bootstrap(make_pairs(sa, sb), BootstrapConfig(seed, 500));
    const auto r2 = testing::ref_paired(a, b, r, seed, 500);
    CHECK(g2.p_value == r2.p);
  }
}

TEST_CASE("same seed gives bit-identical results", "[stats]") {
  std::vector<std::size_t> e, r;
  testing::corpus100(e, r);
  const auto s = synthetic_scores(e, r);
  CHECK(bootstrap_ci(s, BootstrapConfig(5)) == bootstrap_ci(s, BootstrapConfig(5)));
  CHECK_FALSE(bootstrap_ci(s, BootstrapConfig(5)) == bootstrap_ci(s, BootstrapConfig(6)));
  const auto pairs = make_pairs(s, s);
  CHECK(paired_bootstrap(pairs, BootstrapConfig(5)) == paired_bootstrap(pairs, BootstrapConfig(5)));
}

TEST_CASE("degenerate corpora", "[stats]") {
  const auto flat = synthetic_scores(std::vector<std::size_t>(50, 2), std::vector<std::size_t>(50, 10));
  const auto ci = bootstrap_ci(flat, BootstrapConfig(1));
  CHECK(ci.ci_low == ci.ci_high);
  CHECK(ci.point == 0.2);

  const auto same = paired_bootstrap(make_pairs(flat, flat), BootstrapConfig(1));
  CHECK(same.p_value == 1.0);
  CHECK_FALSE(same.significant);
  CHECK(same.delta_point == 0.0);
  CHECK(same.ci_low == 0.0);
  CHECK(same.ci_high == 0.0);

  // Smoothing never pushes p above 1.
  BootstrapConfig smooth(1);
  smooth.add_one_smoothing = true;
  CHECK(paired_bootstrap(make_pairs(flat, flat), smooth).p_value == 1.0);

  const auto bad = synthetic_scores(std::vector<std::size_t>(50, 10), std::vector<std::size_t>(50, 10));
  const auto good = synthetic_scores(std::vector<std::size_t>(50, 0), std::vector<std::size_t>(50, 10));
  const auto clear = paired_bootstrap(make_pairs(bad, good), BootstrapConfig(1));
  CHECK(clear.delta_point == 1.0);
  CHECK(clear.p_value == 0.0);
  CHECK(clear.significant);
  const auto clear_smoothed = paired_bootstrap(make_pairs(bad, good), smooth);
  CHECK(clear_smoothed.p_value == Catch::Approx(2.0 / 1001.0));
}

TEST_CASE("identical systems are never significant", "[stats][property]") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::size_t> e(100), r(100);
    for (std::size_t i = 0; i < 100; ++i) {
      r[i] = 1 + rng() % 15;
      e[i] = rng() % (r[i] + 3);
    }
    const auto s = synthetic_scores(e, r);
    const auto res = paired_bootstrap(make_pairs(s, s), BootstrapConfig(rng(), 200));
    REQUIRE_FALSE(res.significant);
    REQUIRE(res.p_value == 1.0);
  }
}

TEST_CASE("both systems see the same resample indices", "[stats]") {
  std::vector<std::size_t> a, b, r;
  testing::pairs200(a, b, r);
  const auto sa = synthetic_scores(a, r), sb = synthetic_scores(b, r);
  const auto pairs = make_pairs(sa, sb);
  std::size_t calls = 0;
  ResampleStream replay(7, pairs.size());
  paired_bootstrap(pairs, BootstrapConfig(7, 200), [&](std::span<const std::size_t> idx, double delta) {
    ++calls;
    const auto expected = replay.next();
    REQUIRE(std::equal(idx.begin(), idx.end(), expected.begin(), expected.end()));
    // The delta is exactly what the shared indices imply for A and B.
    std::size_t ea = 0, eb = 0, ra = 0;
    for (std::size_t i : idx) ea += a[i], eb += b[i], ra += r[i];
    REQUIRE(delta == ratio(ea, ra) - ratio(eb, ra));
  });
  CHECK(calls == 200);
}

TEST_CASE("wider confidence gives a wider interval", "[stats][property]") {
  std::vector<std::size_t> e, r;
  testing::corpus100(e, r);
  const auto s = synthetic_scores(e, r);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto narrow = bootstrap_ci(s, BootstrapConfig(seed, 500, 0.90));
    const auto wide = bootstrap_ci(s, BootstrapConfig(seed, 500, 0.99));
    REQUIRE(wide.ci_low <= narrow.ci_low);
    REQUIRE(wide.ci_high >= narrow.ci_high);
    REQUIRE(narrow.ci_low <= narrow.point);
  }
}

TEST_CASE("p-values stay in range", "[stats][property]") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    std::vector<std::size_t> a(60), b(60), r(60);
    for (std::size_t i = 0; i < 60; ++i) {
      r[i] = 1 + rng() % 10;
      a[i] = rng() % (r[i] + 1);
      b[i] = rng() % (r[i] + 1);
    }
    const auto sa = synthetic_scores(a, r), sb = synthetic_scores(b, r);
    BootstrapConfig c(rng(), 100);
    c.add_one_smoothing = t % 2 == 0;
    const auto res = paired_bootstrap(make_pairs(sa, sb), c);
    REQUIRE(res.p_value >= 0.0);
    REQUIRE(res.p_value <= 1.0);
    REQUIRE(res.ci_low <= res.ci_high);
  }
}

TEST_CASE("invalid bootstrap configuration", "[stats]") {
  const auto s = synthetic_scores({1}, {2});
  CHECK_THROWS_AS(bootstrap_ci(s, BootstrapConfig(1, 0)), InputError);
  CHECK_THROWS_AS(bootstrap_ci(s, BootstrapConfig(1, 10, 1.0)), InputError);
  CHECK_THROWS_AS(bootstrap_ci(std::vector<UtteranceScore>{}, BootstrapConfig(1)), InputError);
  CHECK_THROWS_AS(paired_bootstrap(std::vector<ScorePair>{}, BootstrapConfig(1)), InputError);
}

TEST_CASE("bootstrap result JSON round-trip", "[stats]") {
  std::vector<std::size_t> e, r;
  testing::corpus100(e, r);
  const auto res = bootstrap_ci(synthetic_scores(e, r), BootstrapConfig(42));
  CHECK(bootstrap_result_from_json(nlohmann::json::parse(to_json(res).dump())) == res);
}
