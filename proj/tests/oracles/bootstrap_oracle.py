#!/usr/bin/env python3
# Copyright 2026  The pseval Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
# KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
# WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
# MERCHANTABLITY OR NON-INFRINGEMENT.
# See the Apache 2 License for the specific language governing permissions and
# limitations under the License.
"""Reference implementation of the documented bootstrap resampling scheme.

Prints the values frozen into tests/test_stats.cpp. Pure Python integers, no
numpy, so it shares no code or numeric library with the C++ implementation.
"""
import math

MASK = (1 << 64) - 1


def splitmix64(seed):
    state = seed & MASK
    while True:
        state = (state + 0x9E3779B97F4A7C15) & MASK
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        yield z ^ (z >> 31)


def bounded(gen, n):
    threshold = ((1 << 64) - n) % n
    while True:
        m = next(gen) * n
        if (m & MASK) >= threshold:
            return m >> 64


def percentile(sorted_vals, q):
    h = (len(sorted_vals) - 1) * q
    lo = math.floor(h)
    if lo + 1 >= len(sorted_vals):
        return sorted_vals[-1]
    return sorted_vals[lo] + (h - lo) * (sorted_vals[lo + 1] - sorted_vals[lo])


def corpus100():
    ref = [5 + (i * 7) % 11 for i in range(100)]
    edits = [(i * 13) % (r + 2) for i, r in enumerate(ref)]
    return edits, ref


def pairs200():
    ref = [6 + (i * 5) % 9 for i in range(200)]
    a = [(i * 3) % 4 + (1 if i % 50 == 0 else 0) for i in range(200)]
    b = [(i * 7) % 4 for i in range(200)]
    return a, b, ref


def ci(edits, ref, seed, resamples, confidence):
    gen = splitmix64(seed)
    n = len(ref)
    stats = []
    for _ in range(resamples):
        idx = [bounded(gen, n) for _ in range(n)]
        stats.append(sum(edits[i] for i in idx) / sum(ref[i] for i in idx))
    stats.sort()
    alpha = (1 - confidence) / 2
    return sum(edits) / sum(ref), percentile(stats, alpha), percentile(stats, 1 - alpha)


def paired(a, b, ref, seed, resamples):
    gen = splitmix64(seed)
    n = len(ref)
    le = ge = 0
    for _ in range(resamples):
        idx = [bounded(gen, n) for _ in range(n)]
        r = sum(ref[i] for i in idx)
        d = sum(a[i] for i in idx) / r - sum(b[i] for i in idx) / r
        le += d <= 0
        ge += d >= 0
    delta = sum(a) / sum(ref) - sum(b) / sum(ref)
    return delta, min(1.0, 2 * min(le / resamples, ge / resamples))


if __name__ == "__main__":
    g = splitmix64(0)
    print("splitmix64(0) first three:", [hex(next(g)) for _ in range(3)])
    e, r = corpus100()
    print("corpus100 seed 42 R=1000 c=0.95:", [repr(x) for x in ci(e, r, 42, 1000, 0.95)])
    a, b, r = pairs200()
    print("pairs200 seed 7 R=1000:", [repr(x) for x in paired(a, b, r, 7, 1000)])
