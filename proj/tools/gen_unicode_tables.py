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
"""Generates include/pseval/detail/unicode_tables.hpp.

Usage: pip install unicodedata2==14.0.0 && python3 tools/gen_unicode_tables.py > include/pseval/detail/unicode_tables.hpp
"""
import sys

import unicodedata2 as ud

HANGUL_FIRST, HANGUL_LAST = 0xAC00, 0xD7A3


def main():
    ccc = []
    decomp = []
    comp = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF or HANGUL_FIRST <= cp <= HANGUL_LAST:
            continue
        ch = chr(cp)
        c = ud.combining(ch)
        if c:
            ccc.append((cp, c))
        d = ud.decomposition(ch)
        if not d or d.startswith("<"):
            continue
        parts = [int(x, 16) for x in d.split()]
        decomp.append((cp, parts))
        if len(parts) == 2 and ud.normalize("NFC", ch) == ch:
            comp.append((parts[0], parts[1], cp))

    # Collapse consecutive code points sharing a class into ranges.
    ranges = []
    for cp, c in ccc:
        if ranges and ranges[-1][1] == cp - 1 and ranges[-1][2] == c:
            ranges[-1][1] = cp
        else:
            ranges.append([cp, cp, c])
    comp.sort()

    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py from the Unicode Character\n")
    out.write(f"// Database version {ud.unidata_version}. Do not edit.\n\n")
    out.write("#pragma once\n\n#include <array>\n#include <cstdint>\n\n")
    out.write("namespace pseval::detail {\n\n")
    out.write(f'inline constexpr const char* kUnicodeVersion = "{ud.unidata_version}";\n\n')
    out.write("struct CccRange {\n  char32_t first;\n  char32_t last;\n  std::uint8_t ccc;\n};\n\n")
    out.write("struct Decomposition {\n  char32_t cp;\n  char32_t first;\n  char32_t second;  // 0 for singletons\n};\n\n")
    out.write("struct Composition {\n  char32_t first;\n  char32_t second;\n  char32_t composite;\n};\n\n")
    out.write(f"inline constexpr std::array<CccRange, {len(ranges)}> kCccRanges{{{{\n")
    for a, b, c in ranges:
        out.write(f"    {{0x{a:04X}, 0x{b:04X}, {c}}},\n")
    out.write("}};\n\n")
    out.write(f"inline constexpr std::array<Decomposition, {len(decomp)}> kDecompositions{{{{\n")
    for cp, parts in decomp:
        second = parts[1] if len(parts) > 1 else 0
        out.write(f"    {{0x{cp:04X}, 0x{parts[0]:04X}, 0x{second:04X}}},\n")
    out.write("}};\n\n")
    out.write(f"inline constexpr std::array<Composition, {len(comp)}> kCompositions{{{{\n")
    for a, b, c in comp:
        out.write(f"    {{0x{a:04X}, 0x{b:04X}, 0x{c:04X}}},\n")
    out.write("}};\n\n}  // namespace pseval::detail\n")


if __name__ == "__main__":
    main()
