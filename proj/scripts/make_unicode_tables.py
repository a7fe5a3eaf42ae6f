#!/usr/bin/env python3
"""Regenerates core/include/hyperlex/detail/unicode_tables.hpp from Python's
unicodedata. Letter ranges cover general categories Lu/Ll/Lt/Lm/Lo;
the lowercase table stores simple (single code point) mappings only.

Usage: python3 scripts/make_unicode_tables.py > core/include/hyperlex/detail/unicode_tables.hpp
"""

import sys
import unicodedata


def letter_ranges():
    ranges = []
    start = None
    prev = None
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            is_letter = False
        else:
            is_letter = unicodedata.category(chr(cp)).startswith("L")
        if is_letter:
            if start is None:
                start = cp
            prev = cp
        else:
            if start is not None:
                ranges.append((start, prev))
                start = None
    if start is not None:
        ranges.append((start, prev))
    return ranges


def lowercase_pairs():
    pairs = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        if not unicodedata.category(c).startswith("L"):
            continue
        low = c.lower()
        if len(low) == 1 and low != c:
            pairs.append((cp, ord(low)))
    return pairs


def main():
    ranges = letter_ranges()
    pairs = lowercase_pairs()
    out = sys.stdout
    out.write("// Generated by scripts/make_unicode_tables.py; do not edit.\n")
    out.write("// Unicode version: %s\n" % unicodedata.unidata_version)
    out.write("#pragma once\n\n")
    out.write("#include <cstdint>\n\n")
    out.write("namespace hyperlex::detail {\n\n")
    out.write("struct CodepointRange { char32_t lo; char32_t hi; };\n")
    out.write("struct LowerMapping { char32_t from; char32_t to; };\n\n")
    out.write("inline constexpr CodepointRange kLetterRanges[] = {\n")
    for i, (lo, hi) in enumerate(ranges):
        sep = "\n" if (i + 1) % 6 == 0 else " "
        out.write("{0x%X,0x%X},%s" % (lo, hi, sep))
    out.write("\n};\n\n")
    out.write("inline constexpr LowerMapping kLowerMappings[] = {\n")
    for i, (a, b) in enumerate(pairs):
        sep = "\n" if (i + 1) % 6 == 0 else " "
        out.write("{0x%X,0x%X},%s" % (a, b, sep))
    out.write("\n};\n\n")
    out.write("}  // namespace hyperlex::detail\n")


if __name__ == "__main__":
    main()
