#!/usr/bin/env python3
"""Regenerates core/src/unicode_data.cpp from the unicodedata module.

Run from the repository root:
    python3 tools/gen_unicode_tables.py > core/src/unicode_data.cpp
"""
import sys
import unicodedata

MAX_CP = 0x110000

SETS = {
    "letter": lambda c: c.startswith("L"),
    "number": lambda c: c.startswith("N"),
    "decimal_digit": lambda c: c == "Nd",
    "punctuation": lambda c: c.startswith("P"),
}


def ranges_for(pred):
    out = []
    run_start = None
    for cp in range(MAX_CP):
        cat = unicodedata.category(chr(cp))
        if pred(cat):
            if run_start is None:
                run_start = cp
        else:
            if run_start is not None:
                out.append((run_start, cp - 1))
                run_start = None
    if run_start is not None:
        out.append((run_start, MAX_CP - 1))
    return out


def emit(name, ranges, out):
    out.write(f"const CpRange k_{name}[] = {{\n")
    for i in range(0, len(ranges), 6):
        chunk = ", ".join(f"{{0x{lo:X}, 0x{hi:X}}}" for lo, hi in ranges[i : i + 6])
        out.write(f"    {chunk},\n")
    out.write("};\n")
    out.write(f"const std::size_t k_{name}_size = {len(ranges)};\n\n")


def main():
    out = sys.stdout
    out.write("// Generated by tools/gen_unicode_tables.py from Unicode %s data.\n"
              % unicodedata.unidata_version)
    out.write("// Do not edit by hand.\n\n")
    out.write('#include "unicode_data.hpp"\n\n')
    out.write("namespace entity_guard::uni::detail {\n\n")
    for name, pred in SETS.items():
        emit(name, ranges_for(pred), out)
    out.write("}  // namespace entity_guard::uni::detail\n")


if __name__ == "__main__":
    main()
