"""A minimal, independent VCD reader used only to cross-check the
exporter.  Deliberately shares no code with logiclab.vcd."""

from __future__ import annotations


def read_vcd(text: str):
    """Returns (timescale, {signal_name: [(time, value_char), ...]})."""
    tokens = text.split()
    i = 0
    timescale = None
    codes = {}  # id code -> signal name
    while i < len(tokens):
        tok = tokens[i]
        if tok == "$timescale":
            parts = []
            i += 1
            while tokens[i] != "$end":
                parts.append(tokens[i])
                i += 1
            timescale = " ".join(parts)
        elif tok == "$var":
            # $var wire 1 <code> <name> $end
            code, name = tokens[i + 3], tokens[i + 4]
            codes[code] = name
            while tokens[i] != "$end":
                i += 1
        elif tok == "$enddefinitions":
            i += 1  # skip to $end
            break
        i += 1

    changes = {name: [] for name in codes.values()}
    now = 0
    for tok in tokens[i:]:
        if tok.startswith("#"):
            now = int(tok[1:])
        elif tok.startswith("$"):
            continue
        else:
            value, code = tok[0], tok[1:]
            changes[codes[code]].append((now, value.upper()))
    return timescale, changes
