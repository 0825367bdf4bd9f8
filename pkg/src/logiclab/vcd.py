"""Value Change Dump output for traces.

Plain four-state VCD: one scalar wire per traced signal, timescale
1 ns.  Output is deterministic down to the byte for a given trace so
golden files and cross-run comparisons are meaningful.
"""

from __future__ import annotations

from .engine import Trace

_ID_FIRST, _ID_LAST = 33, 126  # printable ASCII per the VCD identifier rules


def _code(index: int) -> str:
    span = _ID_LAST - _ID_FIRST + 1
    out = []
    index += 1
    while index > 0:
        index, rem = divmod(index - 1, span)
        out.append(chr(_ID_FIRST + rem))
    return "".join(reversed(out))


def _ref_name(label: str) -> str:
    cleaned = "".join("_" if ch.isspace() else ch for ch in label)
    return cleaned or "_"


def export_vcd(trace: Trace) -> bytes:
    """Render the trace as VCD text (UTF-8 bytes)."""
    labels = trace.labels()
    codes = {label: _code(i) for i, label in enumerate(labels)}

    lines = [
        "$version logiclab trace export $end",
        "$timescale 1 ns $end",
        "$scope module top $end",
    ]
    for label in labels:
        lines.append(f"$var wire 1 {codes[label]} {_ref_name(label)} $end")
    lines.append("$upscope $end")
    lines.append("$enddefinitions $end")

    by_time: dict[int, list[str]] = {}
    initial = []
    for label in labels:
        entries = trace.changes[label]
        initial.append(f"{str(entries[0][1]).lower()}{codes[label]}")
        for t, v in entries[1:]:
            by_time.setdefault(t, []).append(f"{str(v).lower()}{codes[label]}")

    lines.append("#0")
    lines.append("$dumpvars")
    lines.extend(initial)
    lines.append("$end")
    for t in sorted(by_time):
        lines.append(f"#{t}")
        lines.extend(by_time[t])
    return ("\n".join(lines) + "\n").encode("utf-8")
