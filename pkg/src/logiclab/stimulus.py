"""Input waveform definitions driving a simulation run.

A signal is either a constant, a parametric clock, or a hand-drawn
pattern of edges; all three expand to the same change-list shape the
simulator and the trace format use.  Clocks start low: with phase 0 and
a 20 ms period the first rising edge lands at 10 ms, which is what the
drawn waveform in the signal editor looks like.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .logic import ONE, ZERO, LogicValue

FORMAT_VERSION = 1

Number = Union[int, float, Fraction]


class StimulusError(ValueError):
    """Bad stimulus definition; message carries the offending field path."""


@dataclass(frozen=True)
class SignalSpec:
    kind: str  # CONSTANT | CLOCK | PATTERN
    value: LogicValue = ZERO
    freq_hz: Number = 1
    duty: float = 0.5
    phase_ns: int = 0
    edges: tuple[tuple[int, LogicValue], ...] = ()

    def __post_init__(self):
        if self.kind == "CONSTANT":
            return
        if self.kind == "CLOCK":
            if not self.freq_hz or self.freq_hz <= 0:
                raise StimulusError("freq_hz: must be positive")
            if not (0 < self.duty < 1):
                raise StimulusError("duty: must lie strictly between 0 and 1")
            if self.phase_ns < 0:
                raise StimulusError("phase_ns: must be >= 0")
            if self.period_ns < 2:
                raise StimulusError("freq_hz: period rounds below 2 ns")
            if self.high_ns < 1:
                raise StimulusError("duty: high time rounds below 1 ns")
            return
        if self.kind == "PATTERN":
            if not self.edges or self.edges[0][0] != 0:
                raise StimulusError("edges: first entry must be at time 0")
            times = [t for t, _ in self.edges]
            if any(b <= a for a, b in zip(times, times[1:])):
                raise StimulusError("edges: times must strictly increase")
            return
        raise StimulusError(f"kind: unknown signal kind {self.kind!r}")

    @property
    def period_ns(self) -> int:
        return round(Fraction(10**9) / Fraction(self.freq_hz))

    @property
    def high_ns(self) -> int:
        period = self.period_ns
        return min(max(round(self.duty * period), 1), period - 1)


def constant(value: LogicValue) -> SignalSpec:
    return SignalSpec(kind="CONSTANT", value=value)


def clock(freq_hz: Number, duty: float = 0.5, phase_ns: int = 0) -> SignalSpec:
    return SignalSpec(kind="CLOCK", freq_hz=freq_hz, duty=duty, phase_ns=phase_ns)


def pattern(edges) -> SignalSpec:
    return SignalSpec(kind="PATTERN", edges=tuple((int(t), v) for t, v in edges))


@dataclass(frozen=True)
class StimulusSet:
    assignments: dict[str, SignalSpec] = field(default_factory=dict)
    horizon_ns: int = 1

    def __post_init__(self):
        if self.horizon_ns < 1:
            raise StimulusError("horizon_ns: must be >= 1")


def expand(spec: SignalSpec, horizon_ns: int) -> list[tuple[int, LogicValue]]:
    """The full change list on [0, horizon): strictly increasing times,
    consecutive values distinct, first entry at time 0."""
    if horizon_ns < 1:
        raise StimulusError("horizon_ns: must be >= 1")
    if spec.kind == "CONSTANT":
        return [(0, spec.value)]
    if spec.kind == "PATTERN":
        changes = []
        for t, v in spec.edges:
            if t >= horizon_ns:
                break
            if changes and changes[-1][1] is v:
                continue
            changes.append((t, v))
        return changes
    # CLOCK: low for the remainder of each period, high for duty * period
    period, high = spec.period_ns, spec.high_ns
    low = period - high
    changes = [(0, ZERO)]
    k = 0
    while True:
        rise = spec.phase_ns + k * period + low
        if rise >= horizon_ns:
            break
        changes.append((rise, ONE))
        fall = spec.phase_ns + (k + 1) * period
        if fall >= horizon_ns:
            break
        changes.append((fall, ZERO))
        k += 1
    return changes


def rising_edges(spec: SignalSpec, horizon_ns: int) -> list[int]:
    return [t for t, v in expand(spec, horizon_ns) if v is ONE]


# ---------------------------------------------------------------------------
# JSON stimulus format


def serialize_stimulus(s: StimulusSet) -> bytes:
    assignments = {}
    for name, spec in s.assignments.items():
        if spec.kind == "CONSTANT":
            assignments[name] = {"kind": "CONSTANT", "value": str(spec.value)}
        elif spec.kind == "CLOCK":
            freq = spec.freq_hz
            if isinstance(freq, Fraction):
                freq = int(freq) if freq.denominator == 1 else float(freq)
            assignments[name] = {
                "kind": "CLOCK",
                "freq_hz": freq,
                "duty": spec.duty,
                "phase_ns": spec.phase_ns,
            }
        else:
            assignments[name] = {
                "kind": "PATTERN",
                "edges": [[t, str(v)] for t, v in spec.edges],
            }
    doc = {
        "format_version": FORMAT_VERSION,
        "horizon_ns": s.horizon_ns,
        "assignments": assignments,
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def deserialize_stimulus(data: bytes) -> StimulusSet:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise StimulusError(f"malformed JSON at byte {exc.pos}: {exc.msg}") from None
    except UnicodeDecodeError as exc:
        raise StimulusError(f"malformed JSON at byte {exc.start}: not valid UTF-8") from None
    if not isinstance(doc, dict):
        raise StimulusError("stimulus must be a JSON object")
    unknown = sorted(set(doc) - {"format_version", "horizon_ns", "assignments"})
    if unknown:
        raise StimulusError(f"unknown field {unknown[0]!r}")
    if doc.get("format_version") != FORMAT_VERSION:
        raise StimulusError(f"unsupported format_version {doc.get('format_version')!r}")
    horizon = doc.get("horizon_ns")
    if not isinstance(horizon, int) or horizon < 1:
        raise StimulusError("horizon_ns: must be a positive integer")
    raw = doc.get("assignments")
    if not isinstance(raw, dict):
        raise StimulusError("assignments: expected object")

    assignments = {}
    for name, body in raw.items():
        where = f"assignments.{name}"
        if not isinstance(body, dict):
            raise StimulusError(f"{where}: expected object")
        kind = body.get("kind")
        try:
            if kind == "CONSTANT":
                _allow(body, {"kind", "value"}, where)
                assignments[name] = constant(LogicValue.from_str(_str(body, "value", where)))
            elif kind == "CLOCK":
                _allow(body, {"kind", "freq_hz", "duty", "phase_ns"}, where)
                freq = body.get("freq_hz")
                if isinstance(freq, bool) or not isinstance(freq, (int, float)):
                    raise StimulusError(f"{where}.freq_hz: expected number")
                assignments[name] = clock(
                    freq, float(body.get("duty", 0.5)), int(body.get("phase_ns", 0))
                )
            elif kind == "PATTERN":
                _allow(body, {"kind", "edges"}, where)
                edges = body.get("edges")
                if not isinstance(edges, list):
                    raise StimulusError(f"{where}.edges: expected array")
                parsed = []
                for entry in edges:
                    if not isinstance(entry, list) or len(entry) != 2:
                        raise StimulusError(f"{where}.edges: expected [time, value] pairs")
                    parsed.append((int(entry[0]), LogicValue.from_str(str(entry[1]))))
                assignments[name] = pattern(parsed)
            else:
                raise StimulusError(f"{where}.kind: unknown kind {kind!r}")
        except StimulusError as exc:
            msg = str(exc)
            raise StimulusError(msg if msg.startswith(where) else f"{where}.{msg}") from None
        except ValueError as exc:
            raise StimulusError(f"{where}: {exc}") from None
    return StimulusSet(assignments=assignments, horizon_ns=horizon)


def _allow(body: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(body) - allowed)
    if unknown:
        raise StimulusError(f"{where}: unknown field {unknown[0]!r}")


def _str(body: dict, key: str, where: str) -> str:
    value = body.get(key)
    if not isinstance(value, str):
        raise StimulusError(f"{where}.{key}: expected string")
    return value
