"""Test-point autograding: run submission and reference under the same
stimulus and compare sampled waveforms.

Grading is representation-agnostic: a design under grade is either a
netlist circuit or an elaborated VHDL design, and both are sampled by
top-level port name.  Comparison is by settled samples (not raw edge
lists) so two correct implementations with different gate-level timing
agree; an X in the reference acts as a don't-care wildcard, while an X
in the submission against a known reference value is a mismatch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .engine import SimLog, Trace, sample
from .kernel import PORTS, SimConfig, ValidationFailed, simulate
from .logic import LogicValue
from .netlist import Circuit, deserialize_circuit
from .parts import ComponentRegistry
from .stimulus import StimulusSet, deserialize_stimulus, expand, serialize_stimulus
from .vhdl import ElaboratedDesign, parse_vhdl
from .vhdl.elaborate import elaborate, simulate_elaborated
from .vhdl.syntax import VhdlUnit

FORMAT_VERSION = 1

Design = Union[Circuit, ElaboratedDesign]


class GradingConfigError(ValueError):
    """The instructor side is broken (reference fails to simulate)."""


@dataclass(frozen=True)
class TestPoint:
    __test__ = False  # keep pytest from collecting this as a test class

    id: str
    stimulus: StimulusSet
    observed: tuple[str, ...]
    sample_times_ns: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "observed", tuple(self.observed))
        object.__setattr__(self, "sample_times_ns", tuple(self.sample_times_ns))
        if not self.observed:
            raise ValueError(f"test point {self.id}: observed list is empty")
        times = self.sample_times_ns
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError(f"test point {self.id}: sample times must strictly increase")
        if times and times[-1] > self.stimulus.horizon_ns:
            raise ValueError(f"test point {self.id}: sample time beyond the horizon")


@dataclass(frozen=True)
class Mismatch:
    signal: str
    time_ns: int
    expected: str
    actual: str


@dataclass(frozen=True)
class TestPointResult:
    id: str
    passed: bool
    first_mismatch: Optional[Mismatch] = None


@dataclass(frozen=True)
class GradeReport:
    per_test_point: tuple[TestPointResult, ...]
    diagnostics: tuple[str, ...] = ()

    @property
    def passed(self) -> int:
        return sum(1 for r in self.per_test_point if r.passed)

    @property
    def total(self) -> int:
        return len(self.per_test_point)

    @property
    def score(self) -> int:
        if not self.per_test_point:
            return 0
        # round half up so 3/4 of the classic fixture lands on exactly 75
        return (200 * self.passed + self.total) // (2 * self.total)

    def to_json(self) -> dict:
        return {
            "score": self.score,
            "passed": self.passed,
            "total": self.total,
            "test_points": [
                {
                    "id": r.id,
                    "verdict": "PASS" if r.passed else "FAIL",
                    "first_mismatch": None
                    if r.first_mismatch is None
                    else {
                        "signal": r.first_mismatch.signal,
                        "time_ns": r.first_mismatch.time_ns,
                        "expected": r.first_mismatch.expected,
                        "actual": r.first_mismatch.actual,
                    },
                }
                for r in self.per_test_point
            ],
            "diagnostics": list(self.diagnostics),
        }


def simulate_design(
    design: Design,
    stim: StimulusSet,
    registry: ComponentRegistry,
    horizon_ns: Optional[int] = None,
    max_deltas: int = 1000,
    watch=PORTS,
) -> tuple[Trace, SimLog]:
    """One entry point for both design representations."""
    cfg = SimConfig(
        horizon_ns=horizon_ns or stim.horizon_ns,
        max_deltas_per_instant=max_deltas,
        watch=watch,
    )
    if isinstance(design, Circuit):
        return simulate(design, stim, cfg, registry)
    return simulate_elaborated(design, stim, cfg)


def sample_design(
    design: Design, tp: TestPoint, registry: ComponentRegistry, max_deltas: int = 1000
) -> dict[tuple[str, int], LogicValue]:
    """Sampled values of every observed signal at every sample time."""
    trace, log = simulate_design(design, tp.stimulus, registry, max_deltas=max_deltas)
    if log.fault:
        raise GradingConfigError(f"test point {tp.id}: simulation fault {log.fault}")
    out = {}
    for name in tp.observed:
        if name not in trace.changes:
            raise KeyError(f"design does not expose output {name!r}")
        for t in tp.sample_times_ns:
            out[(name, t)] = sample(trace, name, t)
    return out


def grade_against_samples(
    submission: Design,
    reference_samples: dict[str, dict[tuple[str, int], LogicValue]],
    tps: list[TestPoint],
    registry: ComponentRegistry,
    max_deltas: int = 1000,
) -> GradeReport:
    """Grade with precomputed reference samples (cached by the service)."""
    results = []
    for tp in tps:
        expected = reference_samples[tp.id]
        try:
            actual = sample_design(submission, tp, registry, max_deltas=max_deltas)
        except (ValidationFailed, KeyError, GradingConfigError) as exc:
            results.append(
                TestPointResult(id=tp.id, passed=False,
                                first_mismatch=Mismatch("-", 0, "-", _describe(exc)))
            )
            continue
        mismatch = None
        for name in tp.observed:
            if mismatch:
                break
            for t in tp.sample_times_ns:
                want = expected[(name, t)]
                got = actual[(name, t)]
                # reference X is a wildcard; submission X against a known value is wrong
                if want.is_known and got is not want:
                    mismatch = Mismatch(signal=name, time_ns=t, expected=str(want), actual=str(got))
                    break
        results.append(TestPointResult(id=tp.id, passed=mismatch is None, first_mismatch=mismatch))
    return GradeReport(per_test_point=tuple(results))


def reference_samples(
    reference: Design, tps: list[TestPoint], registry: ComponentRegistry, max_deltas: int = 1000
) -> dict[str, dict[tuple[str, int], LogicValue]]:
    try:
        return {tp.id: sample_design(reference, tp, registry, max_deltas) for tp in tps}
    except (ValidationFailed, KeyError, GradingConfigError) as exc:
        raise GradingConfigError(f"reference design does not grade cleanly: {_describe(exc)}") from exc


def grade(
    submission: Union[Design, "DesignPayload"],
    reference: Design,
    tps: list[TestPoint],
    registry: ComponentRegistry,
    max_deltas: int = 1000,
) -> GradeReport:
    """Score a submission against the reference over all test points.

    A submission that fails to parse, validate or elaborate scores FAIL
    on every test point, with the diagnostics attached to the report.
    The reference failing instead raises :class:`GradingConfigError`.
    """
    expected = reference_samples(reference, tps, registry, max_deltas)
    if isinstance(submission, DesignPayload):
        try:
            submission = load_design(submission, registry)
        except DesignError as exc:
            return GradeReport(
                per_test_point=tuple(
                    TestPointResult(id=tp.id, passed=False,
                                    first_mismatch=Mismatch("-", 0, "-", "did not compile"))
                    for tp in tps
                ),
                diagnostics=tuple(exc.diagnostics),
            )
    return grade_against_samples(submission, expected, tps, registry, max_deltas)


def default_sample_times(stim: StimulusSet, settle_ns: int) -> list[int]:
    """One sample just before each input change (past the settle margin)
    plus one just before the horizon."""
    if settle_ns < 0:
        raise ValueError("settle_ns must be >= 0")
    times = set()
    for spec in stim.assignments.values():
        for t, _ in expand(spec, stim.horizon_ns):
            if t > settle_ns:
                times.add(t - 1)
    times.add(stim.horizon_ns - 1)
    return sorted(times)


def _describe(exc: Exception) -> str:
    if isinstance(exc, ValidationFailed):
        first = exc.report.errors[0]
        return f"validation failed: {first.code} at {first.location}"
    return str(exc)


# ---------------------------------------------------------------------------
# design payloads (what students actually submit)


class DesignError(ValueError):
    def __init__(self, diagnostics: list[str]):
        super().__init__("design does not compile")
        self.diagnostics = list(diagnostics)


@dataclass(frozen=True)
class DesignPayload:
    repr: str  # NETLIST | VHDL
    data: str  # netlist JSON text or VHDL source
    top: Optional[str] = None  # VHDL top entity; default: sole/last entity


def load_design(payload: DesignPayload, registry: ComponentRegistry) -> Design:
    """Turn a submitted payload into a gradable design or raise
    :class:`DesignError` carrying user-facing diagnostics."""
    if payload.repr == "NETLIST":
        from .netlist import NetlistError, validate_circuit

        try:
            circuit = deserialize_circuit(payload.data.encode("utf-8"))
        except NetlistError as exc:
            raise DesignError([str(exc)]) from None
        report = validate_circuit(circuit, registry)
        if not report.ok:
            raise DesignError(
                [f"{i.code} at {i.location}: {i.message}" for i in report.errors]
            )
        return circuit
    if payload.repr == "VHDL":
        unit = VhdlUnit(source_name="submission.vhd", text=payload.data)
        ast, diags = parse_vhdl([unit])
        errors = [str(d) for d in diags if d.severity == "ERROR"]
        if errors:
            raise DesignError(errors)
        top = payload.top
        if top is None:
            entities = [u.name for u in ast.units if hasattr(u, "ports")]
            if not entities:
                raise DesignError(["no entity found in submission"])
            top = entities[-1]
        design, ediags = elaborate(ast, top, registry)
        errors = [str(d) for d in ediags if d.severity == "ERROR"]
        if design is None or errors:
            raise DesignError(errors or ["design did not elaborate"])
        return design
    raise DesignError([f"unknown design representation {payload.repr!r}"])


# ---------------------------------------------------------------------------
# test point files


def serialize_test_points(tps: list[TestPoint]) -> bytes:
    doc = {
        "format_version": FORMAT_VERSION,
        "test_points": [
            {
                "id": tp.id,
                "stimulus": json.loads(serialize_stimulus(tp.stimulus).decode("utf-8")),
                "observed": list(tp.observed),
                "sample_times_ns": list(tp.sample_times_ns),
            }
            for tp in tps
        ],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def deserialize_test_points(data: bytes) -> list[TestPoint]:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON at byte {exc.pos}: {exc.msg}") from None
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValueError(f"unsupported format_version {doc.get('format_version')!r}")
    tps = []
    for raw in doc.get("test_points", []):
        stim = deserialize_stimulus(json.dumps(raw["stimulus"]).encode("utf-8"))
        tps.append(
            TestPoint(
                id=str(raw["id"]),
                stimulus=stim,
                observed=tuple(raw["observed"]),
                sample_times_ns=tuple(int(t) for t in raw["sample_times_ns"]),
            )
        )
    return tps
