"""Synthetic demo cohort: 31 students, one counter assignment, and a
submission history matching the published aggregates (17 students
submitted at least once, 10 of them solved; solvers 1, 2 and 10 were
right on the first try; solver 7 needed seven attempts).

Everything is graded for real through the grader, so the recorded
scores, reports and waveforms are genuine artifacts.
"""

from __future__ import annotations

import json
import random
from datetime import datetime, timedelta, timezone
from zoneinfo import ZoneInfo

from .. import designs, grader
from ..netlist import serialize_circuit
from ..parts import builtin_registry
from ..vcd import export_vcd
from .store import Store, User

POSTED_AT = datetime(2026, 3, 2, 8, 0, tzinfo=timezone.utc)
DEADLINE = POSTED_AT + timedelta(days=7)
COLLECT_DAYS = 3  # submissions land within three days of posting

# attempts per solver (index 1..10); 1, 2 and 10 solve immediately, 7 needs seven tries
SOLVER_TRIES = {1: 1, 2: 1, 3: 2, 4: 3, 5: 2, 6: 4, 7: 7, 8: 3, 9: 2, 10: 1}
# failing-only students (indices 11..17) and their attempt counts
NONSOLVER_TRIES = {11: 2, 12: 1, 13: 3, 14: 1, 15: 2, 16: 1, 17: 2}

_HOUR_WEIGHTS = [1, 1, 0, 0, 0, 0, 1, 1, 2, 4, 5, 4, 3, 4, 5, 6, 6, 5, 4, 6, 8, 9, 7, 3]


def broken_counter_payload() -> str:
    """A netlist that does not validate (unknown part)."""
    doc = json.loads(serialize_circuit(designs.counter60()).decode("utf-8"))
    doc["instances"][0]["part"] = "74LS9999"
    return json.dumps(doc)


def seed_demo(store: Store, timezone_name: str = "UTC") -> dict:
    """Load the cohort; returns ids of the seeded objects."""
    registry = builtin_registry()
    rng = random.Random(20260302)

    instructor = store.create_user("instructor", "INSTRUCTOR", "pw-instructor")
    students = [
        store.create_user(f"student{i:02d}", "STUDENT", f"pw-student{i:02d}")
        for i in range(1, 32)
    ]

    counter_json = serialize_circuit(designs.counter60()).decode("utf-8")
    counter100_json = serialize_circuit(designs.counter100()).decode("utf-8")
    counter_vhdl = designs.counter60_vhdl_source()
    broken_json = broken_counter_payload()

    example_id = store.create_project(
        instructor, "0-59 counter (reference)", "EXAMPLE", "NETLIST",
        payload=counter_json, visible=True, at=POSTED_AT.isoformat(),
    )
    store.post_notice(
        instructor,
        "Counter homework posted",
        "Design a circuit that counts 0 to 59 in decimal and shows the digits "
        "on two seven-segment displays. Submit a drawing or VHDL.",
        at=POSTED_AT.isoformat(),
    )

    tps = designs.counter_test_points()
    assignment_id = store.create_assignment(
        instructor,
        "Two-digit 0-59 counter",
        example_id,
        "EITHER",
        grader.serialize_test_points(tps).decode("utf-8"),
        DEADLINE.isoformat(),
        roster=students,
        posted_at=POSTED_AT.isoformat(),
    )

    # a playground example so the demo home page has all four columns live
    playground_id = store.create_project(
        students[0], "nand scratchpad", "PLAYGROUND", "NETLIST",
        payload=serialize_circuit(designs.nand_demo()).decode("utf-8"),
        at=POSTED_AT.isoformat(),
    )

    reference = grader.load_design(
        grader.DesignPayload(repr="NETLIST", data=counter_json), registry
    )
    ref_samples = grader.reference_samples(reference, tps, registry)

    homework = {
        p["user_id"]: p["project_id"]
        for p in store.assignment_stats(assignment_id)["per_student"]
    }
    name_to_user = {u.name: u for u in students}

    def submission_times(count: int) -> list[str]:
        times = []
        for _ in range(count):
            day = rng.randrange(COLLECT_DAYS)
            hour = rng.choices(range(24), weights=_HOUR_WEIGHTS)[0]
            local = datetime(
                POSTED_AT.year, POSTED_AT.month, POSTED_AT.day,
                hour, rng.randrange(60), rng.randrange(60),
                tzinfo=ZoneInfo(timezone_name),
            ) + timedelta(days=day)
            times.append(local.astimezone(timezone.utc))
        times.sort()
        # same-second collisions would make ordering ambiguous
        for i in range(1, len(times)):
            if times[i] <= times[i - 1]:
                times[i] = times[i - 1] + timedelta(seconds=1)
        return [t.isoformat() for t in times]

    def record(student: User, payload: str, repr_: str, at: str) -> None:
        sub = grader.DesignPayload(repr=repr_, data=payload)
        try:
            design = grader.load_design(sub, registry)
        except grader.DesignError as exc:
            report = grader.GradeReport(
                per_test_point=tuple(
                    grader.TestPointResult(
                        id=tp.id, passed=False,
                        first_mismatch=grader.Mismatch("-", 0, "-", "did not compile"))
                    for tp in tps
                ),
                diagnostics=tuple(exc.diagnostics),
            )
            trace_hash = None
            log_hash = store.put_blob(("\n".join(exc.diagnostics) + "\n").encode("utf-8"))
        else:
            report = grader.grade_against_samples(design, ref_samples, tps, registry)
            trace, log = grader.simulate_design(design, tps[0].stimulus, registry)
            trace_hash = store.put_blob(export_vcd(trace))
            log_hash = store.put_blob(log.to_text().encode("utf-8"))
        store.record_submission(
            homework[student.id], student, repr_, payload,
            score=report.score, report_json=json.dumps(report.to_json()),
            trace_blob=trace_hash, log_blob=log_hash, at=at,
        )

    wrong_payloads = [("NETLIST", counter100_json), ("NETLIST", broken_json)]
    for index, tries in sorted(SOLVER_TRIES.items()):
        student = name_to_user[f"student{index:02d}"]
        correct = ("VHDL", counter_vhdl) if index in (5, 10) else ("NETLIST", counter_json)
        times = submission_times(tries)
        for attempt, at in enumerate(times, start=1):
            if attempt == tries:
                repr_, payload = correct
            else:
                repr_, payload = wrong_payloads[(index + attempt) % 2]
            record(student, payload, repr_, at)

    for index, tries in sorted(NONSOLVER_TRIES.items()):
        student = name_to_user[f"student{index:02d}"]
        for attempt, at in enumerate(submission_times(tries), start=1):
            repr_, payload = wrong_payloads[(index + attempt) % 2]
            record(student, payload, repr_, at)

    return {
        "instructor": instructor.id,
        "assignment_id": assignment_id,
        "example_project_id": example_id,
        "playground_project_id": playground_id,
        "students": [u.id for u in students],
    }
