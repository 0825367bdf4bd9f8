"""HTTP/JSON API over the store: login, the four home columns, project
CRUD, submissions with grading, statistics, notices and ad-hoc
simulation.

All error responses carry {"code", "message"}.  Authentication is a
bearer token obtained from POST /api/login.
"""

from __future__ import annotations

import json
from typing import Optional

from fastapi import Depends, FastAPI, Header, HTTPException, Response
from pydantic import BaseModel

from .. import grader
from ..engine import Trace
from ..kernel import ALL_NETS, PORTS
from ..parts import builtin_registry
from ..stimulus import StimulusError, StimulusSet, deserialize_stimulus
from ..vcd import export_vcd
from .config import ServiceConfig
from .store import NotFound, PermissionError_, Store, User


def _fail(status: int, code: str, message: str):
    raise HTTPException(status_code=status, detail={"code": code, "message": message})


class LoginBody(BaseModel):
    name: str
    password: str


class ProjectBody(BaseModel):
    name: str
    repr: str = "NETLIST"
    column: str = "PLAYGROUND"
    payload: str = ""


class ProjectUpdate(BaseModel):
    payload: str
    name: Optional[str] = None


class SubmitBody(BaseModel):
    payload: Optional[str] = None  # defaults to the stored project payload
    repr: Optional[str] = None
    top: Optional[str] = None
    stimulus: Optional[dict] = None  # playground runs bring their own stimulus


class AssignmentBody(BaseModel):
    title: str
    reference_project_id: str
    required_repr: str = "EITHER"
    test_points: dict
    deadline: str
    roster: Optional[list[str]] = None  # user ids; default: every student


class NoticeBody(BaseModel):
    title: str
    body: str = ""


class VisibilityBody(BaseModel):
    visible: bool


class SimulateBody(BaseModel):
    repr: str
    payload: str
    top: Optional[str] = None
    stimulus: dict
    watch: str = "PORTS"  # PORTS | ALL_NETS


def trace_to_json(trace: Trace) -> dict:
    return {
        "signals": trace.labels(),
        "horizon_ns": trace.horizon_ns,
        "changes": {
            label: [[t, str(v)] for t, v in trace.changes[label]] for label in trace.labels()
        },
    }


def create_app(store: Store, config: ServiceConfig) -> FastAPI:
    app = FastAPI(title="logiclab service")
    registry = builtin_registry()
    reference_cache: dict[str, dict] = {}  # assignment id -> precomputed samples

    def auth(authorization: str = Header(default="")) -> User:
        if not authorization.startswith("Bearer "):
            _fail(401, "UNAUTHENTICATED", "missing bearer token")
        user = store.user_by_token(authorization.removeprefix("Bearer ").strip())
        if user is None:
            _fail(401, "UNAUTHENTICATED", "bad token")
        return user

    def instructor(user: User = Depends(auth)) -> User:
        if user.role != "INSTRUCTOR":
            _fail(403, "FORBIDDEN", "instructor role required")
        return user

    def parse_stimulus(doc: dict) -> StimulusSet:
        try:
            stim = deserialize_stimulus(json.dumps(doc).encode("utf-8"))
        except StimulusError as exc:
            _fail(400, "BAD_STIMULUS", str(exc))
        if stim.horizon_ns > config.max_horizon_ns:
            _fail(400, "HORIZON_TOO_LONG",
                  f"horizon {stim.horizon_ns} ns exceeds the limit {config.max_horizon_ns} ns")
        return stim

    def load_payload(repr_: str, payload: str, top: Optional[str]):
        try:
            return grader.load_design(grader.DesignPayload(repr=repr_, data=payload, top=top), registry)
        except grader.DesignError as exc:
            raise exc

    # -- auth / home ---------------------------------------------------------

    @app.post("/api/login")
    def login(body: LoginBody):
        user = store.login(body.name, body.password)
        if user is None:
            _fail(401, "BAD_CREDENTIALS", "unknown user or wrong password")
        return {"token": user.token, "user_id": user.id, "name": user.name, "role": user.role}

    @app.get("/api/home")
    def home(user: User = Depends(auth)):
        return store.home_columns(user)

    # -- projects -------------------------------------------------------------

    @app.post("/api/projects")
    def create_project(body: ProjectBody, user: User = Depends(auth)):
        try:
            project_id = store.create_project(
                user, body.name, body.column, body.repr, payload=body.payload
            )
        except (PermissionError_, ValueError) as exc:
            _fail(403 if isinstance(exc, PermissionError_) else 400, "REJECTED", str(exc))
        return {"id": project_id}

    def _readable(user: User, proj: dict) -> bool:
        if user.role == "INSTRUCTOR" or proj["owner_id"] == user.id:
            return True
        return proj["col"] == "EXAMPLE" and bool(proj["visible"])

    @app.get("/api/projects/{project_id}")
    def get_project(project_id: str, user: User = Depends(auth)):
        try:
            proj = store.project(project_id)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        if not _readable(user, proj):
            _fail(403, "FORBIDDEN", "no access to this project")
        proj["visible"] = bool(proj["visible"])
        return proj

    @app.put("/api/projects/{project_id}")
    def put_project(project_id: str, body: ProjectUpdate, user: User = Depends(auth)):
        try:
            store.update_project(user, project_id, body.payload, body.name)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        except PermissionError_ as exc:
            _fail(403, "FORBIDDEN", str(exc))
        return {"ok": True}

    # -- submissions -------------------------------------------------------------

    def _submission_meta(sub: dict) -> dict:
        return {
            "id": sub["id"],
            "project_id": sub["project_id"],
            "submitter": sub["submitter_id"],
            "submitted_at": sub["submitted_at"],
            "repr": sub["repr"],
            "score": sub["score"],
            "report": json.loads(sub["report"]) if sub["report"] else None,
            "trace": f"/api/submissions/{sub['id']}/trace.vcd" if sub["trace_blob"] else None,
            "log": f"/api/submissions/{sub['id']}/log",
        }

    @app.post("/api/projects/{project_id}/submissions")
    def submit(project_id: str, body: SubmitBody, user: User = Depends(auth)):
        try:
            proj = store.project(project_id)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        if proj["owner_id"] != user.id:
            _fail(403, "FORBIDDEN", "not your project")
        payload = body.payload if body.payload is not None else proj["payload"]
        repr_ = body.repr or (proj["repr"] if proj["repr"] != "EITHER" else "NETLIST")

        if proj["col"] == "HOMEWORK":
            sub = _grade_and_record(proj, user, repr_, payload, body.top, at=None)
        elif proj["col"] == "PLAYGROUND":
            if body.stimulus is None:
                _fail(400, "NO_STIMULUS", "playground submissions need a stimulus")
            stim = parse_stimulus(body.stimulus)
            sub = _simulate_and_record(proj, user, repr_, payload, body.top, stim)
        else:
            _fail(400, "REJECTED", "only homework and playground projects accept submissions")
        return _submission_meta(sub)

    def _grade_and_record(proj, user, repr_, payload, top, at):
        assignment = store.assignment(proj["assignment_id"])
        if assignment["required_repr"] != "EITHER" and repr_ != assignment["required_repr"]:
            _fail(400, "WRONG_REPR",
                  f"this homework requires a {assignment['required_repr']} design")
        tps = grader.deserialize_test_points(assignment["test_points"].encode("utf-8"))
        if assignment["id"] not in reference_cache:
            ref_proj = store.project(assignment["reference_project_id"])
            reference = grader.load_design(
                grader.DesignPayload(repr=ref_proj["repr"], data=ref_proj["payload"]), registry
            )
            reference_cache[assignment["id"]] = grader.reference_samples(
                reference, tps, registry, config.max_deltas_per_instant
            )

        trace_hash = None
        try:
            design = load_payload(repr_, payload, top)
        except grader.DesignError as exc:
            report = grader.GradeReport(
                per_test_point=tuple(
                    grader.TestPointResult(id=tp.id, passed=False,
                                           first_mismatch=grader.Mismatch("-", 0, "-", "did not compile"))
                    for tp in tps
                ),
                diagnostics=tuple(exc.diagnostics),
            )
            log_hash = store.put_blob(("\n".join(exc.diagnostics) + "\n").encode("utf-8"))
        else:
            report = grader.grade_against_samples(
                design, reference_cache[assignment["id"]], tps, registry,
                config.max_deltas_per_instant,
            )
            trace, log = grader.simulate_design(
                design, tps[0].stimulus, registry,
                max_deltas=config.max_deltas_per_instant,
            )
            trace_hash = store.put_blob(export_vcd(trace))
            log_hash = store.put_blob(log.to_text().encode("utf-8"))
        return store.record_submission(
            proj["id"], user, repr_, payload,
            score=report.score,
            report_json=json.dumps(report.to_json()),
            trace_blob=trace_hash, log_blob=log_hash, at=at,
        )

    def _simulate_and_record(proj, user, repr_, payload, top, stim: StimulusSet):
        trace_hash = None
        try:
            design = load_payload(repr_, payload, top)
        except grader.DesignError as exc:
            log_hash = store.put_blob(("\n".join(exc.diagnostics) + "\n").encode("utf-8"))
        else:
            trace, log = grader.simulate_design(
                design, stim, registry, max_deltas=config.max_deltas_per_instant
            )
            trace_hash = store.put_blob(export_vcd(trace))
            log_hash = store.put_blob(log.to_text().encode("utf-8"))
        return store.record_submission(
            proj["id"], user, repr_, payload,
            score=None, report_json=None,
            trace_blob=trace_hash, log_blob=log_hash,
        )

    @app.get("/api/projects/{project_id}/submissions")
    def history(project_id: str, user: User = Depends(auth)):
        try:
            proj = store.project(project_id)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        if proj["owner_id"] != user.id and user.role != "INSTRUCTOR":
            _fail(403, "FORBIDDEN", "no access to this project")
        return [_submission_meta(s) for s in store.submissions_for_project(project_id)]

    def _fetch_submission(submission_id: str, user: User) -> dict:
        try:
            sub = store.submission(submission_id)
            proj = store.project(sub["project_id"])
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        if proj["owner_id"] != user.id and user.role != "INSTRUCTOR":
            _fail(403, "FORBIDDEN", "no access to this submission")
        return sub

    @app.get("/api/submissions/{submission_id}/trace.vcd")
    def submission_trace(submission_id: str, user: User = Depends(auth)):
        sub = _fetch_submission(submission_id, user)
        if not sub["trace_blob"]:
            _fail(404, "NO_TRACE", "this submission has no waveform (did it compile?)")
        return Response(content=store.get_blob(sub["trace_blob"]), media_type="text/plain")

    @app.get("/api/submissions/{submission_id}/log")
    def submission_log(submission_id: str, user: User = Depends(auth)):
        sub = _fetch_submission(submission_id, user)
        body = store.get_blob(sub["log_blob"]) if sub["log_blob"] else b""
        return Response(content=body, media_type="text/plain")

    # -- assignments / stats ------------------------------------------------------

    @app.post("/api/assignments")
    def post_assignment(body: AssignmentBody, user: User = Depends(instructor)):
        tps_bytes = json.dumps(body.test_points).encode("utf-8")
        try:
            tps = grader.deserialize_test_points(tps_bytes)
        except ValueError as exc:
            _fail(400, "BAD_TEST_POINTS", str(exc))
        try:
            ref_proj = store.project(body.reference_project_id)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        # the reference must grade cleanly against itself before fan-out
        try:
            reference = grader.load_design(
                grader.DesignPayload(repr=ref_proj["repr"], data=ref_proj["payload"]), registry
            )
            samples = grader.reference_samples(
                reference, tps, registry, config.max_deltas_per_instant
            )
        except (grader.DesignError, grader.GradingConfigError) as exc:
            _fail(400, "BAD_REFERENCE", str(exc))

        roster = store.students()
        if body.roster is not None:
            wanted = set(body.roster)
            roster = [u for u in roster if u.id in wanted]
        try:
            assignment_id = store.create_assignment(
                user, body.title, body.reference_project_id, body.required_repr,
                tps_bytes.decode("utf-8"), body.deadline, roster,
            )
        except (PermissionError_, ValueError) as exc:
            _fail(400, "REJECTED", str(exc))
        reference_cache[assignment_id] = samples
        return {"id": assignment_id, "homework_projects": len(roster)}

    @app.get("/api/assignments/{assignment_id}/stats")
    def stats(assignment_id: str, user: User = Depends(instructor)):
        try:
            return store.assignment_stats(assignment_id, config.timezone)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))

    # -- notices / visibility ------------------------------------------------------

    @app.post("/api/notices")
    def post_notice(body: NoticeBody, user: User = Depends(instructor)):
        return {"id": store.post_notice(user, body.title, body.body)}

    @app.post("/api/examples/{project_id}/visibility")
    def set_visibility(project_id: str, body: VisibilityBody, user: User = Depends(instructor)):
        try:
            store.set_example_visibility(user, project_id, body.visible)
        except NotFound as exc:
            _fail(404, "NOT_FOUND", str(exc))
        except ValueError as exc:
            _fail(400, "REJECTED", str(exc))
        return {"ok": True}

    # -- ad-hoc simulation ----------------------------------------------------------

    @app.post("/api/simulate")
    def simulate_adhoc(body: SimulateBody, user: User = Depends(auth)):
        stim = parse_stimulus(body.stimulus)
        try:
            design = load_payload(body.repr, body.payload, body.top)
        except grader.DesignError as exc:
            return {"ok": False, "diagnostics": exc.diagnostics}
        watch = ALL_NETS if body.watch == "ALL_NETS" else PORTS
        trace, log = grader.simulate_design(
            design, stim, registry,
            max_deltas=config.max_deltas_per_instant, watch=watch,
        )
        return {
            "ok": True,
            "trace": trace_to_json(trace),
            "log": log.to_text().splitlines(),
            "fault": log.fault,
        }

    @app.exception_handler(grader.DesignError)
    def design_error_handler(request, exc: grader.DesignError):
        from fastapi.responses import JSONResponse

        return JSONResponse(
            status_code=400,
            content={"code": "BAD_DESIGN", "message": "; ".join(exc.diagnostics)},
        )

    @app.exception_handler(grader.GradingConfigError)
    def grading_config_handler(request, exc: grader.GradingConfigError):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=500, content={"code": "BAD_REFERENCE", "message": str(exc)})

    @app.exception_handler(HTTPException)
    def http_error_handler(request, exc: HTTPException):
        from fastapi.responses import JSONResponse

        detail = exc.detail
        if not isinstance(detail, dict):
            detail = {"code": "ERROR", "message": str(detail)}
        return JSONResponse(status_code=exc.status_code, content=detail)

    if config.static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=config.static_dir, html=True), name="ui")

    return app
