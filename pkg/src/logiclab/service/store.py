"""Durable store: SQLite for rows, content-addressed files for artifacts.

Every write happens inside one SQLite transaction, so the assignment
fan-out (assignment row plus one homework project per roster student)
is all-or-nothing.  Statistics are always recomputed from the
submissions table; nothing derived is stored.
"""

from __future__ import annotations

import hashlib
import secrets
import sqlite3
from contextlib import contextmanager
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional
from zoneinfo import ZoneInfo

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users (
    id TEXT PRIMARY KEY,
    name TEXT UNIQUE NOT NULL,
    role TEXT NOT NULL CHECK (role IN ('STUDENT', 'INSTRUCTOR')),
    password TEXT NOT NULL,
    token TEXT UNIQUE NOT NULL
);
CREATE TABLE IF NOT EXISTS notices (
    id TEXT PRIMARY KEY,
    author_id TEXT NOT NULL REFERENCES users(id),
    title TEXT NOT NULL,
    body TEXT NOT NULL,
    posted_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS projects (
    id TEXT PRIMARY KEY,
    owner_id TEXT NOT NULL REFERENCES users(id),
    name TEXT NOT NULL,
    col TEXT NOT NULL CHECK (col IN ('ATTENTION', 'HOMEWORK', 'PLAYGROUND', 'EXAMPLE')),
    repr TEXT NOT NULL CHECK (repr IN ('NETLIST', 'VHDL', 'EITHER')),
    payload TEXT NOT NULL DEFAULT '',
    assignment_id TEXT,
    visible INTEGER NOT NULL DEFAULT 0,
    created_at TEXT NOT NULL,
    updated_at TEXT NOT NULL
);
CREATE TABLE IF NOT EXISTS assignments (
    id TEXT PRIMARY KEY,
    title TEXT NOT NULL,
    reference_project_id TEXT NOT NULL REFERENCES projects(id),
    required_repr TEXT NOT NULL CHECK (required_repr IN ('NETLIST', 'VHDL', 'EITHER')),
    test_points TEXT NOT NULL,
    deadline TEXT NOT NULL,
    posted_at TEXT NOT NULL,
    creator_id TEXT NOT NULL REFERENCES users(id)
);
CREATE TABLE IF NOT EXISTS submissions (
    id TEXT PRIMARY KEY,
    seq INTEGER UNIQUE NOT NULL,
    project_id TEXT NOT NULL REFERENCES projects(id),
    submitter_id TEXT NOT NULL REFERENCES users(id),
    submitted_at TEXT NOT NULL,
    repr TEXT NOT NULL,
    payload TEXT NOT NULL,
    score INTEGER,
    report TEXT,
    trace_blob TEXT,
    log_blob TEXT
);
CREATE TABLE IF NOT EXISTS counters (name TEXT PRIMARY KEY, value INTEGER NOT NULL);
"""


def utcnow() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _parse_ts(ts: str) -> datetime:
    return datetime.fromisoformat(ts)


@dataclass(frozen=True)
class User:
    id: str
    name: str
    role: str
    token: str


class PermissionError_(Exception):
    """Caller lacks the permission the operation needs."""


class NotFound(Exception):
    pass


class Store:
    def __init__(self, db_path: str, blob_dir: str):
        self.db_path = str(db_path)
        self.blob_dir = Path(blob_dir)
        self.blob_dir.mkdir(parents=True, exist_ok=True)
        with self._conn() as db:
            db.executescript(_SCHEMA)

    @contextmanager
    def _conn(self):
        db = sqlite3.connect(self.db_path, timeout=30)
        db.row_factory = sqlite3.Row
        db.execute("PRAGMA foreign_keys = ON")
        try:
            with db:  # one transaction per store call
                yield db
        finally:
            db.close()

    def _next_id(self, db, prefix: str) -> str:
        row = db.execute("SELECT value FROM counters WHERE name = ?", (prefix,)).fetchone()
        value = (row["value"] if row else 0) + 1
        db.execute(
            "INSERT INTO counters (name, value) VALUES (?, ?) "
            "ON CONFLICT(name) DO UPDATE SET value = ?",
            (prefix, value, value),
        )
        return f"{prefix}{value:04d}"

    # -- blobs ---------------------------------------------------------------

    def put_blob(self, data: bytes) -> str:
        digest = hashlib.sha256(data).hexdigest()
        path = self.blob_dir / digest
        if not path.exists():
            path.write_bytes(data)
        return digest

    def get_blob(self, digest: str) -> bytes:
        path = self.blob_dir / digest
        if not path.exists():
            raise NotFound(f"no blob {digest}")
        return path.read_bytes()

    # -- users ---------------------------------------------------------------

    def create_user(self, name: str, role: str, password: str) -> User:
        token = secrets.token_hex(16)
        with self._conn() as db:
            user_id = self._next_id(db, "u")
            db.execute(
                "INSERT INTO users (id, name, role, password, token) VALUES (?, ?, ?, ?, ?)",
                (user_id, name, role, password, token),
            )
        return User(id=user_id, name=name, role=role, token=token)

    def login(self, name: str, password: str) -> Optional[User]:
        with self._conn() as db:
            row = db.execute(
                "SELECT * FROM users WHERE name = ? AND password = ?", (name, password)
            ).fetchone()
        return self._user(row) if row else None

    def user_by_token(self, token: str) -> Optional[User]:
        with self._conn() as db:
            row = db.execute("SELECT * FROM users WHERE token = ?", (token,)).fetchone()
        return self._user(row) if row else None

    def user(self, user_id: str) -> User:
        with self._conn() as db:
            row = db.execute("SELECT * FROM users WHERE id = ?", (user_id,)).fetchone()
        if row is None:
            raise NotFound(f"no user {user_id}")
        return self._user(row)

    def students(self) -> list[User]:
        with self._conn() as db:
            rows = db.execute("SELECT * FROM users WHERE role = 'STUDENT' ORDER BY id").fetchall()
        return [self._user(r) for r in rows]

    def user_count(self) -> int:
        with self._conn() as db:
            return db.execute("SELECT COUNT(*) AS n FROM users").fetchone()["n"]

    @staticmethod
    def _user(row) -> User:
        return User(id=row["id"], name=row["name"], role=row["role"], token=row["token"])

    # -- notices ---------------------------------------------------------------

    def post_notice(self, author: User, title: str, body: str, at: Optional[str] = None) -> str:
        if author.role != "INSTRUCTOR":
            raise PermissionError_("only instructors can post notices")
        with self._conn() as db:
            notice_id = self._next_id(db, "n")
            db.execute(
                "INSERT INTO notices (id, author_id, title, body, posted_at) VALUES (?, ?, ?, ?, ?)",
                (notice_id, author.id, title, body, at or utcnow()),
            )
        return notice_id

    def list_notices(self) -> list[dict]:
        with self._conn() as db:
            rows = db.execute(
                "SELECT n.*, u.name AS author FROM notices n JOIN users u ON u.id = n.author_id "
                "ORDER BY n.posted_at DESC, n.id DESC"
            ).fetchall()
        return [
            {"id": r["id"], "title": r["title"], "body": r["body"],
             "author": r["author"], "posted_at": r["posted_at"]}
            for r in rows
        ]

    # -- projects ---------------------------------------------------------------

    def create_project(
        self,
        owner: User,
        name: str,
        column: str,
        repr_: str,
        payload: str = "",
        assignment_id: Optional[str] = None,
        visible: bool = False,
        at: Optional[str] = None,
    ) -> str:
        if column == "EXAMPLE" and owner.role != "INSTRUCTOR":
            raise PermissionError_("only instructors can create example projects")
        if column == "ATTENTION":
            raise ValueError("the attention column holds notices, not projects")
        now = at or utcnow()
        with self._conn() as db:
            project_id = self._next_id(db, "p")
            db.execute(
                "INSERT INTO projects (id, owner_id, name, col, repr, payload, assignment_id,"
                " visible, created_at, updated_at) VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                (project_id, owner.id, name, column, repr_, payload, assignment_id,
                 int(visible), now, now),
            )
        return project_id

    def project(self, project_id: str) -> dict:
        with self._conn() as db:
            row = db.execute("SELECT * FROM projects WHERE id = ?", (project_id,)).fetchone()
        if row is None:
            raise NotFound(f"no project {project_id}")
        return dict(row)

    def update_project(self, caller: User, project_id: str, payload: str,
                       name: Optional[str] = None) -> None:
        proj = self.project(project_id)
        if proj["col"] == "EXAMPLE":
            if caller.role != "INSTRUCTOR":
                raise PermissionError_("you do not have permissions to modify an example project")
        elif proj["owner_id"] != caller.id:
            raise PermissionError_("not your project")
        with self._conn() as db:
            db.execute(
                "UPDATE projects SET payload = ?, name = COALESCE(?, name), updated_at = ? "
                "WHERE id = ?",
                (payload, name, utcnow(), project_id),
            )

    def set_example_visibility(self, caller: User, project_id: str, visible: bool) -> None:
        if caller.role != "INSTRUCTOR":
            raise PermissionError_("only instructors can change example visibility")
        proj = self.project(project_id)
        if proj["col"] != "EXAMPLE":
            raise ValueError("not an example project")
        with self._conn() as db:
            db.execute("UPDATE projects SET visible = ? WHERE id = ?", (int(visible), project_id))

    def home_columns(self, caller: User) -> dict:
        with self._conn() as db:
            own = db.execute(
                "SELECT * FROM projects WHERE owner_id = ? ORDER BY id", (caller.id,)
            ).fetchall()
            if caller.role == "INSTRUCTOR":
                examples = db.execute(
                    "SELECT * FROM projects WHERE col = 'EXAMPLE' ORDER BY id"
                ).fetchall()
            else:
                examples = db.execute(
                    "SELECT * FROM projects WHERE col = 'EXAMPLE' AND visible = 1 ORDER BY id"
                ).fetchall()
        def meta(r):
            return {
                "id": r["id"], "name": r["name"], "column": r["col"], "repr": r["repr"],
                "assignment_id": r["assignment_id"], "visible": bool(r["visible"]),
                "created_at": r["created_at"], "updated_at": r["updated_at"],
            }
        return {
            "attention": self.list_notices(),
            "homework": [meta(r) for r in own if r["col"] == "HOMEWORK"],
            "playground": [meta(r) for r in own if r["col"] == "PLAYGROUND"],
            "example": [meta(r) for r in examples],
        }

    # -- assignments ---------------------------------------------------------------

    def create_assignment(
        self,
        creator: User,
        title: str,
        reference_project_id: str,
        required_repr: str,
        test_points_json: str,
        deadline: str,
        roster: list[User],
        posted_at: Optional[str] = None,
    ) -> str:
        """Insert the assignment and fan out one empty homework project
        per roster student, atomically."""
        if creator.role != "INSTRUCTOR":
            raise PermissionError_("only instructors can assign homework")
        now = posted_at or utcnow()
        with self._conn() as db:
            if db.execute(
                "SELECT 1 FROM projects WHERE id = ? AND col = 'EXAMPLE'",
                (reference_project_id,),
            ).fetchone() is None:
                raise ValueError("reference must be an example project")
            assignment_id = self._next_id(db, "a")
            db.execute(
                "INSERT INTO assignments (id, title, reference_project_id, required_repr,"
                " test_points, deadline, posted_at, creator_id) VALUES (?, ?, ?, ?, ?, ?, ?, ?)",
                (assignment_id, title, reference_project_id, required_repr,
                 test_points_json, deadline, now, creator.id),
            )
            for student in roster:
                project_id = self._next_id(db, "p")
                db.execute(
                    "INSERT INTO projects (id, owner_id, name, col, repr, payload,"
                    " assignment_id, visible, created_at, updated_at)"
                    " VALUES (?, ?, ?, 'HOMEWORK', ?, '', ?, 0, ?, ?)",
                    (project_id, student.id, title, required_repr, assignment_id, now, now),
                )
        return assignment_id

    def assignment(self, assignment_id: str) -> dict:
        with self._conn() as db:
            row = db.execute("SELECT * FROM assignments WHERE id = ?", (assignment_id,)).fetchone()
        if row is None:
            raise NotFound(f"no assignment {assignment_id}")
        return dict(row)

    def assignments(self) -> list[dict]:
        with self._conn() as db:
            rows = db.execute("SELECT * FROM assignments ORDER BY id").fetchall()
        return [dict(r) for r in rows]

    # -- submissions ---------------------------------------------------------------

    def record_submission(
        self,
        project_id: str,
        submitter: User,
        repr_: str,
        payload: str,
        score: Optional[int],
        report_json: Optional[str],
        trace_blob: Optional[str],
        log_blob: Optional[str],
        at: Optional[str] = None,
    ) -> dict:
        now = at or utcnow()
        with self._conn() as db:
            seq_row = db.execute("SELECT COALESCE(MAX(seq), 0) AS m FROM submissions").fetchone()
            seq = seq_row["m"] + 1
            submission_id = self._next_id(db, "s")
            db.execute(
                "INSERT INTO submissions (id, seq, project_id, submitter_id, submitted_at,"
                " repr, payload, score, report, trace_blob, log_blob)"
                " VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)",
                (submission_id, seq, project_id, submitter.id, now, repr_, payload,
                 score, report_json, trace_blob, log_blob),
            )
            db.execute(
                "UPDATE projects SET payload = ?, repr = ?, updated_at = ? WHERE id = ?",
                (payload, repr_, now, project_id),
            )
            row = db.execute("SELECT * FROM submissions WHERE id = ?", (submission_id,)).fetchone()
        return dict(row)

    def submission(self, submission_id: str) -> dict:
        with self._conn() as db:
            row = db.execute("SELECT * FROM submissions WHERE id = ?", (submission_id,)).fetchone()
        if row is None:
            raise NotFound(f"no submission {submission_id}")
        return dict(row)

    def submissions_for_project(self, project_id: str) -> list[dict]:
        with self._conn() as db:
            rows = db.execute(
                "SELECT * FROM submissions WHERE project_id = ? ORDER BY submitted_at, seq",
                (project_id,),
            ).fetchall()
        return [dict(r) for r in rows]

    # -- statistics ---------------------------------------------------------------

    def assignment_stats(self, assignment_id: str, tz_name: str = "UTC") -> dict:
        """Cohort statistics, recomputed from the submission table."""
        assignment = self.assignment(assignment_id)
        deadline = _parse_ts(assignment["deadline"])
        with self._conn() as db:
            projects = db.execute(
                "SELECT p.*, u.name AS owner_name FROM projects p JOIN users u ON u.id = p.owner_id "
                "WHERE p.assignment_id = ? ORDER BY p.owner_id",
                (assignment_id,),
            ).fetchall()
            subs = db.execute(
                "SELECT s.* FROM submissions s JOIN projects p ON p.id = s.project_id "
                "WHERE p.assignment_id = ? ORDER BY s.submitted_at, s.seq",
                (assignment_id,),
            ).fetchall()

        # per-student records in roster order
        by_owner: dict[str, list] = {}
        for sub in subs:
            owner = next(p["owner_id"] for p in projects if p["id"] == sub["project_id"])
            by_owner.setdefault(owner, []).append(sub)

        tz = ZoneInfo(tz_name)
        per_student = []
        tries_before_success: dict[int, int] = {}
        hourly = [0] * 24
        solved_count = 0
        submitted_count = 0
        for proj in projects:
            owner = proj["owner_id"]
            own_subs = by_owner.get(owner, [])
            scores = [s["score"] for s in own_subs]
            times = [s["submitted_at"] for s in own_subs]
            pre_deadline = [
                s["score"] or 0 for s in own_subs if _parse_ts(s["submitted_at"]) <= deadline
            ]
            final_score = max(pre_deadline, default=0)
            if own_subs:
                submitted_count += 1
            solved = any((s["score"] or 0) >= 100 for s in own_subs)
            if solved:
                solved_count += 1
                tries = next(
                    i + 1 for i, s in enumerate(own_subs) if (s["score"] or 0) >= 100
                )
                tries_before_success[tries] = tries_before_success.get(tries, 0) + 1
            for ts in times:
                hourly[_parse_ts(ts).astimezone(tz).hour] += 1
            per_student.append(
                {
                    "user_id": owner,
                    "name": proj["owner_name"],
                    "project_id": proj["id"],
                    "submission_count": len(own_subs),
                    "submission_times": times,
                    "submission_scores": scores,
                    "final_score": final_score,
                }
            )

        roster_size = len(projects)
        return {
            "assignment_id": assignment_id,
            "title": assignment["title"],
            "deadline": assignment["deadline"],
            "roster_size": roster_size,
            "submitted_count": submitted_count,
            "submitted_ratio": (submitted_count / roster_size) if roster_size else 0.0,
            "solved_count": solved_count,
            "total_submissions": len(subs),
            "tries_before_success": {str(k): v for k, v in sorted(tries_before_success.items())},
            "hourly": hourly,
            "per_student": per_student,
        }
