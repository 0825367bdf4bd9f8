"""End-to-end API tests over a seeded store plus store-level invariants."""

import json

import pytest
from fastapi.testclient import TestClient
from hypothesis import given, settings
from hypothesis import strategies as st_

from logiclab import designs
from logiclab.grader import serialize_test_points
from logiclab.netlist import serialize_circuit
from logiclab.service.app import create_app
from logiclab.service.config import ServiceConfig
from logiclab.service.seed import seed_demo
from logiclab.service.store import Store

COUNTER_JSON = serialize_circuit(designs.counter60()).decode()
COUNTER100_JSON = serialize_circuit(designs.counter100()).decode()


def _seed(tmp_path_factory, label):
    tmp = tmp_path_factory.mktemp(label)
    store = Store(tmp / "db.sqlite3", tmp / "blobs")
    info = seed_demo(store)
    config = ServiceConfig(store_path=str(tmp / "db.sqlite3"), blob_dir=str(tmp / "blobs"))
    client = TestClient(create_app(store, config))
    return store, client, info


@pytest.fixture(scope="module")
def seeded(tmp_path_factory):
    """Shared cohort; tests in this module may add submissions to it."""
    return _seed(tmp_path_factory, "svc")


@pytest.fixture(scope="module")
def pristine(tmp_path_factory):
    """A second seeded cohort no test mutates; for exact-count checks."""
    return _seed(tmp_path_factory, "svc_pristine")


def login(client, name):
    resp = client.post("/api/login", json={"name": name, "password": f"pw-{name}"})
    assert resp.status_code == 200, resp.text
    body = resp.json()
    return {"Authorization": f"Bearer {body['token']}"}, body


def test_login_and_bad_credentials(seeded):
    _, client, _ = seeded
    headers, body = login(client, "student01")
    assert body["role"] == "STUDENT"
    resp = client.post("/api/login", json={"name": "student01", "password": "nope"})
    assert resp.status_code == 401
    assert resp.json()["code"] == "BAD_CREDENTIALS"


def test_home_has_four_columns(seeded):
    _, client, _ = seeded
    headers, _ = login(client, "student01")
    home = client.get("/api/home", headers=headers).json()
    assert set(home) == {"attention", "homework", "playground", "example"}
    assert len(home["homework"]) == 1
    assert home["attention"], "the seeded notice should appear"
    notice = home["attention"][0]
    assert notice["author"] == "instructor" and notice["posted_at"]
    assert home["example"], "the visible example should appear"


def test_auth_required(seeded):
    _, client, _ = seeded
    assert client.get("/api/home").status_code == 401


def test_student_cannot_modify_example(seeded):
    _, client, info = seeded
    headers, _ = login(client, "student02")
    resp = client.put(
        f"/api/projects/{info['example_project_id']}",
        json={"payload": "{}"},
        headers=headers,
    )
    assert resp.status_code == 403
    assert "example" in resp.json()["message"]


def test_student_can_read_visible_example(seeded):
    _, client, info = seeded
    headers, _ = login(client, "student03")
    resp = client.get(f"/api/projects/{info['example_project_id']}", headers=headers)
    assert resp.status_code == 200
    assert resp.json()["payload"]


def test_hidden_example_disappears_for_students(seeded):
    store, client, info = seeded
    iheaders, _ = login(client, "instructor")
    sheaders, _ = login(client, "student04")
    example = info["example_project_id"]
    assert client.post(
        f"/api/examples/{example}/visibility", json={"visible": False}, headers=iheaders
    ).status_code == 200
    assert client.get(f"/api/projects/{example}", headers=sheaders).status_code == 403
    home = client.get("/api/home", headers=sheaders).json()
    assert all(p["id"] != example for p in home["example"])
    client.post(f"/api/examples/{example}/visibility", json={"visible": True}, headers=iheaders)


def test_students_cannot_post_assignments_or_notices(seeded):
    _, client, info = seeded
    headers, _ = login(client, "student05")
    assert client.post("/api/notices", json={"title": "x"}, headers=headers).status_code == 403
    body = {
        "title": "sneaky",
        "reference_project_id": info["example_project_id"],
        "test_points": json.loads(
            serialize_test_points(designs.counter_test_points()).decode()
        ),
        "deadline": "2030-01-01T00:00:00+00:00",
    }
    assert client.post("/api/assignments", json=body, headers=headers).status_code == 403


def test_homework_submission_grades_and_stores_artifacts(seeded):
    store, client, info = seeded
    headers, me = login(client, "student20")
    home = client.get("/api/home", headers=headers).json()
    project_id = home["homework"][0]["id"]
    resp = client.post(
        f"/api/projects/{project_id}/submissions",
        json={"payload": COUNTER_JSON, "repr": "NETLIST"},
        headers=headers,
    )
    assert resp.status_code == 200, resp.text
    sub = resp.json()
    assert sub["score"] == 100
    assert sub["report"]["passed"] == 4
    vcd = client.get(sub["trace"], headers=headers)
    assert vcd.status_code == 200
    assert vcd.text.startswith("$version")
    log = client.get(sub["log"], headers=headers)
    assert log.status_code == 200
    history = client.get(f"/api/projects/{project_id}/submissions", headers=headers).json()
    assert [s["id"] for s in history][-1] == sub["id"]


def test_submission_on_foreign_project_rejected(seeded):
    _, client, _ = seeded
    h20, _ = login(client, "student20")
    h21, _ = login(client, "student21")
    home20 = client.get("/api/home", headers=h20).json()
    project_id = home20["homework"][0]["id"]
    resp = client.post(
        f"/api/projects/{project_id}/submissions",
        json={"payload": COUNTER_JSON, "repr": "NETLIST"},
        headers=h21,
    )
    assert resp.status_code == 403


def test_malformed_submission_recorded_as_failed(seeded):
    _, client, _ = seeded
    headers, _ = login(client, "student22")
    home = client.get("/api/home", headers=headers).json()
    project_id = home["homework"][0]["id"]
    resp = client.post(
        f"/api/projects/{project_id}/submissions",
        json={"payload": "{\"format_version\": 1}", "repr": "NETLIST"},
        headers=headers,
    )
    assert resp.status_code == 200
    sub = resp.json()
    assert sub["score"] == 0
    assert sub["trace"] is None
    log = client.get(sub["log"], headers=headers).text
    assert "missing required field" in log


def test_playground_simulation_submission(seeded):
    _, client, _ = seeded
    headers, me = login(client, "student23")
    created = client.post(
        "/api/projects",
        json={"name": "sandbox", "repr": "NETLIST", "payload": serialize_circuit(designs.nand_demo()).decode()},
        headers=headers,
    ).json()
    stim = {
        "format_version": 1,
        "horizon_ns": 100,
        "assignments": {
            "a": {"kind": "CONSTANT", "value": "1"},
            "b": {"kind": "CONSTANT", "value": "1"},
        },
    }
    resp = client.post(
        f"/api/projects/{created['id']}/submissions",
        json={"stimulus": stim},
        headers=headers,
    )
    assert resp.status_code == 200
    sub = resp.json()
    assert sub["score"] is None
    vcd = client.get(sub["trace"], headers=headers).text
    assert "$var wire 1" in vcd


def test_adhoc_simulate_endpoint(seeded):
    _, client, _ = seeded
    headers, _ = login(client, "student24")
    body = {
        "repr": "NETLIST",
        "payload": serialize_circuit(designs.nand_demo()).decode(),
        "stimulus": {
            "format_version": 1,
            "horizon_ns": 100,
            "assignments": {
                "a": {"kind": "CONSTANT", "value": "1"},
                "b": {"kind": "CONSTANT", "value": "1"},
            },
        },
    }
    resp = client.post("/api/simulate", json=body, headers=headers)
    assert resp.status_code == 200
    out = resp.json()
    assert out["ok"] is True
    assert out["trace"]["changes"]["y"] == [[0, "X"], [10, "0"]]
    # validation problems come back as diagnostics, not HTTP errors
    bad = dict(body, payload=serialize_circuit(designs.output_conflict()).decode())
    out = client.post("/api/simulate", json=bad, headers=headers).json()
    assert out["ok"] is False and any("OUTPUT_CONFLICT" in d for d in out["diagnostics"])


def test_simulate_horizon_cap(seeded):
    _, client, _ = seeded
    headers, _ = login(client, "student24")
    body = {
        "repr": "NETLIST",
        "payload": serialize_circuit(designs.nand_demo()).decode(),
        "stimulus": {
            "format_version": 1,
            "horizon_ns": 10_000_000_001,
            "assignments": {},
        },
    }
    resp = client.post("/api/simulate", json=body, headers=headers)
    assert resp.status_code == 400
    assert resp.json()["code"] == "HORIZON_TOO_LONG"


def test_stats_match_seeded_cohort(pristine):
    _, client, info = pristine
    headers, _ = login(client, "instructor")
    resp = client.get(f"/api/assignments/{info['assignment_id']}/stats", headers=headers)
    assert resp.status_code == 200
    stats = resp.json()
    assert stats["roster_size"] == 31
    assert stats["submitted_count"] == 17
    assert stats["submitted_ratio"] == 17 / 31
    assert stats["solved_count"] == 10
    assert stats["tries_before_success"]["1"] >= 3
    assert stats["tries_before_success"]["7"] >= 1
    assert len(stats["hourly"]) == 24
    assert sum(stats["hourly"]) == stats["total_submissions"]
    student07 = next(s for s in stats["per_student"] if s["name"] == "student07")
    assert student07["submission_count"] == 7
    assert student07["final_score"] == 100
    # stats endpoint is instructor-only
    sheaders, _ = login(client, "student06")
    assert client.get(
        f"/api/assignments/{info['assignment_id']}/stats", headers=sheaders
    ).status_code == 403


def test_stats_are_pure_function_of_submissions(seeded):
    store, client, info = seeded
    first = store.assignment_stats(info["assignment_id"])
    again = store.assignment_stats(info["assignment_id"])
    assert first == again


# -- store-level invariants ----------------------------------------------------


@pytest.fixture()
def fresh_store(tmp_path):
    return Store(tmp_path / "db.sqlite3", tmp_path / "blobs")


def _mini_assignment(store, roster_size=3, deadline="2030-01-01T00:00:00+00:00"):
    instructor = store.create_user("prof", "INSTRUCTOR", "x")
    students = [store.create_user(f"kid{i}", "STUDENT", "x") for i in range(roster_size)]
    example = store.create_project(
        instructor, "ref", "EXAMPLE", "NETLIST", payload=COUNTER_JSON, visible=True
    )
    assignment = store.create_assignment(
        instructor, "hw", example, "EITHER",
        serialize_test_points(designs.counter_test_points()).decode(),
        deadline, students,
    )
    return instructor, students, assignment


def test_fanout_creates_one_project_per_student(fresh_store):
    _, students, assignment = _mini_assignment(fresh_store, roster_size=31)
    stats = fresh_store.assignment_stats(assignment)
    assert stats["roster_size"] == 31


def test_empty_roster_assignment(fresh_store):
    _, _, assignment = _mini_assignment(fresh_store, roster_size=0)
    stats = fresh_store.assignment_stats(assignment)
    assert stats["roster_size"] == 0
    assert stats["submitted_ratio"] == 0.0


def test_fanout_is_atomic_on_failure(fresh_store):
    instructor = fresh_store.create_user("prof", "INSTRUCTOR", "x")
    students = [fresh_store.create_user(f"kid{i}", "STUDENT", "x") for i in range(4)]
    example = fresh_store.create_project(
        instructor, "ref", "EXAMPLE", "NETLIST", payload=COUNTER_JSON, visible=True
    )
    # poison one roster entry so the fan-out dies halfway through
    class Ghost:
        id = "u9999"  # violates the foreign key on projects.owner_id

    with pytest.raises(Exception):
        fresh_store.create_assignment(
            instructor, "hw", example, "EITHER", "{}",
            "2030-01-01T00:00:00+00:00", students[:2] + [Ghost()] + students[2:],
        )
    with fresh_store._conn() as db:
        assert db.execute("SELECT COUNT(*) AS n FROM assignments").fetchone()["n"] == 0
        assert db.execute(
            "SELECT COUNT(*) AS n FROM projects WHERE col = 'HOMEWORK'"
        ).fetchone()["n"] == 0


def test_deadline_boundary_excludes_late_high_score(fresh_store):
    deadline = "2030-01-01T00:00:00+00:00"
    _, students, assignment = _mini_assignment(fresh_store, 1, deadline)
    stats = fresh_store.assignment_stats(assignment)
    project_id = stats["per_student"][0]["project_id"]
    student = students[0]
    fresh_store.record_submission(
        project_id, student, "NETLIST", "{}", 75, "{}", None, None,
        at="2029-12-31T23:59:59+00:00",
    )
    fresh_store.record_submission(
        project_id, student, "NETLIST", "{}", 100, "{}", None, None,
        at="2030-01-01T00:00:01+00:00",  # one tick past the deadline
    )
    stats = fresh_store.assignment_stats(assignment)
    record = stats["per_student"][0]
    assert record["submission_count"] == 2
    assert record["final_score"] == 75
    assert stats["solved_count"] == 1  # solving late still counts as solved


def test_submissions_immutable_and_ordered(fresh_store):
    _, students, assignment = _mini_assignment(fresh_store, 1)
    stats = fresh_store.assignment_stats(assignment)
    project_id = stats["per_student"][0]["project_id"]
    for i, at in enumerate(["2029-01-01T10:00:00+00:00", "2029-01-01T09:00:00+00:00"]):
        fresh_store.record_submission(
            project_id, students[0], "NETLIST", f"payload{i}", i, "{}", None, None, at=at
        )
    subs = fresh_store.submissions_for_project(project_id)
    assert [s["submitted_at"] for s in subs] == sorted(s["submitted_at"] for s in subs)
    # replaying the project payload does not touch recorded submissions
    fresh_store.update_project(students[0], project_id, "new payload")
    again = fresh_store.submissions_for_project(project_id)
    assert [(s["payload"], s["score"]) for s in again] == [
        (s["payload"], s["score"]) for s in subs
    ]


@settings(max_examples=40, deadline=None)
@given(
    st_.lists(
        st_.tuples(st_.integers(0, 100), st_.booleans()),  # (score, before_deadline)
        max_size=8,
    )
)
def test_final_score_property(tmp_path_factory, scores):
    tmp = tmp_path_factory.mktemp("prop")
    store = Store(tmp / "db.sqlite3", tmp / "blobs")
    deadline = "2030-01-01T00:00:00+00:00"
    _, students, assignment = _mini_assignment(store, 1, deadline)
    stats = store.assignment_stats(assignment)
    project_id = stats["per_student"][0]["project_id"]
    for i, (score, early) in enumerate(scores):
        at = f"2029-06-01T00:00:{i:02d}+00:00" if early else f"2030-06-01T00:00:{i:02d}+00:00"
        store.record_submission(
            project_id, students[0], "NETLIST", "{}", score, "{}", None, None, at=at
        )
    record = store.assignment_stats(assignment)["per_student"][0]
    expected = max((s for s, early in scores if early), default=0)
    assert record["final_score"] == expected


def test_config_env_overrides(tmp_path):
    import json as json_

    from logiclab.service.config import load_config

    path = tmp_path / "config.json"
    path.write_text(json_.dumps({"listen_port": 9000, "timezone": "Asia/Shanghai"}))
    config = load_config(str(path), env={"LOGICLAB_LISTEN_PORT": "9001", "LOGICLAB_BLOB_DIR": "/x"})
    assert config.listen_port == 9001  # env beats file
    assert config.timezone == "Asia/Shanghai"
    assert config.blob_dir == "/x"
    bad = tmp_path / "bad.json"
    bad.write_text(json_.dumps({"nonsense": 1}))
    with pytest.raises(ValueError, match="nonsense"):
        load_config(str(bad))


def test_broken_reference_rejected_without_fanout(tmp_path):
    store = Store(tmp_path / "db.sqlite3", tmp_path / "blobs")
    store.create_user("prof", "INSTRUCTOR", "pw-prof")
    for i in range(3):
        store.create_user(f"kid{i}", "STUDENT", "x")
    config = ServiceConfig(store_path=str(tmp_path / "db.sqlite3"), blob_dir=str(tmp_path / "blobs"))
    client = TestClient(create_app(store, config))
    headers, _ = login(client, "prof")

    # the instructor builds an example that cannot simulate cleanly
    broken = serialize_circuit(designs.output_conflict()).decode()
    example = client.post(
        "/api/projects",
        json={"name": "broken ref", "repr": "NETLIST", "column": "EXAMPLE", "payload": broken},
        headers=headers,
    ).json()["id"]
    body = {
        "title": "doomed",
        "reference_project_id": example,
        "test_points": json.loads(serialize_test_points(designs.counter_test_points()).decode()),
        "deadline": "2030-01-01T00:00:00+00:00",
    }
    resp = client.post("/api/assignments", json=body, headers=headers)
    assert resp.status_code == 400
    assert resp.json()["code"] == "BAD_REFERENCE"
    # nothing was fanned out and no assignment exists
    with store._conn() as db:
        assert db.execute("SELECT COUNT(*) AS n FROM assignments").fetchone()["n"] == 0
        assert db.execute(
            "SELECT COUNT(*) AS n FROM projects WHERE col = 'HOMEWORK'"
        ).fetchone()["n"] == 0


def test_concurrent_submissions_serialize(fresh_store):
    import threading

    _, students, assignment = _mini_assignment(fresh_store, 1)
    stats = fresh_store.assignment_stats(assignment)
    project_id = stats["per_student"][0]["project_id"]
    student = students[0]
    errors = []

    def worker(n):
        try:
            for i in range(5):
                fresh_store.record_submission(
                    project_id, student, "NETLIST", f"p{n}-{i}", 50, "{}", None, None
                )
        except Exception as exc:  # pragma: no cover - failure detail
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(n,)) for n in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    subs = fresh_store.submissions_for_project(project_id)
    assert len(subs) == 20
    seqs = [s["seq"] for s in subs]
    assert len(set(seqs)) == 20  # sequence numbers stay unique under contention
