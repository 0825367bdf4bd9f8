"""CLI behavior: exit codes, stdout payloads, and the thin-shell
property (CLI bytes == library bytes)."""

import json
from pathlib import Path

import pytest

from logiclab import designs
from logiclab.cli import main
from logiclab.kernel import SimConfig, simulate
from logiclab.netlist import serialize_circuit
from logiclab.parts import builtin_registry
from logiclab.vcd import export_vcd
from logiclab.vhdl import emit_vhdl

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_clean_counter(capsys):
    code, out, err = run_cli(capsys, "validate", str(FIXTURES / "counter60.json"))
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_validate_conflict_exits_1_with_code_on_stderr(capsys):
    code, out, err = run_cli(capsys, "validate", str(FIXTURES / "output_conflict.json"))
    assert code == 1
    assert "OUTPUT_CONFLICT" in err
    assert json.loads(out)["ok"] is False


def test_validate_unparseable_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, out, err = run_cli(capsys, "validate", str(bad))
    assert code == 1 and "PARSE" in err


def test_simulate_writes_golden_vcd(capsys, tmp_path):
    out_path = tmp_path / "counter.vcd"
    code, out, err = run_cli(
        capsys,
        "simulate", str(FIXTURES / "counter60.json"),
        "--stim", str(FIXTURES / "counter60_stim.json"),
        "-o", str(out_path),
    )
    assert code == 0
    assert out_path.read_bytes() == (FIXTURES / "counter60_61edges.vcd").read_bytes()


def test_simulate_cli_equals_library(capsys, tmp_path):
    registry = builtin_registry()
    circuit = designs.nand_demo()
    netlist = tmp_path / "c.json"
    netlist.write_bytes(serialize_circuit(circuit))
    stim_doc = {
        "format_version": 1,
        "horizon_ns": 200,
        "assignments": {
            "a": {"kind": "CLOCK", "freq_hz": 10000000},
            "b": {"kind": "CONSTANT", "value": "1"},
        },
    }
    stim_path = tmp_path / "s.json"
    stim_path.write_text(json.dumps(stim_doc))
    out_path = tmp_path / "out.vcd"
    code, _, _ = run_cli(
        capsys, "simulate", str(netlist), "--stim", str(stim_path), "-o", str(out_path)
    )
    assert code == 0
    from logiclab.stimulus import deserialize_stimulus

    stim = deserialize_stimulus(stim_path.read_bytes())
    trace, _ = simulate(circuit, stim, SimConfig(horizon_ns=200), registry)
    assert out_path.read_bytes() == export_vcd(trace)


def test_simulate_vhdl_input(capsys, tmp_path):
    src = tmp_path / "counter.vhd"
    src.write_text(designs.counter60_vhdl_source())
    stim_doc = {
        "format_version": 1,
        "horizon_ns": 5000,
        "assignments": {
            "clk": {"kind": "CLOCK", "freq_hz": 1000000},
            "clr": {"kind": "CONSTANT", "value": "1"},
        },
    }
    stim_path = tmp_path / "s.json"
    stim_path.write_text(json.dumps(stim_doc))
    out_path = tmp_path / "o.vcd"
    code, _, err = run_cli(
        capsys, "simulate", str(src), "--stim", str(stim_path), "-o", str(out_path)
    )
    assert code == 0, err
    assert out_path.exists()


def test_simulate_oscillating_fixture_exits_1(capsys, tmp_path):
    netlist = tmp_path / "loop.json"
    netlist.write_bytes(serialize_circuit(designs.delta_loop()))
    out_path = tmp_path / "o.vcd"
    code, _, err = run_cli(
        capsys, "simulate", str(netlist), "--horizon", "100", "-o", str(out_path)
    )
    assert code == 1
    assert "OSCILLATION" in err


def test_emit_vhdl_matches_library(capsys, tmp_path):
    registry = builtin_registry()
    outdir = tmp_path / "vhdl"
    code, _, err = run_cli(
        capsys, "emit-vhdl", str(FIXTURES / "counter60.json"), "-o", str(outdir)
    )
    assert code == 0
    units = emit_vhdl(designs.counter60(), registry)
    for unit in units:
        assert (outdir / unit.source_name).read_text(encoding="utf-8") == unit.text


def test_grade_correct_exits_0(capsys, tmp_path):
    code, out, _ = run_cli(
        capsys,
        "grade", str(FIXTURES / "counter60.json"),
        "--reference", str(FIXTURES / "counter60.json"),
        "--testpoints", str(FIXTURES / "counter_testpoints.json"),
    )
    assert code == 0
    assert json.loads(out)["score"] == 100


def test_grade_wrong_modulus_exits_1_score_75(capsys):
    code, out, _ = run_cli(
        capsys,
        "grade", str(FIXTURES / "counter100.json"),
        "--reference", str(FIXTURES / "counter60.json"),
        "--testpoints", str(FIXTURES / "counter_testpoints.json"),
    )
    assert code == 1
    report = json.loads(out)
    assert report["score"] == 75
    wrap = next(tp for tp in report["test_points"] if tp["id"] == "wrap_59_to_0")
    assert wrap["verdict"] == "FAIL"


def test_grade_vhdl_submission(capsys):
    code, out, _ = run_cli(
        capsys,
        "grade", str(FIXTURES / "counter60_behav.vhd"),
        "--reference", str(FIXTURES / "counter60.json"),
        "--testpoints", str(FIXTURES / "counter_testpoints.json"),
    )
    assert code == 0
    assert json.loads(out)["score"] == 100


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["simulate"])  # missing required arguments
    assert exc.value.code == 2


def test_seed_demo_and_report(capsys, tmp_path):
    config = {
        "store_path": str(tmp_path / "db.sqlite3"),
        "blob_dir": str(tmp_path / "blobs"),
        "timezone": "UTC",
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config))
    code, out, _ = run_cli(capsys, "seed-demo", "--config", str(config_path))
    assert code == 0
    info = json.loads(out)
    assert len(info["students"]) == 31

    # refuses to double-seed
    code, _, err = run_cli(capsys, "seed-demo", "--config", str(config_path))
    assert code == 1 and "not empty" in err

    outdir = tmp_path / "report"
    code, out, _ = run_cli(
        capsys, "report", "--config", str(config_path),
        "--assignment", info["assignment_id"], "-o", str(outdir),
    )
    assert code == 0
    summary = json.loads(out)
    assert summary["submitted_count"] == 17
    assert summary["solved_count"] == 10
    assert (outdir / "tries_histogram.png").stat().st_size > 0
    assert (outdir / "hourly_histogram.png").stat().st_size > 0
    rows = (outdir / "stats.csv").read_text().splitlines()
    assert len(rows) == 32  # header + 31 students
