"""Command-line driver for every pipeline stage.

stdout carries machine-readable payloads only (JSON reports, VCD goes
to files); human diagnostics go to stderr.  Exit codes: 0 success,
1 validation/grade/simulation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import grader
from .kernel import ALL_NETS, PORTS, SimConfig, ValidationFailed, simulate
from .netlist import NetlistError, deserialize_circuit, validate_circuit
from .parts import builtin_registry
from .stimulus import StimulusError, StimulusSet, deserialize_stimulus
from .vcd import export_vcd
from .vhdl import emit_testbench, emit_vhdl


def _err(message: str) -> None:
    print(message, file=sys.stderr)


def _load_circuit(path: str):
    return deserialize_circuit(Path(path).read_bytes())


def _payload_for(path: str) -> grader.DesignPayload:
    text = Path(path).read_text(encoding="utf-8")
    if path.endswith((".vhd", ".vhdl")):
        return grader.DesignPayload(repr="VHDL", data=text)
    return grader.DesignPayload(repr="NETLIST", data=text)


def cmd_validate(args) -> int:
    registry = builtin_registry()
    try:
        circuit = _load_circuit(args.netlist)
    except NetlistError as exc:
        _err(f"ERROR PARSE {exc}")
        return 1
    report = validate_circuit(circuit, registry)
    print(json.dumps(report.to_json(), indent=2))
    for issue in report.errors:
        _err(f"ERROR {issue.code} {issue.location}: {issue.message}")
    for issue in report.warnings:
        _err(f"WARN {issue.code} {issue.location}: {issue.message}")
    return 0 if report.ok else 1


def cmd_simulate(args) -> int:
    registry = builtin_registry()
    stim = StimulusSet(horizon_ns=args.horizon or 1)
    if args.stim:
        try:
            stim = deserialize_stimulus(Path(args.stim).read_bytes())
        except StimulusError as exc:
            _err(f"ERROR STIMULUS {exc}")
            return 1
    horizon = args.horizon or stim.horizon_ns
    watch = ALL_NETS if args.watch_all else PORTS
    cfg = SimConfig(horizon_ns=horizon, watch=watch, max_deltas_per_instant=args.max_deltas)

    vhdl_inputs = [p for p in args.inputs if p.endswith((".vhd", ".vhdl"))]
    if vhdl_inputs:
        if len(vhdl_inputs) != len(args.inputs):
            _err("ERROR USAGE cannot mix netlist and VHDL inputs")
            return 2
        from .vhdl import parse_vhdl
        from .vhdl.elaborate import elaborate, simulate_elaborated
        from .vhdl.syntax import VhdlUnit

        units = [
            VhdlUnit(source_name=Path(p).name, text=Path(p).read_text(encoding="utf-8"))
            for p in vhdl_inputs
        ]
        ast, diags = parse_vhdl(units)
        top = args.top
        if top is None:
            entities = [u.name for u in ast.units if hasattr(u, "ports")]
            top = entities[-1] if entities else None
        design = None
        if top is not None:
            design, ediags = elaborate(ast, top, registry)
            diags = diags + ediags
        for d in diags:
            _err(str(d))
        if design is None or any(d.severity == "ERROR" for d in diags):
            return 1
        trace, log = simulate_elaborated(design, stim, cfg)
    else:
        try:
            circuit = _load_circuit(args.inputs[0])
        except NetlistError as exc:
            _err(f"ERROR PARSE {exc}")
            return 1
        try:
            trace, log = simulate(circuit, stim, cfg, registry)
        except ValidationFailed as exc:
            for issue in exc.report.errors:
                _err(f"ERROR {issue.code} {issue.location}: {issue.message}")
            return 1

    sys.stderr.write(log.to_text())
    Path(args.output).write_bytes(export_vcd(trace))
    _err(f"wrote {args.output} ({len(trace.signals)} signals, horizon {trace.horizon_ns} ns)")
    return 1 if log.fault else 0


def cmd_emit_vhdl(args) -> int:
    registry = builtin_registry()
    try:
        circuit = _load_circuit(args.netlist)
    except NetlistError as exc:
        _err(f"ERROR PARSE {exc}")
        return 1
    report = validate_circuit(circuit, registry)
    if not report.ok:
        for issue in report.errors:
            _err(f"ERROR {issue.code} {issue.location}: {issue.message}")
        return 1
    units = emit_vhdl(circuit, registry)
    if args.stim:
        stim = deserialize_stimulus(Path(args.stim).read_bytes())
        units.append(emit_testbench(circuit, stim))
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    for unit in units:
        path = outdir / unit.source_name
        path.write_text(unit.text, encoding="utf-8")
        _err(f"wrote {path}")
    return 0


def cmd_grade(args) -> int:
    registry = builtin_registry()
    try:
        tps = grader.deserialize_test_points(Path(args.testpoints).read_bytes())
    except ValueError as exc:
        _err(f"ERROR TESTPOINTS {exc}")
        return 1
    try:
        reference = grader.load_design(_payload_for(args.reference), registry)
    except grader.DesignError as exc:
        _err("ERROR REFERENCE " + "; ".join(exc.diagnostics))
        return 1
    try:
        report = grader.grade(_payload_for(args.design), reference, tps, registry)
    except grader.GradingConfigError as exc:
        _err(f"ERROR REFERENCE {exc}")
        return 1
    print(json.dumps(report.to_json(), indent=2))
    return 0 if report.score == 100 else 1


def cmd_serve(args) -> int:
    import uvicorn

    from .service.app import create_app
    from .service.config import load_config
    from .service.store import Store

    config = load_config(args.config)
    store = Store(config.store_path, config.blob_dir)
    app = create_app(store, config)
    _err(f"serving on {config.listen_host}:{config.listen_port}")
    uvicorn.run(app, host=config.listen_host, port=config.listen_port, log_level="warning")
    return 0


def cmd_seed_demo(args) -> int:
    from .service.config import load_config
    from .service.seed import seed_demo
    from .service.store import Store

    config = load_config(args.config)
    store = Store(config.store_path, config.blob_dir)
    if store.user_count():
        _err("ERROR SEED store is not empty; refusing to seed on top of existing data")
        return 1
    info = seed_demo(store, config.timezone)
    print(json.dumps(info, indent=2))
    return 0


def cmd_report(args) -> int:
    from .report import render_assignment_report
    from .service.config import load_config
    from .service.store import NotFound, Store

    config = load_config(args.config)
    store = Store(config.store_path, config.blob_dir)
    try:
        stats = store.assignment_stats(args.assignment, config.timezone)
    except NotFound as exc:
        _err(f"ERROR {exc}")
        return 1
    written = render_assignment_report(stats, args.output)
    for path in written:
        _err(f"wrote {path}")
    print(json.dumps({k: stats[k] for k in (
        "assignment_id", "roster_size", "submitted_count", "submitted_ratio",
        "solved_count", "total_submissions", "tries_before_success", "hourly")}, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="logiclab",
        description="gate-level simulation, VHDL translation, autograding and the course service",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a netlist against the edit-time rules")
    p.add_argument("netlist")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("simulate", help="simulate a netlist or VHDL design to a VCD file")
    p.add_argument("inputs", nargs="+", metavar="design",
                   help="one netlist .json or one or more .vhd files")
    p.add_argument("--stim", help="stimulus JSON file")
    p.add_argument("--horizon", type=int, help="horizon in ns (default: stimulus horizon)")
    p.add_argument("--top", help="top entity for VHDL inputs (default: last entity)")
    p.add_argument("-o", "--output", required=True, help="VCD output path")
    p.add_argument("--watch-all", action="store_true", help="trace every net, not just ports")
    p.add_argument("--max-deltas", type=int, default=1000)
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("emit-vhdl", help="translate a netlist to VHDL source files")
    p.add_argument("netlist")
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.add_argument("--stim", help="also emit a testbench for this stimulus file")
    p.set_defaults(fn=cmd_emit_vhdl)

    p = sub.add_parser("grade", help="grade a design against a reference over test points")
    p.add_argument("design")
    p.add_argument("--reference", required=True)
    p.add_argument("--testpoints", required=True)
    p.set_defaults(fn=cmd_grade)

    p = sub.add_parser("serve", help="run the course service")
    p.add_argument("--config", help="service config JSON")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("seed-demo", help="load the demo cohort into the store")
    p.add_argument("--config", help="service config JSON")
    p.set_defaults(fn=cmd_seed_demo)

    p = sub.add_parser("report", help="render cohort statistics (figures + CSV)")
    p.add_argument("--config", help="service config JSON")
    p.add_argument("--assignment", required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(fn=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
