"""Public simulation API: compile a circuit onto the event engine and run.

The two "simulation methods" users see (live probing and server-side
runs) are the same kernel behind the same contract; only the transport
differs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import stimulus as stim_mod
from .engine import (
    DEFAULT_MAX_DELTAS,
    Activation,
    Network,
    Probe,
    Process,
    SimLog,
    Trace,
    run_network,
    sample,
)
from .logic import X, Z, ZERO, ONE, LogicValue
from .netlist import Circuit, PinRef, net_of, validate_circuit
from .parts import ComponentRegistry, Direction, EdgeEvent, Kind, eval_combinational, step_sequential
from .stimulus import StimulusSet, expand

ALL_NETS = "ALL_NETS"
PORTS = "PORTS"

__all__ = [
    "ALL_NETS",
    "PORTS",
    "Probe",
    "SimConfig",
    "SimLog",
    "Trace",
    "ValidationFailed",
    "sample",
    "simulate",
]


class ValidationFailed(ValueError):
    """simulate() was handed a circuit that does not validate cleanly."""

    def __init__(self, report):
        super().__init__("circuit has validation errors")
        self.report = report


@dataclass(frozen=True)
class SimConfig:
    horizon_ns: int
    max_deltas_per_instant: int = DEFAULT_MAX_DELTAS
    watch: Union[str, list[Probe]] = PORTS

    def __post_init__(self):
        if self.horizon_ns < 1:
            raise ValueError("horizon_ns must be >= 1")
        if self.max_deltas_per_instant < 1:
            raise ValueError("max_deltas_per_instant must be >= 1")


class _ChipProc(Process):
    def __init__(self, name, model, params, in_pins, out_slots, delay):
        self.name = name
        self.model = model
        self.params = params
        self.in_pins = in_pins  # list of (pin_name, signal id or None)
        self.out_slots = out_slots  # pin_name -> slot
        self.delay = delay
        self.sensitivity = tuple(sorted({sig for _, sig in in_pins if sig is not None}))

    def _inputs(self, ctx: Activation) -> dict[str, LogicValue]:
        return {pin: (Z if sig is None else ctx.value(sig)) for pin, sig in self.in_pins}


class _CombinationalProc(_ChipProc):
    def activate(self, ctx: Activation) -> None:
        outs = eval_combinational(self.model, self._inputs(ctx))
        for pin, slot in self.out_slots.items():
            ctx.drive(slot, outs[pin], self.delay)


class _SequentialProc(_ChipProc):
    def __init__(self, *args, state):
        super().__init__(*args)
        self.state = state

    def activate(self, ctx: Activation) -> None:
        inputs = self._inputs(ctx)
        edges = [
            EdgeEvent(pin, old, new)
            for pin, sig in self.in_pins
            if sig in ctx.changed
            for old, new in [ctx.changed[sig]]
        ]
        if not edges:
            edges = [EdgeEvent("", Z, Z)]  # settle outputs from current state
        outs = {}
        for edge in edges:
            self.state, stepped = step_sequential(self.model, self.state, inputs, edge)
            outs.update(stepped)
        for pin, slot in self.out_slots.items():
            if pin in outs:
                ctx.drive(slot, outs[pin], self.delay)


class _PreloadProc(Process):
    def __init__(self, name, events):
        self.name = name
        self.events = events

    def preload(self):
        return self.events

    def activate(self, ctx: Activation) -> None:
        pass


def simulate(
    c: Circuit,
    stim: StimulusSet,
    cfg: SimConfig,
    registry: ComponentRegistry,
) -> tuple[Trace, SimLog]:
    """Event-driven run of a validated circuit under the given stimulus.

    Raises :class:`ValidationFailed` when the circuit has validation
    errors; everything else (X propagation, conflicts, oscillation)
    lands in the returned log rather than raising.
    """
    report = validate_circuit(c, registry)
    if not report.ok:
        raise ValidationFailed(report)

    log = SimLog()
    net_ids = {net.id: idx for idx, net in enumerate(c.nets)}
    network = Network()
    for net in c.nets:
        network.add_signal(net.label or net.id, init=Z)

    # external stimulus onto top inputs
    covered = set()
    for port in c.top_inputs:
        sig = net_ids[port.net]
        slot = network.add_driver(sig, init=X)
        spec = stim.assignments.get(port.name)
        if spec is None:
            log.warn(0, "UNCOVERED_INPUT", f"top input {port.name} has no stimulus; held at X")
            continue
        covered.add(port.name)
        events = [(t, slot, v) for t, v in expand(spec, cfg.horizon_ns)]
        network.add_process(_PreloadProc(f"stim:{port.name}", events))
    for name in sorted(set(stim.assignments) - covered):
        log.warn(0, "EXTRA_STIMULUS", f"stimulus {name} matches no top input; ignored")

    for inst in c.instances:
        model = registry.get(inst.part)
        delay = model.delay(inst.params)
        in_pins = []
        out_slots = {}
        for pin in model.pins:
            ref = PinRef(inst.id, pin.name)
            net = net_of(c, ref)
            if pin.direction is Direction.INPUT:
                if net is None and model.kind in (Kind.COMBINATIONAL, Kind.SEQUENTIAL, Kind.DISPLAY):
                    log.warn(0, "FLOATING_INPUT", f"input pin {ref} is floating; reads as X")
                in_pins.append((pin.name, None if net is None else net_ids[net.id]))
            elif net is not None:
                init = X
                if model.kind is Kind.COMBINATIONAL and "init_out" in inst.params:
                    init = ONE if inst.params["init_out"] else ZERO
                out_slots[pin.name] = network.add_driver(net_ids[net.id], init=init)

        if model.kind is Kind.COMBINATIONAL:
            network.add_process(
                _CombinationalProc(inst.id, model, inst.params, in_pins, out_slots, delay)
            )
        elif model.kind is Kind.SEQUENTIAL:
            network.add_process(
                _SequentialProc(
                    inst.id, model, inst.params, in_pins, out_slots, delay,
                    state=model.initial_state(inst.params),
                )
            )
        elif model.kind is Kind.SOURCE:
            for pin, slot in out_slots.items():
                const = model.constant_level(inst.params)
                if const is not None:
                    network.slot_init[slot] = ONE if const == "1" else ZERO
                    continue
                # clock template
                spec = stim_mod.clock(
                    inst.params.get("freq_hz", 1),
                    float(inst.params.get("duty", 0.5)),
                    int(inst.params.get("phase_ns", 0)),
                )
                network.slot_init[slot] = ZERO
                events = [
                    (t, slot, v) for t, v in expand(spec, cfg.horizon_ns) if t > 0
                ]
                network.add_process(_PreloadProc(f"clock:{inst.id}", events))
        # DISPLAY parts have no outputs and no process

    watch = _watch_list(c, cfg, net_ids)
    trace = run_network(
        network, cfg.horizon_ns, watch, log, max_deltas=cfg.max_deltas_per_instant
    )
    return trace, log


def _watch_list(c: Circuit, cfg: SimConfig, net_ids) -> list[tuple[str, int]]:
    if cfg.watch == ALL_NETS:
        return [(net.label or net.id, net_ids[net.id]) for net in c.nets]
    if cfg.watch == PORTS:
        probes = [Probe(target=p.net, label=p.name) for p in c.top_inputs + c.top_outputs]
    else:
        probes = cfg.watch
    watch = []
    for probe in probes:
        target = probe.target
        if target in net_ids:
            watch.append((probe.label, net_ids[target]))
            continue
        if "." in target:
            net = net_of(c, PinRef(*target.split(".", 1)))
            if net is not None:
                watch.append((probe.label, net_ids[net.id]))
                continue
        raise KeyError(f"probe target {target!r} does not resolve")
    return watch
