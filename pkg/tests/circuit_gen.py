"""Randomized combinational circuits plus a brute-force composition
oracle, shared by the kernel-equivalence and VHDL round-trip suites."""

from __future__ import annotations

import random

from logiclab.logic import ONE, Z, ZERO
from logiclab.netlist import Circuit, ComponentInstance, Net, PinRef, TopPort
from logiclab.parts import Direction, eval_combinational
from logiclab.stimulus import StimulusSet, pattern

_GATES = [
    ("74LS00", ("1A", "1B"), "1Y"),
    ("74LS02", ("1A", "1B"), "1Y"),
    ("74LS08", ("1A", "1B"), "1Y"),
    ("74LS32", ("1A", "1B"), "1Y"),
    ("74LS86", ("1A", "1B"), "1Y"),
    ("74LS04", ("1A",), "1Y"),
]


def random_combinational_circuit(seed: int, n_inputs: int, n_gates: int) -> Circuit:
    """A random gate DAG: every gate reads earlier nets only."""
    rng = random.Random(seed)
    instances = []
    nets = {}  # id -> list of PinRef
    available = []
    top_inputs = []
    for i in range(n_inputs):
        net_id = f"in{i}"
        nets[net_id] = []
        available.append(net_id)
        top_inputs.append(TopPort(f"x{i}", net_id))
    gate_outputs = []
    for g in range(n_gates):
        part, in_pins, out_pin = _GATES[rng.randrange(len(_GATES))]
        inst_id = f"g{g}"
        instances.append(ComponentInstance(id=inst_id, part=part))
        for pin in in_pins:
            nets[rng.choice(available)].append(PinRef(inst_id, pin))
        out_net = f"w{g}"
        nets[out_net] = [PinRef(inst_id, out_pin)]
        available.append(out_net)
        gate_outputs.append(out_net)
    n_outputs = max(1, min(4, n_gates // 3))
    out_nets = gate_outputs[-n_outputs:]
    top_outputs = [TopPort(f"y{i}", net_id) for i, net_id in enumerate(out_nets)]
    return Circuit(
        name=f"random{seed}",
        instances=tuple(instances),
        nets=tuple(Net(id=nid, endpoints=frozenset(eps)) for nid, eps in nets.items()),
        top_inputs=tuple(top_inputs),
        top_outputs=tuple(top_outputs),
    )


def compose_oracle(circuit: Circuit, registry, assignment: dict):
    """Direct functional composition of the gate truth functions, no
    events and no time."""
    values = {}
    for port in circuit.top_inputs:
        values[port.net] = assignment[port.name]
    # instances were created in topological order
    for inst in circuit.instances:
        model = registry.get(inst.part)
        inputs = {}
        for pin in model.pins:
            if pin.direction is not Direction.INPUT:
                continue
            net = _net_of(circuit, PinRef(inst.id, pin.name))
            inputs[pin.name] = values.get(net, Z)
        outs = eval_combinational(model, inputs)
        for pin in model.pins:
            if pin.direction is Direction.OUTPUT:
                net = _net_of(circuit, PinRef(inst.id, pin.name))
                if net is not None:
                    values[net] = outs[pin.name]
    return {port.name: values.get(port.net, Z) for port in circuit.top_outputs}


def _net_of(circuit: Circuit, ref: PinRef):
    for net in circuit.nets:
        if ref in net.endpoints:
            return net.id
    return None


def gray_sweep_stimulus(circuit: Circuit, step_ns: int):
    """Drive all 2^n assignments in Gray-code order, one per window."""
    n = len(circuit.top_inputs)
    total = 1 << n
    per_input = {i: [] for i in range(n)}
    for k in range(total):
        g = k ^ (k >> 1)
        for i in range(n):
            per_input[i].append((k * step_ns, ONE if (g >> i) & 1 else ZERO))
    assignments = {
        port.name: pattern(per_input[i]) for i, port in enumerate(circuit.top_inputs)
    }
    horizon = total * step_ns
    stim = StimulusSet(assignments=assignments, horizon_ns=horizon)
    sample_times = [(k + 1) * step_ns - 1 for k in range(total)]
    codes = [k ^ (k >> 1) for k in range(total)]
    return stim, sample_times, codes
