"""Netlist-to-VHDL emission: structural top entity, behavioral part
library, and a stimulus-reproducing testbench.

Output is deterministic: instances in id order, nets named after their
ids, library parts sorted.  Everything emitted parses and elaborates
through this package's own frontend; the style is locked by golden
files in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..netlist import Circuit, PinRef, net_of
from ..parts import ComponentRegistry, Direction, Kind
from ..stimulus import StimulusSet, expand
from . import names as nm
from .syntax import VhdlUnit

GENERATOR = "logiclab vhdl emitter v1"


class EmitError(ValueError):
    pass


@dataclass(frozen=True)
class _Variant:
    part: str
    delay_ns: int
    init: int | None

    @property
    def entity(self) -> str:
        return nm.entity_for_part(self.part, delay_ns=self.delay_ns, init=self.init)


def emit_vhdl(c: Circuit, registry: ComponentRegistry) -> list[VhdlUnit]:
    """Structural top-level entity plus the behavioral part library.

    Sources are inlined as driver processes, displays are dropped (they
    have no outputs), and per-instance delay/init parameter overrides
    get their own baked library variants.
    """
    top_name = nm.sanitize(c.name)
    used: dict[tuple, _Variant] = {}
    port_names, net_signal, input_feeds = _name_plan(c)

    lines = [f"-- generated by {GENERATOR}", ""]
    lines.append(f"entity {top_name} is")
    ports = []
    for port in c.top_inputs:
        ports.append(f"{port_names[port.name]} : in std_logic")
    for port in c.top_outputs:
        ports.append(f"{port_names[port.name]} : out std_logic")
    if ports:
        lines.append("  port (")
        for i, p in enumerate(ports):
            lines.append(f"    {p}{';' if i < len(ports) - 1 else ''}")
        lines.append("  );")
    lines.append("end entity;")
    lines.append("")
    lines.append(f"architecture structural of {top_name} is")
    declared = sorted(set(net_signal.values()) - {port_names[p.name] for p in c.top_inputs})
    for sig in declared:
        lines.append(f"  signal {sig} : std_logic;")
    lines.append("begin")

    for net_id, port_name in sorted(input_feeds):
        lines.append(f"  {net_signal[net_id]} <= {port_name};")

    for inst in c.instances:
        model = registry.get(inst.part)
        if model.kind is Kind.DISPLAY:
            lines.append(f"  -- display {inst.id} ({inst.part}) has no simulation outputs")
            continue
        if model.kind is Kind.SOURCE:
            lines.extend(_emit_source(inst, model, c, net_signal))
            continue
        variant = _variant_for(inst, model)
        used[(variant.part, variant.delay_ns, variant.init)] = variant
        assocs = []
        for pin in model.pins:
            net = net_of(c, PinRef(inst.id, pin.name))
            formal = nm.port_for_pin(pin.name)
            if net is None:
                if pin.direction is Direction.INPUT:
                    assocs.append(f"{formal} => 'X'")  # floating input reads unknown
                else:
                    assocs.append(f"{formal} => open")
            else:
                assocs.append(f"{formal} => {net_signal[net.id]}")
        lines.append(f"  {nm.sanitize(inst.id)} : {variant.entity} port map ({', '.join(assocs)});")

    for port in c.top_outputs:
        lines.append(f"  {port_names[port.name]} <= {net_signal[port.net]};")
    lines.append("end architecture;")
    top_unit = VhdlUnit(source_name=f"{top_name}.vhd", text="\n".join(lines) + "\n")

    lib_unit = VhdlUnit(
        source_name="logiclab_parts.vhd",
        text=_emit_library(registry, sorted(used.values(), key=lambda v: v.entity)),
    )
    return [lib_unit, top_unit]


def _name_plan(c: Circuit):
    """Assign VHDL names to ports and nets, resolving collisions."""
    taken: set[str] = set()

    def claim(base: str) -> str:
        name = base
        n = 2
        while name in taken:
            name = f"{base}_{n}"
            n += 1
        taken.add(name)
        return name

    port_names = {}
    for port in list(c.top_inputs) + list(c.top_outputs):
        port_names[port.name] = claim(nm.sanitize(port.name))

    input_ports_by_net: dict[str, list[str]] = {}
    for port in c.top_inputs:
        input_ports_by_net.setdefault(port.net, []).append(port_names[port.name])

    net_signal = {}
    input_feeds = []  # (net id, port name) pairs needing "sig <= port;"
    for net in c.nets:
        inputs = input_ports_by_net.get(net.id, [])
        if len(inputs) == 1:
            net_signal[net.id] = inputs[0]  # read the in port directly
        else:
            base = nm.sanitize(net.id)
            if not base.startswith("n_"):
                base = f"n_{base}"
            net_signal[net.id] = claim(base)
            for port_name in inputs:
                input_feeds.append((net.id, port_name))
    return port_names, net_signal, input_feeds


def _variant_for(inst, model) -> _Variant:
    delay = inst.params.get("delay_ns")
    init = inst.params.get("init")
    return _Variant(
        part=model.part,
        delay_ns=None if delay is None else int(delay),
        init=None if init in (None, 0) else int(init),
    )


def _emit_source(inst, model, c: Circuit, net_signal) -> list[str]:
    out = []
    for pin in model.output_pins:
        net = net_of(c, PinRef(inst.id, pin.name))
        if net is None:
            continue
        sig = net_signal[net.id]
        const = model.constant_level(inst.params)
        if const is not None:
            out.append(f"  {sig} <= '{const}';  -- {inst.id} ({inst.part})")
            continue
        from .. import stimulus as st

        spec = st.clock(
            inst.params.get("freq_hz", 1),
            float(inst.params.get("duty", 0.5)),
            int(inst.params.get("phase_ns", 0)),
        )
        period, high = spec.period_ns, spec.high_ns
        out.append(f"  {nm.sanitize(inst.id)}_drive : process")
        out.append("  begin")
        out.append(f"    {sig} <= '0';")
        out.append(f"    wait for {period - high} ns;")
        out.append(f"    {sig} <= '1';")
        out.append(f"    wait for {high} ns;")
        out.append("  end process;")
    return out


# ---------------------------------------------------------------------------
# part library


def _emit_library(registry: ComponentRegistry, variants: list[_Variant]) -> str:
    # every catalog chip once at default delay, plus any baked variants
    wanted: dict[str, _Variant] = {}
    for model in registry.models():
        if model.kind in (Kind.COMBINATIONAL, Kind.SEQUENTIAL):
            v = _Variant(part=model.part, delay_ns=None, init=None)
            wanted[v.entity] = v
    for v in variants:
        wanted[v.entity] = v
    lines = [f"-- behavioral part library, generated by {GENERATOR}"]
    for entity in sorted(wanted):
        v = wanted[entity]
        model = registry.get(v.part)
        delay = model.delay_ns if v.delay_ns is None else v.delay_ns
        init = 0 if v.init is None else v.init
        lines.append("")
        if model.kind is Kind.COMBINATIONAL:
            lines.extend(_emit_combinational(entity, model, delay))
        else:
            lines.extend(_emit_sequential(entity, model, delay, init))
    return "\n".join(lines) + "\n"


def _port_lines(model) -> list[str]:
    ins = [nm.port_for_pin(p.name) for p in model.input_pins]
    outs = [nm.port_for_pin(p.name) for p in model.output_pins]
    lines = ["  port ("]
    decls = []
    if ins:
        decls.append(f"    {', '.join(ins)} : in std_logic")
    if outs:
        decls.append(f"    {', '.join(outs)} : out std_logic")
    lines.append(";\n".join(decls))
    lines.append("  );")
    return lines


def _emit_combinational(entity: str, model, delay: int) -> list[str]:
    lines = [f"entity {entity} is"]
    lines += _port_lines(model)
    lines.append("end entity;")
    lines.append("")
    lines.append(f"architecture behavior of {entity} is")
    lines.append("begin")
    in_names, out_names, _ = model._table
    for out_pin in out_names:
        expr = _output_expr(model, out_pin)
        lines.append(f"  {nm.port_for_pin(out_pin)} <= {expr} after {delay} ns;")
    lines.append("end architecture;")
    return lines


def _output_expr(model, out_pin: str) -> str:
    behavior = model.behavior
    if "exprs" in behavior:
        return _sexpr_to_vhdl(behavior["exprs"][out_pin])
    # table models become a sum of minterms
    table = behavior["table"]
    order = table["inputs"]
    minterms = []
    for key in sorted(table["rows"]):
        if not table["rows"][key][out_pin]:
            continue
        terms = []
        for ch, name in zip(key, order):
            port = nm.port_for_pin(name)
            terms.append(port if ch == "1" else f"(not {port})")
        minterms.append("(" + " and ".join(terms) + ")")
    if not minterms:
        return "'0'"
    return " or ".join(minterms)


def _sexpr_to_vhdl(expr) -> str:
    if isinstance(expr, str):
        return nm.port_for_pin(expr)
    if isinstance(expr, int):
        return f"'{1 if expr else 0}'"
    op, *args = expr
    rendered = [_sexpr_to_vhdl(a) for a in args]
    if op == "not":
        return f"(not {rendered[0]})"
    if op in ("and", "or", "xor"):
        return "(" + f" {op} ".join(rendered) + ")"
    if op == "nand":
        return f"(not {'(' + ' and '.join(rendered) + ')'})"
    if op == "nor":
        return f"(not {'(' + ' or '.join(rendered) + ')'})"
    raise EmitError(f"cannot emit operator {op!r}")


def _emit_sequential(entity: str, model, delay: int, init: int) -> list[str]:
    lines = [f"entity {entity} is"]
    lines += _port_lines(model)
    lines.append("end entity;")
    lines.append("")
    lines.append(f"architecture behavior of {entity} is")
    body: list[str] = []
    template = model.behavior["template"]
    if template == "dff":
        for i, unit in enumerate(model.behavior["units"]):
            q = f"q{i}"
            bit = (init >> i) & 1
            lines.append(f"  signal {q} : std_logic := '{bit}';")
            p = {k: nm.port_for_pin(v) for k, v in unit.items()}
            body += [
                f"  process ({p['clk']}, {p['clr']}, {p['pre']})",
                "  begin",
                f"    if {p['clr']} = '0' then",
                f"      {q} <= '0';",
                f"    elsif {p['pre']} = '0' then",
                f"      {q} <= '1';",
                f"    elsif rising_edge({p['clk']}) then",
                f"      {q} <= {p['d']};",
                "    end if;",
                "  end process;",
                f"  {p['q']} <= {q} after {delay} ns;",
                f"  {p['qn']} <= not {q} after {delay} ns;",
            ]
    elif template == "counter4":
        b = model.behavior
        p = {k: nm.port_for_pin(v) for k, v in b.items() if isinstance(v, str) and k != "template"}
        data = [nm.port_for_pin(x) for x in b["data"]]
        q_out = [nm.port_for_pin(x) for x in b["q"]]
        qs = [f"q{i}" for i in range(4)]
        for i, q in enumerate(qs):
            lines.append(f"  signal {q} : std_logic := '{(init >> i) & 1}';")
        body += [
            f"  process ({p['clk']}, {p['clr']})",
            "  begin",
            f"    if {p['clr']} = '0' then",
            "      " + " ".join(f"{q} <= '0';" for q in qs),
            f"    elsif rising_edge({p['clk']}) then",
            f"      if {p['load']} = '0' then",
            "        " + " ".join(f"{q} <= {d};" for q, d in zip(qs, data)),
            f"      elsif {p['enp']} = '1' and {p['ent']} = '1' then",
            f"        q0 <= not q0;",
            f"        q1 <= q1 xor q0;",
            f"        q2 <= q2 xor (q1 and q0);",
            f"        q3 <= q3 xor (q2 and q1 and q0);",
            "      end if;",
            "    end if;",
            "  end process;",
        ]
        body += [f"  {out} <= {q} after {delay} ns;" for out, q in zip(q_out, qs)]
        body.append(f"  {p['rco']} <= {p['ent']} and q3 and q2 and q1 and q0 after {delay} ns;")
    else:
        raise EmitError(f"no emission template for {template!r}")
    lines.append("begin")
    lines += body
    lines.append("end architecture;")
    return lines


# ---------------------------------------------------------------------------
# testbench


def emit_testbench(c: Circuit, stim: StimulusSet) -> VhdlUnit:
    """A testbench reproducing the stimulus change lists exactly.

    Phase-free clocks use a compact free-running process; everything
    else is unrolled assignment/wait pairs ending in a final wait.
    """
    top_name = nm.sanitize(c.name)
    port_names, _, _ = _name_plan(c)
    missing = [p.name for p in c.top_inputs if p.name not in stim.assignments]
    if missing:
        raise EmitError(f"stimulus does not bind top inputs: {', '.join(missing)}")

    tb = f"{top_name}_tb"
    lines = [f"-- generated by {GENERATOR}", "", f"entity {tb} is", "end entity;", ""]
    lines.append(f"architecture testbench of {tb} is")
    for port in list(c.top_inputs) + list(c.top_outputs):
        lines.append(f"  signal {port_names[port.name]} : std_logic;")
    lines.append("begin")
    assocs = ", ".join(
        f"{port_names[p.name]} => {port_names[p.name]}"
        for p in list(c.top_inputs) + list(c.top_outputs)
    )
    lines.append(f"  dut : {top_name} port map ({assocs});")
    for port in c.top_inputs:
        spec = stim.assignments[port.name]
        sig = port_names[port.name]
        lines.append(f"  {sig}_drive : process")
        lines.append("  begin")
        if spec.kind == "CLOCK" and spec.phase_ns == 0:
            period, high = spec.period_ns, spec.high_ns
            lines.append(f"    {sig} <= '0';")
            lines.append(f"    wait for {period - high} ns;")
            lines.append(f"    {sig} <= '1';")
            lines.append(f"    wait for {high} ns;")
        else:
            changes = expand(spec, stim.horizon_ns)
            for (t, v), nxt in zip(changes, list(changes[1:]) + [None]):
                lines.append(f"    {sig} <= '{v}';")
                if nxt is not None:
                    lines.append(f"    wait for {nxt[0] - t} ns;")
            lines.append("    wait;")
        lines.append("  end process;")
    lines.append("end architecture;")
    return VhdlUnit(source_name=f"{tb}.vhd", text="\n".join(lines) + "\n", kind="TESTBENCH")
