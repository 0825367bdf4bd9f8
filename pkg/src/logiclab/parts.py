"""Catalog of behavioral part models: 74-series chips, displays, sources.

Models are data: one JSON fixture per part under ``parts_data/``.
Combinational behavior is given as boolean expressions (or an explicit
function table) and compiled to a lookup table at load time; sequential
parts pick a parameterized update template.  Adding a part means adding
a fixture, not code, as long as an existing template fits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from typing import Callable, Optional

from .logic import ONE, X, Z, ZERO, LogicValue

_ENUM_LIMIT = 8  # unknown-input enumeration cap; beyond this outputs go X


class Direction(Enum):
    INPUT = "INPUT"
    OUTPUT = "OUTPUT"


class Kind(Enum):
    COMBINATIONAL = "COMBINATIONAL"
    SEQUENTIAL = "SEQUENTIAL"
    SOURCE = "SOURCE"
    DISPLAY = "DISPLAY"


@dataclass(frozen=True)
class PinSpec:
    name: str
    direction: Direction
    index: int  # physical package pin, documentation only


@dataclass(frozen=True)
class EdgeEvent:
    """One observed pin transition, as seen by a sequential model."""

    pin: str
    old: LogicValue
    new: LogicValue

    @property
    def rising(self) -> bool:
        return self.old is ZERO and self.new is ONE


@dataclass(frozen=True)
class DisplayState:
    lit: frozenset
    unknown: frozenset


class ModelError(ValueError):
    """A part fixture that cannot be compiled."""


@dataclass(frozen=True)
class ParamSpec:
    kind: str  # "int" | "number" | "fraction" | "choice"
    minimum: Optional[float] = None
    maximum: Optional[float] = None
    choices: tuple = ()

    def check(self, value) -> Optional[str]:
        if self.kind == "choice":
            if value not in self.choices:
                return f"must be one of {list(self.choices)}, got {value!r}"
            return None
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return f"must be a number, got {value!r}"
        if self.kind == "int" and not isinstance(value, int):
            return f"must be an integer, got {value!r}"
        if self.kind == "fraction" and not (0 < value < 1):
            return f"must lie strictly between 0 and 1, got {value!r}"
        if self.minimum is not None and value < self.minimum:
            return f"must be >= {self.minimum}, got {value!r}"
        if self.maximum is not None and value > self.maximum:
            return f"must be <= {self.maximum}, got {value!r}"
        return None


@dataclass(frozen=True)
class ComponentModel:
    part: str
    kind: Kind
    pins: tuple[PinSpec, ...]
    delay_ns: int
    behavior: dict
    params_spec: dict[str, ParamSpec] = field(default_factory=dict)
    # compiled combinational lookup: input order, output order, rows[input_bits] -> output bits
    _table: Optional[tuple[tuple[str, ...], tuple[str, ...], tuple[int, ...]]] = None

    def pin(self, name: str) -> Optional[PinSpec]:
        for p in self.pins:
            if p.name == name:
                return p
        return None

    @property
    def input_pins(self) -> tuple[PinSpec, ...]:
        return tuple(p for p in self.pins if p.direction is Direction.INPUT)

    @property
    def output_pins(self) -> tuple[PinSpec, ...]:
        return tuple(p for p in self.pins if p.direction is Direction.OUTPUT)

    def check_param(self, key: str, value) -> Optional[str]:
        spec = self.params_spec.get(key)
        if spec is None:
            return f"part {self.part} declares no param {key!r}"
        problem = spec.check(value)
        return f"param {key!r} {problem}" if problem else None

    def delay(self, params: dict) -> int:
        return int(params.get("delay_ns", self.delay_ns))

    def constant_level(self, params: dict) -> Optional[str]:
        """'0'/'1' for constant sources (short-circuit detection), else None."""
        if self.kind is not Kind.SOURCE or self.behavior.get("template") != "constant":
            return None
        if "level" in self.behavior:
            return self.behavior["level"]
        return str(params.get("value", self.behavior.get("default", 0)))

    # -- sequential state ---------------------------------------------------

    @property
    def state_width(self) -> int:
        if self.kind is not Kind.SEQUENTIAL:
            return 0
        if self.behavior["template"] == "dff":
            return len(self.behavior["units"])
        return 4  # counter4

    def initial_state(self, params: dict) -> tuple[LogicValue, ...]:
        init = int(params.get("init", 0))
        return tuple(ONE if (init >> i) & 1 else ZERO for i in range(self.state_width))


# ---------------------------------------------------------------------------
# behavior evaluation


def eval_combinational(model: ComponentModel, inputs: dict[str, LogicValue]) -> dict[str, LogicValue]:
    """All output pin values for the given input pin values.

    Unknown inputs (X or Z) are handled by enumerating both binary
    possibilities: an output only stays known if every completion
    agrees, so e.g. a NAND with one input at 0 reports 1 regardless
    of the other input.
    """
    if model.kind is not Kind.COMBINATIONAL:
        raise ModelError(f"{model.part} is not combinational")
    in_names, out_names, rows = model._table
    vals = []
    for name in in_names:
        if name not in inputs:
            raise KeyError(f"{model.part}: missing input pin {name!r}")
        vals.append(inputs[name])

    unknown = [i for i, v in enumerate(vals) if not v.is_known]
    if len(unknown) > _ENUM_LIMIT:
        return {name: X for name in out_names}

    base = 0
    for i, v in enumerate(vals):
        if v is ONE:
            base |= 1 << i
    seen_one = 0
    seen_zero = 0
    for combo in range(1 << len(unknown)):
        code = base
        for j, i in enumerate(unknown):
            if (combo >> j) & 1:
                code |= 1 << i
        bits = rows[code]
        seen_one |= bits
        seen_zero |= ~bits
    out = {}
    for k, name in enumerate(out_names):
        one = (seen_one >> k) & 1
        zero = (seen_zero >> k) & 1
        out[name] = X if (one and zero) else (ONE if one else ZERO)
    return out


def step_sequential(
    model: ComponentModel,
    state: tuple[LogicValue, ...],
    inputs: dict[str, LogicValue],
    edge: EdgeEvent,
) -> tuple[tuple[LogicValue, ...], dict[str, LogicValue]]:
    """Next state and outputs after one observed pin transition.

    Asynchronous clear/preset dominate; a clock pin landing on X or Z
    poisons the affected state bits to X.
    """
    if model.kind is not Kind.SEQUENTIAL:
        raise ModelError(f"{model.part} is not sequential")
    template = model.behavior["template"]
    if template == "dff":
        return _step_dff(model, state, inputs, edge)
    if template == "counter4":
        return _step_counter4(model, state, inputs, edge)
    raise ModelError(f"unknown sequential template {template!r}")


def _step_dff(model, state, inputs, edge):
    new_state = list(state)
    outputs = {}
    for i, unit in enumerate(model.behavior["units"]):
        q = new_state[i]
        clr = inputs[unit["clr"]]
        pre = inputs[unit["pre"]]
        if clr is ZERO and pre is ZERO:
            q = X  # both asserted: the real part's Q=QN=1 is unrepresentable
        elif clr is ZERO:
            q = ZERO
        elif pre is ZERO:
            q = ONE
        elif not clr.is_known or not pre.is_known:
            q = X
        elif edge.pin == unit["clk"]:
            if edge.rising:
                q = inputs[unit["d"]] if inputs[unit["d"]].is_known else X
            elif not edge.new.is_known:
                q = X
        new_state[i] = q
        outputs[unit["q"]] = q
        outputs[unit["qn"]] = _inv(q)
    return tuple(new_state), outputs


def _step_counter4(model, state, inputs, edge):
    b = model.behavior
    clr = inputs[b["clr"]]
    bits = list(state)
    if clr is ZERO:
        bits = [ZERO] * 4
    elif not clr.is_known:
        bits = [X] * 4
    elif edge.pin == b["clk"]:
        if edge.rising:
            load = inputs[b["load"]]
            enp, ent = inputs[b["enp"]], inputs[b["ent"]]
            if load is ZERO:
                bits = [inputs[p] if inputs[p].is_known else X for p in b["data"]]
            elif not load.is_known:
                bits = [X] * 4
            elif enp is ONE and ent is ONE:
                bits = _increment(bits)
            elif not (enp.is_known and ent.is_known):
                bits = [X] * 4
        elif not edge.new.is_known:
            bits = [X] * 4
    outputs = dict(zip(b["q"], bits))
    outputs[b["rco"]] = _rco(inputs[b["ent"]], bits)
    return tuple(bits), outputs


def _increment(bits):
    if not all(v.is_known for v in bits):
        return [X] * 4
    value = sum(1 << i for i, v in enumerate(bits) if v is ONE)
    value = (value + 1) & 0xF
    return [ONE if (value >> i) & 1 else ZERO for i in range(4)]


def _rco(ent, bits):
    if ent is ZERO or any(v is ZERO for v in bits):
        return ZERO
    if ent is ONE and all(v is ONE for v in bits):
        return ONE
    return X


def _inv(v):
    if v is ZERO:
        return ONE
    if v is ONE:
        return ZERO
    return X


def decode_display(model: ComponentModel, inputs: dict[str, LogicValue]) -> DisplayState:
    """Which display segments are lit (input 1 = lit, common-cathode)."""
    if model.kind is not Kind.DISPLAY:
        raise ModelError(f"{model.part} is not a display")
    lit, unknown = set(), set()
    for seg in model.behavior["segments"]:
        v = inputs.get(seg, Z)
        if v is ONE:
            lit.add(seg)
        elif not v.is_known:
            unknown.add(seg)
    return DisplayState(lit=frozenset(lit), unknown=frozenset(unknown))


# ---------------------------------------------------------------------------
# fixture loading


def load_model(doc: dict) -> ComponentModel:
    if doc.get("format_version") != 1:
        raise ModelError(f"unsupported model format_version {doc.get('format_version')!r}")
    kind = Kind(doc["kind"])
    pins = tuple(
        PinSpec(p["name"], Direction(p["direction"]), p["index"]) for p in doc["pins"]
    )
    if not pins:
        raise ModelError(f"{doc['part']}: a model needs at least one pin")
    names = [p.name for p in pins]
    if len(set(names)) != len(names):
        raise ModelError(f"{doc['part']}: duplicate pin names")

    params_spec = {"delay_ns": ParamSpec("int", minimum=0)}
    if kind is Kind.COMBINATIONAL:
        params_spec["init_out"] = ParamSpec("choice", choices=(0, 1))
    elif kind is Kind.SEQUENTIAL:
        params_spec["init"] = ParamSpec("int", minimum=0)
    for name, raw in doc.get("params", {}).items():
        params_spec[name] = ParamSpec(
            raw["kind"],
            minimum=raw.get("min"),
            maximum=raw.get("max"),
            choices=tuple(raw.get("choices", ())),
        )

    model = ComponentModel(
        part=doc["part"],
        kind=kind,
        pins=pins,
        delay_ns=doc.get("delay_ns", 10),
        behavior=doc.get("behavior", {}),
        params_spec=params_spec,
    )
    if kind is Kind.COMBINATIONAL:
        object.__setattr__(model, "_table", _compile_table(model))
    if kind is Kind.SEQUENTIAL:
        cap = (1 << model.state_width) - 1
        params_spec["init"] = ParamSpec("int", minimum=0, maximum=cap)
    return model


def _compile_table(model: ComponentModel):
    in_names = tuple(p.name for p in model.input_pins)
    out_names = tuple(p.name for p in model.output_pins)
    if len(in_names) > 12:
        raise ModelError(f"{model.part}: too many inputs to tabulate")
    behavior = model.behavior
    rows = []
    if "exprs" in behavior:
        exprs = behavior["exprs"]
        missing = set(out_names) - set(exprs)
        if missing:
            raise ModelError(f"{model.part}: no expression for outputs {sorted(missing)}")
        compiled = {name: _compile_expr(exprs[name], in_names, model.part) for name in out_names}
        for code in range(1 << len(in_names)):
            env = [(code >> i) & 1 for i in range(len(in_names))]
            bits = 0
            for k, name in enumerate(out_names):
                if compiled[name](env):
                    bits |= 1 << k
            rows.append(bits)
    elif "table" in behavior:
        table = behavior["table"]
        order = table["inputs"]
        if sorted(order) != sorted(in_names):
            raise ModelError(f"{model.part}: table inputs do not match input pins")
        for code in range(1 << len(in_names)):
            key = "".join(
                str((code >> in_names.index(name)) & 1) for name in order
            )
            row = table["rows"].get(key)
            if row is None:
                raise ModelError(f"{model.part}: table is missing row {key!r}")
            bits = 0
            for k, name in enumerate(out_names):
                if row[name]:
                    bits |= 1 << k
            rows.append(bits)
    else:
        raise ModelError(f"{model.part}: combinational model needs exprs or table")
    return (in_names, out_names, tuple(rows))


def _compile_expr(expr, in_names, part) -> Callable[[list], int]:
    if isinstance(expr, str):
        if expr not in in_names:
            raise ModelError(f"{part}: expression references unknown pin {expr!r}")
        idx = in_names.index(expr)
        return lambda env: env[idx]
    if isinstance(expr, int):
        return lambda env: 1 if expr else 0
    if not isinstance(expr, list) or not expr:
        raise ModelError(f"{part}: bad expression node {expr!r}")
    op, args = expr[0], [_compile_expr(a, in_names, part) for a in expr[1:]]
    if op == "not":
        (f,) = args
        return lambda env: 1 - f(env)
    if op == "and":
        return lambda env: int(all(f(env) for f in args))
    if op == "or":
        return lambda env: int(any(f(env) for f in args))
    if op == "nand":
        return lambda env: int(not all(f(env) for f in args))
    if op == "nor":
        return lambda env: int(not any(f(env) for f in args))
    if op == "xor":
        return lambda env: sum(f(env) for f in args) & 1
    raise ModelError(f"{part}: unknown operator {op!r}")


class ComponentRegistry:
    """Immutable name -> model map; built once and shared."""

    def __init__(self, models: dict[str, ComponentModel]):
        self._models = dict(models)

    def get(self, part: str) -> Optional[ComponentModel]:
        return self._models.get(part)

    def __contains__(self, part: str) -> bool:
        return part in self._models

    def parts(self) -> list[str]:
        return sorted(self._models)

    def models(self) -> list[ComponentModel]:
        return [self._models[name] for name in self.parts()]


_BUILTIN: Optional[ComponentRegistry] = None


def builtin_registry() -> ComponentRegistry:
    """The v1 catalog, loaded from the packaged fixtures (cached)."""
    global _BUILTIN
    if _BUILTIN is None:
        models = {}
        root = resources.files("logiclab") / "parts_data"
        for entry in sorted(root.iterdir(), key=lambda e: e.name):
            if entry.name.endswith(".json"):
                model = load_model(json.loads(entry.read_text(encoding="utf-8")))
                models[model.part] = model
        _BUILTIN = ComponentRegistry(models)
    return _BUILTIN
