"""Elaboration: bind names, flatten the instance hierarchy, and produce
a process network the simulation engine can run.

Signals are flattened to scalar bits (a 4-bit vector becomes four
engine signals); port association aliases formal and actual onto the
same engine signal, exactly like a netlist net.  The nine-valued
std_logic alphabet is projected onto {0,1,X,Z}: '0'/'L' -> 0,
'1'/'H' -> 1, 'Z' -> Z, everything else -> X.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..engine import Activation, Network, Process, SimLog, Trace, run_network
from ..logic import ONE, X, Z, ZERO, LogicValue, v_and, v_not, v_or, v_xor
from ..parts import ComponentRegistry, Direction, Kind
from ..stimulus import StimulusSet, expand
from . import names as nm
from .syntax import (
    Ast,
    Binary,
    CaseStmt,
    CharLit,
    ConcurrentAssign,
    Diagnostic,
    EdgeCall,
    IfStmt,
    Instantiation,
    IntLit,
    Name,
    NullStmt,
    OPEN,
    ProcessStmt,
    SeqAssign,
    SignalDecl,
    StringLit,
    Unary,
    WaitStmt,
    error,
)

_PROJECT = {"0": ZERO, "L": ZERO, "1": ONE, "H": ONE, "Z": Z}


def project(ch: str) -> LogicValue:
    return _PROJECT.get(ch.upper(), X)


# value kinds used by static type inference
SL = ("sl",)
INT = ("int",)


def VEC(width: int):
    return ("vec", width)


@dataclass
class _SignalRef:
    """A resolved name: engine signal ids, most significant bit first."""

    bits: list[int]
    is_vector: bool

    @property
    def kind(self):
        return VEC(len(self.bits)) if self.is_vector else SL


@dataclass
class ElaboratedDesign:
    top: str
    network: Network
    signal_map: dict[str, int] = field(default_factory=dict)
    # port name -> (direction, bits msb-first, is_vector)
    ports: dict[str, tuple[str, list[int], bool]] = field(default_factory=dict)
    port_order: list[str] = field(default_factory=list)
    # kept so each simulation run can rebuild a pristine network
    # (processes carry run state: register contents, wait positions)
    source_ast: Optional[Ast] = None
    source_registry: Optional[ComponentRegistry] = None

    def fresh(self) -> "ElaboratedDesign":
        design, _ = elaborate(self.source_ast, self.top, self.source_registry)
        return design


class ElaborationFailed(ValueError):
    def __init__(self, diags):
        super().__init__("design does not elaborate")
        self.diagnostics = diags


def elaborate(
    ast: Ast, top: str, registry: Optional[ComponentRegistry] = None
) -> tuple[Optional[ElaboratedDesign], list[Diagnostic]]:
    """Flatten the design under ``top`` into an executable network.

    Returns (design, diagnostics); design is None when an ERROR
    diagnostic was produced.
    """
    elab = _Elaborator(ast, registry)
    design = elab.run(top.lower())
    if design is not None:
        design.source_ast = ast
        design.source_registry = registry
    has_error = any(d.severity == "ERROR" for d in elab.diags)
    return (None if has_error else design), elab.diags


class _Elaborator:
    def __init__(self, ast: Ast, registry: Optional[ComponentRegistry]):
        self.ast = ast
        self.registry = registry
        self.diags: list[Diagnostic] = []
        self.network = Network()
        self.design: Optional[ElaboratedDesign] = None

    def err(self, category, loc, message):
        self.diags.append(error(category, loc or _nowhere(), message))

    def run(self, top: str) -> Optional[ElaboratedDesign]:
        entity = self.ast.entities.get(top)
        if entity is None:
            self.err("ELABORATION", None, f"no entity named {top}")
            return None
        self.design = ElaboratedDesign(top=top, network=self.network)
        scope: dict[str, _SignalRef] = {}
        for port in entity.ports:
            for name in port.names:
                ref = self._make_signal(name, port.type, None, port.loc)
                scope[name] = ref
                self.design.ports[name] = (port.direction, list(ref.bits), ref.is_vector)
                self.design.port_order.append(name)
        self._instantiate(entity.name, scope, path="")
        return self.design

    # -- structure ------------------------------------------------------------

    def _make_signal(self, name: str, type_mark, init_value, loc, path: str = "") -> _SignalRef:
        if type_mark.name == "std_logic":
            bits = [self.network.add_signal(path + name, init=init_value or X)]
            self.design.signal_map[path + name] = bits[0]
            return _SignalRef(bits=bits, is_vector=False)
        if type_mark.name == "std_logic_vector":
            bits = []
            for i in range(type_mark.high, type_mark.low - 1, -1):
                label = f"{path}{name}({i})"
                sig = self.network.add_signal(label, init=X)
                self.design.signal_map[label] = sig
                bits.append(sig)
            if init_value is not None:
                self.err("TYPE", loc, "vector port defaults are not supported")
            return _SignalRef(bits=bits, is_vector=True)
        self.err("TYPE", loc, f"unsupported type {type_mark.name!r} (use std_logic or std_logic_vector)")
        bits = [self.network.add_signal(path + name, init=X)]
        return _SignalRef(bits=bits, is_vector=False)

    def _instantiate(self, entity_name: str, scope: dict[str, _SignalRef], path: str) -> None:
        arch = self.ast.architectures.get(entity_name)
        if arch is None:
            self.err("ELABORATION", self.ast.entities[entity_name].loc,
                     f"entity {entity_name} has no architecture")
            return
        for decl in arch.decls:
            if isinstance(decl, SignalDecl):
                init = None
                if decl.init is not None:
                    init = self._const_bits(decl.init, decl.type, decl.loc)
                for name in decl.names:
                    if name in scope:
                        self.err("NAME", decl.loc, f"signal {name} is already declared here")
                        continue
                    if decl.type.name == "std_logic_vector" and init is not None:
                        ref = self._make_signal(name, decl.type, None, decl.loc, path)
                        for sig, bit in zip(ref.bits, init):
                            self.network.signal_init[sig] = bit
                    else:
                        ref = self._make_signal(
                            name, decl.type, init[0] if init else None, decl.loc, path
                        )
                    scope[name] = ref
            # component declarations carry no binding information we use

        for stmt in arch.stmts:
            if isinstance(stmt, ConcurrentAssign):
                self._elab_assign(stmt, scope, path)
            elif isinstance(stmt, ProcessStmt):
                self._elab_process(stmt, scope, path)
            elif isinstance(stmt, Instantiation):
                self._elab_instantiation(stmt, scope, path)

    def _elab_instantiation(self, inst: Instantiation, scope, path: str) -> None:
        child_entity = self.ast.entities.get(inst.unit)
        if child_entity is not None:
            bindings: dict[str, _SignalRef] = {}
            formals = {name: p for p in child_entity.ports for name in p.names}
            seen = set()
            for formal, actual in inst.assocs:
                port = formals.get(formal)
                if port is None:
                    self.err("NAME", inst.loc, f"{inst.unit} has no port {formal}")
                    continue
                if formal in seen:
                    self.err("NAME", inst.loc, f"port {formal} associated twice")
                    continue
                seen.add(formal)
                ref = self._bind_actual(actual, port, scope, inst)
                if ref is not None:
                    bindings[formal] = ref
            for name, port in formals.items():
                if name in bindings:
                    continue
                if port.direction == "in":
                    self.err("ELABORATION", inst.loc,
                             f"input port {name} of {inst.unit} is not associated")
                # dangling outputs get a private sink signal
                bindings[name] = self._make_signal(
                    f"{inst.label}.{name}", port.type, None, inst.loc, path
                )
            self._instantiate(child_entity.name, bindings, f"{path}{inst.label}/")
            return

        part = None
        if self.registry is not None:
            part_name = nm.part_for_entity(inst.unit, self.registry.parts())
            part = self.registry.get(part_name) if part_name else None
        if part is None:
            self.err("ELABORATION", inst.loc,
                     f"{inst.unit} names neither a parsed entity nor a catalog part")
            return
        self._bind_catalog(inst, part, scope, path)

    def _bind_actual(self, actual, port, scope, inst) -> Optional[_SignalRef]:
        width = port.type.width
        if actual == OPEN:
            if port.direction == "in":
                self.err("ELABORATION", inst.loc,
                         f"input port {port.names[0]} cannot be open")
            return None  # a sink signal gets created by the caller
        if isinstance(actual, CharLit):
            if width != 1:
                self.err("TYPE", actual.loc, "scalar literal bound to a vector port")
                return None
            sig = self.network.add_signal(f"{inst.label}.{port.names[0]}", init=project(actual.value))
            return _SignalRef(bits=[sig], is_vector=False)
        if isinstance(actual, StringLit):
            if width != len(actual.value):
                self.err("TYPE", actual.loc, "literal width does not match port width")
                return None
            bits = [
                self.network.add_signal(f"{inst.label}.{port.names[0]}({i})", init=project(ch))
                for i, ch in enumerate(actual.value)
            ]
            return _SignalRef(bits=bits, is_vector=True)
        if isinstance(actual, Name):
            ref = self._resolve_name(actual, scope)
            if ref is None:
                return None
            if len(ref.bits) != width:
                self.err("TYPE", actual.loc,
                         f"actual is {len(ref.bits)} bit(s) wide, port wants {width}")
                return None
            return ref
        self.err("ELABORATION", inst.loc, "port actuals must be names, literals or open")
        return None

    def _bind_catalog(self, inst: Instantiation, model, scope, path: str) -> None:
        port_to_pin = {nm.port_for_pin(p.name): p for p in model.pins}
        in_pins: list[tuple[str, Optional[int]]] = []
        out_slots: dict[str, int] = {}
        bound = {}
        for formal, actual in inst.assocs:
            pin = port_to_pin.get(formal)
            if pin is None:
                self.err("NAME", inst.loc, f"part {model.part} has no port {formal}")
                continue
            if actual == OPEN:
                continue
            fake_port = _PinPort(pin.name)
            ref = self._bind_actual(actual, fake_port, scope, inst)
            if ref is not None:
                bound[pin.name] = ref.bits[0]
        for pin in model.pins:
            if pin.direction is Direction.INPUT:
                in_pins.append((pin.name, bound.get(pin.name)))
            elif pin.name in bound:
                out_slots[pin.name] = self.network.add_driver(bound[pin.name], init=X)
        from ..kernel import _CombinationalProc, _SequentialProc  # shared chip executors

        label = f"{path}{inst.label}"
        if model.kind is Kind.COMBINATIONAL:
            self.network.add_process(
                _CombinationalProc(label, model, {}, in_pins, out_slots, model.delay_ns)
            )
        elif model.kind is Kind.SEQUENTIAL:
            self.network.add_process(
                _SequentialProc(label, model, {}, in_pins, out_slots, model.delay_ns,
                                state=model.initial_state({}))
            )
        else:
            self.err("ELABORATION", inst.loc,
                     f"part {model.part} cannot be instantiated from VHDL")

    # -- behavioral statements --------------------------------------------------

    def _elab_assign(self, stmt: ConcurrentAssign, scope, path: str) -> None:
        checker = _Checker(self, scope)
        target = checker.resolve_target(stmt.target)
        if target is None:
            return
        branches = []
        for wf in stmt.branches:
            vkind = checker.infer(wf.value)
            checker.check_assignable(vkind, target, stmt.target.loc)
            ckind = checker.infer(wf.cond) if wf.cond is not None else None
            if ckind is not None and ckind != SL:
                self.err("TYPE", stmt.loc, "condition must be std_logic")
            branches.append(wf)
        slots = [self.network.add_driver(sig, init=X) for sig in target.bits]
        proc = _AssignProc(
            name=f"{path}assign:{stmt.target.ident}",
            elab=checker,
            target=target,
            slots=slots,
            branches=branches,
        )
        proc.sensitivity = tuple(sorted(checker.reads))
        self.network.add_process(proc)

    def _elab_process(self, stmt: ProcessStmt, scope, path: str) -> None:
        checker = _Checker(self, scope)
        wait_count = _count_waits(stmt.body)
        if stmt.sensitivity is None and wait_count == 0:
            self.err("ELABORATION", stmt.loc,
                     "process needs a sensitivity list or at least one wait")
            return
        if stmt.sensitivity is not None and wait_count > 0:
            self.err("ELABORATION", stmt.loc,
                     "a process with a sensitivity list cannot contain wait")
            return
        writes: dict[int, int] = {}  # signal -> driver slot
        checker.collect_writes(stmt.body, writes_out=writes)
        checker.check_body(stmt.body)
        sens_bits: list[int] = []
        if stmt.sensitivity is not None:
            for name in stmt.sensitivity:
                ref = self._resolve_name(name, scope)
                if ref is not None:
                    sens_bits.extend(ref.bits)
        label = stmt.label or "process"
        proc = _VhdlProc(
            name=f"{path}{label}",
            elab=checker,
            body=stmt.body,
            slots=writes,
            wait_driven=stmt.sensitivity is None,
        )
        proc.sensitivity = tuple(sorted(set(sens_bits)))
        self.network.add_process(proc)

    def _resolve_name(self, name: Name, scope) -> Optional[_SignalRef]:
        ref = scope.get(name.ident)
        if ref is None:
            self.err("NAME", name.loc,
                     f"{name.ident} is not declared; declare it as a signal or port")
            return None
        if name.index is None:
            return ref
        if not ref.is_vector:
            self.err("TYPE", name.loc, f"{name.ident} is not a vector")
            return None
        if not isinstance(name.index, IntLit):
            self.err("ELABORATION", name.loc, "only constant indices are supported")
            return None
        idx = name.index.value
        width = len(ref.bits)
        if not 0 <= idx < width:
            self.err("TYPE", name.loc, f"index {idx} outside the vector range")
            return None
        # bits are stored msb-first; index 0 is the low end of (high downto 0)
        return _SignalRef(bits=[ref.bits[width - 1 - idx]], is_vector=False)

    def _const_bits(self, expr, type_mark, loc) -> Optional[list[LogicValue]]:
        if isinstance(expr, CharLit):
            if type_mark.is_vector:
                self.err("TYPE", loc, "vector initial value must be a string literal")
                return None
            return [project(expr.value)]
        if isinstance(expr, StringLit):
            if not type_mark.is_vector or type_mark.width != len(expr.value):
                self.err("TYPE", loc, "initial value width does not match the signal")
                return None
            return [project(ch) for ch in expr.value]
        self.err("TYPE", loc, "initial values must be literals")
        return None


class _PinPort:
    """Adapter giving a catalog pin the same surface as a PortDecl."""

    def __init__(self, pin_name):
        self.names = (pin_name,)
        self.direction = "in"
        self.type = _ScalarType()


class _ScalarType:
    width = 1
    is_vector = False
    name = "std_logic"


def _count_waits(body) -> int:
    count = 0
    for stmt in body:
        if isinstance(stmt, WaitStmt):
            count += 1
        elif isinstance(stmt, IfStmt):
            count += sum(_count_waits(arm_body) for _, arm_body in stmt.arms)
        elif isinstance(stmt, CaseStmt):
            count += sum(_count_waits(arm_body) for _, arm_body in stmt.arms)
    return count


def _nowhere():
    from .syntax import Loc

    return Loc("<design>", 1, 1)


# ---------------------------------------------------------------------------
# static checking + name resolution for interpreted code


class _Checker:
    """Resolves names inside one statement region and infers value kinds."""

    def __init__(self, elab: _Elaborator, scope):
        self.elab = elab
        self.scope = scope
        self.refs: dict[int, _SignalRef] = {}  # id(Name node) -> resolution
        self.reads: set[int] = set()

    def resolve_target(self, name: Name) -> Optional[_SignalRef]:
        ref = self.elab._resolve_name(name, self.scope)
        if ref is not None:
            self.refs[id(name)] = ref
        return ref

    def check_assignable(self, vkind, target: _SignalRef, loc) -> None:
        tk = target.kind
        if vkind is None:
            return
        if tk == SL and vkind != SL:
            self.elab.err("TYPE", loc, "expected a std_logic value")
        elif tk != SL:
            if vkind == INT:
                return  # integer literals convert to the target width
            if vkind[0] != "vec" or vkind[1] != tk[1]:
                self.elab.err("TYPE", loc, f"expected a {tk[1]}-bit value")

    def collect_writes(self, body, writes_out: dict) -> None:
        for stmt in body:
            if isinstance(stmt, SeqAssign):
                ref = self.resolve_target(stmt.target)
                if ref is not None:
                    for sig in ref.bits:
                        if sig not in writes_out:
                            writes_out[sig] = self.elab.network.add_driver(sig, init=_driver_init(self.elab.network, sig))
            elif isinstance(stmt, IfStmt):
                for _, arm in stmt.arms:
                    self.collect_writes(arm, writes_out)
            elif isinstance(stmt, CaseStmt):
                for _, arm in stmt.arms:
                    self.collect_writes(arm, writes_out)

    def check_body(self, body) -> None:
        for stmt in body:
            if isinstance(stmt, SeqAssign):
                target = self.refs.get(id(stmt.target))
                vkind = self.infer(stmt.value)
                if target is not None:
                    self.check_assignable(vkind, target, stmt.loc)
            elif isinstance(stmt, IfStmt):
                for cond, arm in stmt.arms:
                    if cond is not None and self.infer(cond) not in (SL, None):
                        self.elab.err("TYPE", stmt.loc, "condition must be std_logic")
                    self.check_body(arm)
            elif isinstance(stmt, CaseStmt):
                self.infer(stmt.subject)
                for choices, arm in stmt.arms:
                    if choices:
                        for choice in choices:
                            self.infer(choice)
                    self.check_body(arm)

    def infer(self, expr):
        if isinstance(expr, CharLit):
            return SL
        if isinstance(expr, StringLit):
            return VEC(len(expr.value))
        if isinstance(expr, IntLit):
            return INT
        if isinstance(expr, Name):
            ref = self.elab._resolve_name(expr, self.scope)
            if ref is None:
                return None
            self.refs[id(expr)] = ref
            self.reads.update(ref.bits)
            return ref.kind
        if isinstance(expr, EdgeCall):
            ref = self.elab._resolve_name(expr.signal, self.scope)
            if ref is not None:
                if ref.is_vector:
                    self.elab.err("TYPE", expr.loc, f"{expr.func} needs a std_logic signal")
                else:
                    self.refs[id(expr.signal)] = ref
                    self.reads.update(ref.bits)
            return SL
        if isinstance(expr, Unary):
            kind = self.infer(expr.operand)
            if kind == INT:
                self.elab.err("TYPE", expr.loc, "not cannot apply to an integer")
            return kind
        if isinstance(expr, Binary):
            lk = self.infer(expr.left)
            rk = self.infer(expr.right)
            return self._infer_binary(expr, lk, rk)
        return None

    def _infer_binary(self, expr: Binary, lk, rk):
        op = expr.op
        if lk is None or rk is None:
            return None
        if op in ("and", "or", "nand", "nor", "xor"):
            if lk == SL and rk == SL:
                return SL
            if lk == rk and lk[0] == "vec":
                return lk
            self.elab.err("TYPE", expr.loc, f"operands of {op} must match")
            return None
        if op in ("=", "/="):
            if lk == rk or {lk[0], rk[0]} in ({"vec", "int"}, {"sl"}, {"vec"}, {"int"}):
                if lk[0] == "vec" and rk[0] == "vec" and lk != rk:
                    self.elab.err("TYPE", expr.loc, "vector widths differ")
                    return None
                return SL
            self.elab.err("TYPE", expr.loc, "cannot compare these operands")
            return None
        if op in ("<", "<=", ">", ">="):
            if lk[0] in ("vec", "int") and rk[0] in ("vec", "int"):
                return SL
            self.elab.err("TYPE", expr.loc, "ordering needs vector or integer operands")
            return None
        if op in ("+", "-"):
            if lk[0] in ("vec", "int") and rk[0] in ("vec", "int"):
                if lk[0] == "vec":
                    return lk
                if rk[0] == "vec":
                    return rk
                return INT
            self.elab.err("TYPE", expr.loc, "arithmetic needs vector or integer operands")
            return None
        if op == "&":
            lw = 1 if lk == SL else (lk[1] if lk[0] == "vec" else None)
            rw = 1 if rk == SL else (rk[1] if rk[0] == "vec" else None)
            if lw is None or rw is None:
                self.elab.err("TYPE", expr.loc, "can only concatenate logic values")
                return None
            return VEC(lw + rw)
        self.elab.err("TYPE", expr.loc, f"unsupported operator {op}")
        return None


def _driver_init(network: Network, sig: int) -> LogicValue:
    return network.signal_init[sig]


# ---------------------------------------------------------------------------
# interpreted processes


class _Interp:
    """Expression evaluation over an activation context."""

    def __init__(self, checker: _Checker, ctx: Activation):
        self.refs = checker.refs
        self.ctx = ctx

    def eval(self, expr):
        if isinstance(expr, CharLit):
            return project(expr.value)
        if isinstance(expr, StringLit):
            return tuple(project(ch) for ch in expr.value)
        if isinstance(expr, IntLit):
            return expr.value
        if isinstance(expr, Name):
            ref = self.refs[id(expr)]
            if ref.is_vector:
                return tuple(self.ctx.value(b) for b in ref.bits)
            return self.ctx.value(ref.bits[0])
        if isinstance(expr, EdgeCall):
            ref = self.refs.get(id(expr.signal))
            if ref is None:
                return ZERO
            change = self.ctx.changed.get(ref.bits[0])
            if change is None:
                return ZERO
            old, new = change
            if expr.func == "rising_edge":
                return ONE if (old is ZERO and new is ONE) else ZERO
            return ONE if (old is ONE and new is ZERO) else ZERO
        if isinstance(expr, Unary):
            val = self.eval(expr.operand)
            if isinstance(val, tuple):
                return tuple(v_not(b) for b in val)
            return v_not(val)
        if isinstance(expr, Binary):
            return self._binary(expr)
        raise AssertionError(f"unevaluable expression {expr!r}")

    def _binary(self, expr: Binary):
        op = expr.op
        a = self.eval(expr.left)
        b = self.eval(expr.right)
        if op in ("and", "or", "nand", "nor", "xor"):
            fn = {"and": v_and, "or": v_or, "xor": v_xor,
                  "nand": lambda x, y: v_not(v_and(x, y)),
                  "nor": lambda x, y: v_not(v_or(x, y))}[op]
            if isinstance(a, tuple):
                return tuple(fn(x, y) for x, y in zip(a, b))
            return fn(a, b)
        if op in ("=", "/="):
            eq = _equal(a, b)
            if eq is X:
                return X
            if op == "/=":
                eq = ONE if eq is ZERO else ZERO
            return eq
        if op in ("<", "<=", ">", ">="):
            ia, ib = _as_int(a), _as_int(b)
            if ia is None or ib is None:
                return X
            result = {"<": ia < ib, "<=": ia <= ib, ">": ia > ib, ">=": ia >= ib}[op]
            return ONE if result else ZERO
        if op in ("+", "-"):
            ia, ib = _as_int(a), _as_int(b)
            width = len(a) if isinstance(a, tuple) else (len(b) if isinstance(b, tuple) else None)
            if ia is None or ib is None:
                return tuple([X] * width) if width else 0
            total = ia + ib if op == "+" else ia - ib
            if width is None:
                return total
            return _to_bits(total, width)
        if op == "&":
            ta = a if isinstance(a, tuple) else (a,)
            tb = b if isinstance(b, tuple) else (b,)
            return ta + tb
        raise AssertionError(op)

    def truthy(self, expr) -> bool:
        # X and Z conditions take the false path, as simulators usually do
        return self.eval(expr) is ONE


def _equal(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return ONE if a == b else ZERO
    if isinstance(a, int):
        a = _to_bits(a, len(b))
    if isinstance(b, int):
        b = _to_bits(b, len(a))
    if isinstance(a, tuple):
        if len(a) != len(b):
            return ZERO
        acc = ONE
        for x, y in zip(a, b):
            if not (x.is_known and y.is_known):
                return X
            if x is not y:
                acc = ZERO
        return acc
    if not (a.is_known and b.is_known):
        return X
    return ONE if a is b else ZERO


def _as_int(v) -> Optional[int]:
    if isinstance(v, int):
        return v
    if isinstance(v, tuple):
        total = 0
        for bit in v:
            if not bit.is_known:
                return None
            total = (total << 1) | (1 if bit is ONE else 0)
        return total
    return None


def _to_bits(value: int, width: int) -> tuple:
    value &= (1 << width) - 1
    return tuple(ONE if (value >> (width - 1 - i)) & 1 else ZERO for i in range(width))


class _AssignProc(Process):
    def __init__(self, name, elab, target, slots, branches):
        self.name = name
        self.checker = elab
        self.target = target
        self.slots = slots
        self.branches = branches

    def activate(self, ctx: Activation) -> None:
        interp = _Interp(self.checker, ctx)
        for wf in self.branches:
            if wf.cond is not None and not interp.truthy(wf.cond):
                continue
            value = interp.eval(wf.value)
            _drive_bits(ctx, self.slots, value, wf.after_ns, len(self.target.bits))
            return


class _VhdlProc(Process):
    def __init__(self, name, elab, body, slots, wait_driven):
        self.name = name
        self.checker = elab
        self.body = body
        self.slots = slots  # signal -> driver slot
        self.wait_driven = wait_driven
        self._gen = None
        self._parked = False

    def activate(self, ctx: Activation) -> None:
        if not self.wait_driven:
            interp = _Interp(self.checker, ctx)
            self._exec(self.body, interp, ctx)
            return
        if self._parked:
            return
        if self._gen is None:
            self._gen = self._walk(self.body, ctx)
        for _ in range(2):  # a finished body restarts from the top, once per wake
            try:
                delay = next(self._gen)
                ctx.wake_after(delay)
                return
            except StopIteration:
                self._gen = self._walk(self.body, ctx)
        self._parked = True

    # sensitivity-list execution: run the whole body
    def _exec(self, body, interp, ctx) -> None:
        for stmt in body:
            if isinstance(stmt, SeqAssign):
                self._assign(stmt, interp, ctx)
            elif isinstance(stmt, IfStmt):
                for cond, arm in stmt.arms:
                    if cond is None or interp.truthy(cond):
                        self._exec(arm, interp, ctx)
                        break
            elif isinstance(stmt, CaseStmt):
                self._case(stmt, interp, ctx, waits=False)
            elif isinstance(stmt, NullStmt):
                pass

    # wait-driven execution: a generator that yields wait durations
    def _walk(self, body, ctx):
        interp = _Interp(self.checker, ctx)
        for stmt in body:
            if isinstance(stmt, WaitStmt):
                if stmt.duration_ns is None:
                    self._parked = True
                    return
                yield stmt.duration_ns
            elif isinstance(stmt, SeqAssign):
                self._assign(stmt, interp, ctx)
            elif isinstance(stmt, IfStmt):
                for cond, arm in stmt.arms:
                    if cond is None or interp.truthy(cond):
                        yield from self._walk_into(arm, ctx)
                        break
            elif isinstance(stmt, CaseStmt):
                yield from self._case(stmt, interp, ctx, waits=True) or ()
            elif isinstance(stmt, NullStmt):
                pass

    def _walk_into(self, body, ctx):
        yield from self._walk(body, ctx)

    def _case(self, stmt: CaseStmt, interp, ctx, waits: bool):
        subject = interp.eval(stmt.subject)
        chosen = None
        for choices, arm in stmt.arms:
            if choices is None:
                chosen = arm
                break
            for choice in choices:
                if _equal(subject, interp.eval(choice)) is ONE:
                    chosen = arm
                    break
            if chosen is not None:
                break
        if chosen is None:
            return None
        if waits:
            return self._walk_into(chosen, ctx)
        self._exec(chosen, interp, ctx)
        return None

    def _assign(self, stmt: SeqAssign, interp, ctx) -> None:
        ref = self.checker.refs.get(id(stmt.target))
        if ref is None:
            return
        value = interp.eval(stmt.value)
        slots = [self.slots[sig] for sig in ref.bits]
        _drive_bits(ctx, slots, value, stmt.after_ns, len(ref.bits))


def _drive_bits(ctx, slots, value, delay_ns, width) -> None:
    if isinstance(value, int):
        value = _to_bits(value, width)
    elif not isinstance(value, tuple):
        value = (value,)
    for slot, bit in zip(slots, value):
        ctx.drive(slot, bit, delay_ns)


# ---------------------------------------------------------------------------
# simulation entry point for elaborated designs


def simulate_elaborated(
    design: ElaboratedDesign, stim: StimulusSet, cfg
) -> tuple[Trace, SimLog]:
    """Run an elaborated design, binding stimulus onto its input ports.

    Re-elaborates internally so repeated runs (e.g. one per grading test
    point) never see another run's register values or stimulus drivers.
    """
    from ..kernel import ALL_NETS, PORTS, _PreloadProc

    if design.source_ast is not None:
        design = design.fresh()
    log = SimLog()
    network = design.network
    for name in design.port_order:
        direction, bits, is_vector = design.ports[name]
        if direction != "in":
            continue
        keys = [name] if not is_vector else [f"{name}({len(bits) - 1 - i})" for i in range(len(bits))]
        for key, sig in zip(keys, bits):
            spec = stim.assignments.get(key)
            slot = network.add_driver(sig, init=X)
            if spec is None:
                log.warn(0, "UNCOVERED_INPUT", f"port {key} has no stimulus; held at X")
                continue
            events = [(t, slot, v) for t, v in expand(spec, cfg.horizon_ns)]
            network.add_process(_PreloadProc(f"stim:{key}", events))

    watch: list[tuple[str, int]] = []
    if cfg.watch == ALL_NETS:
        watch = [(network.signal_names[i], i) for i in range(len(network.signal_names))]
    elif cfg.watch == PORTS:
        if design.ports:
            for name in design.port_order:
                _, bits, is_vector = design.ports[name]
                if is_vector:
                    width = len(bits)
                    for i, sig in enumerate(bits):
                        watch.append((f"{name}({width - 1 - i})", sig))
                else:
                    watch.append((name, bits[0]))
        else:
            # a testbench has no ports: watch its root-scope signals
            watch = [
                (label, sig)
                for label, sig in design.signal_map.items()
                if "/" not in label
            ]
    else:
        for probe in cfg.watch:
            sig = design.signal_map.get(probe.target)
            if sig is None:
                raise KeyError(f"probe target {probe.target!r} does not resolve")
            watch.append((probe.label, sig))

    trace = run_network(network, cfg.horizon_ns, watch, log, max_deltas=cfg.max_deltas_per_instant)
    return trace, log
