"""Circuit data model: component instances, nets, and the edit-time rules.

A circuit is a pure value.  Structural invariants (unique ids, one net
per pin) are enforced at construction; everything that can be wrong in
a *drawn* circuit (conflicting drivers, shorts, floating inputs) is
reported by :func:`validate_circuit` instead of raised, so headless
clients see exactly what the canvas would flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .parts import ComponentRegistry, Direction

FORMAT_VERSION = 1

_NETLIST_FIELDS = {"format_version", "name", "instances", "nets", "top_inputs", "top_outputs"}
_INSTANCE_FIELDS = {"id", "part", "params", "position"}
_NET_FIELDS = {"id", "label", "endpoints"}
_ENDPOINT_FIELDS = {"component", "pin"}
_PORT_FIELDS = {"name", "net"}


class NetlistError(ValueError):
    """Structurally broken netlist data (bad file, duplicate ids...)."""


@dataclass(frozen=True)
class PinRef:
    component_id: str
    pin_name: str

    def __str__(self) -> str:
        return f"{self.component_id}.{self.pin_name}"


@dataclass(frozen=True)
class ComponentInstance:
    id: str
    part: str
    params: dict = field(default_factory=dict)
    position: tuple[int, int] = (0, 0)


@dataclass(frozen=True)
class Net:
    id: str
    endpoints: frozenset[PinRef]
    label: Optional[str] = None

    def __post_init__(self):
        if not isinstance(self.endpoints, frozenset):
            object.__setattr__(self, "endpoints", frozenset(self.endpoints))


@dataclass(frozen=True)
class TopPort:
    name: str
    net: str


@dataclass(frozen=True)
class Circuit:
    name: str
    instances: tuple[ComponentInstance, ...] = ()
    nets: tuple[Net, ...] = ()
    top_inputs: tuple[TopPort, ...] = ()
    top_outputs: tuple[TopPort, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "instances", tuple(self.instances))
        object.__setattr__(self, "nets", tuple(self.nets))
        object.__setattr__(self, "top_inputs", tuple(self.top_inputs))
        object.__setattr__(self, "top_outputs", tuple(self.top_outputs))
        _check_unique((i.id for i in self.instances), "instance id")
        _check_unique((n.id for n in self.nets), "net id")
        _check_unique(
            (p.name for p in list(self.top_inputs) + list(self.top_outputs)), "top port name"
        )
        seen: dict[PinRef, str] = {}
        for net in self.nets:
            for ep in net.endpoints:
                if ep in seen:
                    raise NetlistError(
                        f"pin {ep} belongs to nets {seen[ep]!r} and {net.id!r}; "
                        "a pin may join at most one net"
                    )
                seen[ep] = net.id

    def instance(self, instance_id: str) -> ComponentInstance:
        for inst in self.instances:
            if inst.id == instance_id:
                return inst
        raise KeyError(instance_id)

    def net(self, net_id: str) -> Net:
        for net in self.nets:
            if net.id == net_id:
                return net
        raise KeyError(net_id)


def net_of(c: Circuit, p: PinRef) -> Optional[Net]:
    """The unique net containing pin ``p``, or None for a floating pin."""
    _resolve_pin(c, p)
    for net in c.nets:
        if p in net.endpoints:
            return net
    return None


def merge_nets(c: Circuit, net_a: str, net_b: str, merged_id: Optional[str] = None) -> Circuit:
    """Editor action: join two nets into one (wire drawn between them)."""
    a, b = c.net(net_a), c.net(net_b)
    if a.id == b.id:
        return c
    merged = Net(
        id=merged_id or a.id,
        endpoints=a.endpoints | b.endpoints,
        label=a.label or b.label,
    )
    nets = [merged if n.id == a.id else n for n in c.nets if n.id != b.id]
    remap = {b.id: merged.id, a.id: merged.id}
    return Circuit(
        name=c.name,
        instances=c.instances,
        nets=nets,
        top_inputs=tuple(TopPort(p.name, remap.get(p.net, p.net)) for p in c.top_inputs),
        top_outputs=tuple(TopPort(p.name, remap.get(p.net, p.net)) for p in c.top_outputs),
    )


# ---------------------------------------------------------------------------
# validation

ERROR_CODES = (
    "OUTPUT_CONFLICT",
    "SHORT_CIRCUIT",
    "DANGLING_PIN_REF",
    "UNKNOWN_PART",
    "BAD_PARAM",
    "FLOATING_REQUIRED_INPUT",
)


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    location: str


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[Issue, ...] = ()
    warnings: tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.errors

    def to_json(self) -> dict:
        as_dict = lambda i: {"code": i.code, "message": i.message, "location": i.location}
        return {
            "ok": self.ok,
            "errors": [as_dict(i) for i in self.errors],
            "warnings": [as_dict(i) for i in self.warnings],
        }


def validate_circuit(c: Circuit, registry: ComponentRegistry) -> ValidationReport:
    """Check every edit-time rule; an empty error list means simulatable.

    Never raises: every problem becomes a report entry with its
    instance/net location.  Entries are emitted in a canonical order
    (sorted), so permuting the circuit's lists cannot change the report.
    """
    errors: list[Issue] = []
    warnings: list[Issue] = []

    models = {}
    for inst in c.instances:
        model = registry.get(inst.part)
        if model is None:
            errors.append(Issue("UNKNOWN_PART", f"no such part: {inst.part}", inst.id))
            continue
        models[inst.id] = model
        for key, value in sorted(inst.params.items()):
            problem = model.check_param(key, value)
            if problem:
                errors.append(Issue("BAD_PARAM", problem, f"{inst.id}.{key}"))

    connected: set[PinRef] = set()
    known_nets = {n.id for n in c.nets}
    for net in c.nets:
        out_constants: set[str] = set()
        out_count = 0
        for ep in sorted(net.endpoints, key=str):
            connected.add(ep)
            model = models.get(ep.component_id)
            if ep.component_id not in {i.id for i in c.instances}:
                errors.append(Issue("DANGLING_PIN_REF", f"no such instance: {ep}", net.id))
                continue
            if model is None:
                continue  # already an UNKNOWN_PART error
            pin = model.pin(ep.pin_name)
            if pin is None:
                errors.append(
                    Issue("DANGLING_PIN_REF", f"{ep.component_id} has no pin {ep.pin_name}", net.id)
                )
                continue
            if pin.direction is Direction.OUTPUT:
                out_count += 1
                const = model.constant_level(c.instance(ep.component_id).params)
                if const is not None:
                    out_constants.add(const)
        if len(out_constants) > 1:
            errors.append(
                Issue("SHORT_CIRCUIT", "net ties a constant-high source to a constant-low source", net.id)
            )
        elif out_count > 1:
            errors.append(
                Issue("OUTPUT_CONFLICT", f"net has {out_count} output-direction endpoints", net.id)
            )

    for port in list(c.top_inputs) + list(c.top_outputs):
        if port.net not in known_nets:
            errors.append(Issue("DANGLING_PIN_REF", f"top port {port.name} binds missing net", port.net))

    for inst in c.instances:
        model = models.get(inst.id)
        if model is None:
            continue
        for pin in model.pins:
            if pin.direction is Direction.INPUT and PinRef(inst.id, pin.name) not in connected:
                warnings.append(
                    Issue(
                        "FLOATING_REQUIRED_INPUT",
                        f"input pin {pin.name} is unconnected and will simulate as X",
                        f"{inst.id}.{pin.name}",
                    )
                )

    key = lambda i: (i.code, i.location, i.message)
    return ValidationReport(errors=tuple(sorted(errors, key=key)), warnings=tuple(sorted(warnings, key=key)))


# ---------------------------------------------------------------------------
# JSON netlist format

def serialize_circuit(c: Circuit) -> bytes:
    doc = {
        "format_version": FORMAT_VERSION,
        "name": c.name,
        "instances": [
            {
                "id": i.id,
                "part": i.part,
                "params": dict(sorted(i.params.items())),
                "position": list(i.position),
            }
            for i in c.instances
        ],
        "nets": [
            {
                "id": n.id,
                **({"label": n.label} if n.label is not None else {}),
                "endpoints": [
                    {"component": ep.component_id, "pin": ep.pin_name}
                    for ep in sorted(n.endpoints, key=str)
                ],
            }
            for n in c.nets
        ],
        "top_inputs": [{"name": p.name, "net": p.net} for p in c.top_inputs],
        "top_outputs": [{"name": p.name, "net": p.net} for p in c.top_outputs],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def deserialize_circuit(data: bytes) -> Circuit:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise NetlistError(f"malformed JSON at byte {exc.pos}: {exc.msg}") from None
    except UnicodeDecodeError as exc:
        raise NetlistError(f"malformed JSON at byte {exc.start}: not valid UTF-8") from None
    if not isinstance(doc, dict):
        raise NetlistError("netlist must be a JSON object")
    _reject_unknown(doc, _NETLIST_FIELDS, "netlist")
    version = doc.get("format_version")
    if version is None:
        raise NetlistError('missing required field "format_version"')
    if version != FORMAT_VERSION:
        raise NetlistError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")

    name = _req(doc, "name", str, "netlist")
    instances = []
    for idx, raw in enumerate(_req(doc, "instances", list, "netlist")):
        where = f"instances[{idx}]"
        if not isinstance(raw, dict):
            raise NetlistError(f"{where}: expected object")
        _reject_unknown(raw, _INSTANCE_FIELDS, where)
        pos = raw.get("position", [0, 0])
        if (
            not isinstance(pos, list)
            or len(pos) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in pos)
        ):
            raise NetlistError(f"{where}.position: expected [x, y] integers")
        params = raw.get("params", {})
        if not isinstance(params, dict):
            raise NetlistError(f"{where}.params: expected object")
        instances.append(
            ComponentInstance(
                id=_req(raw, "id", str, where),
                part=_req(raw, "part", str, where),
                params=params,
                position=(pos[0], pos[1]),
            )
        )

    nets = []
    for idx, raw in enumerate(_req(doc, "nets", list, "netlist")):
        where = f"nets[{idx}]"
        if not isinstance(raw, dict):
            raise NetlistError(f"{where}: expected object")
        _reject_unknown(raw, _NET_FIELDS, where)
        endpoints = []
        for jdx, ep in enumerate(_req(raw, "endpoints", list, where)):
            ep_where = f"{where}.endpoints[{jdx}]"
            if not isinstance(ep, dict):
                raise NetlistError(f"{ep_where}: expected object")
            _reject_unknown(ep, _ENDPOINT_FIELDS, ep_where)
            endpoints.append(
                PinRef(_req(ep, "component", str, ep_where), _req(ep, "pin", str, ep_where))
            )
        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            raise NetlistError(f"{where}.label: expected string")
        nets.append(Net(id=_req(raw, "id", str, where), endpoints=frozenset(endpoints), label=label))

    def ports(key: str) -> tuple[TopPort, ...]:
        out = []
        for idx, raw in enumerate(_req(doc, key, list, "netlist")):
            where = f"{key}[{idx}]"
            if not isinstance(raw, dict):
                raise NetlistError(f"{where}: expected object")
            _reject_unknown(raw, _PORT_FIELDS, where)
            out.append(TopPort(_req(raw, "name", str, where), _req(raw, "net", str, where)))
        return tuple(out)

    try:
        return Circuit(
            name=name,
            instances=tuple(instances),
            nets=tuple(nets),
            top_inputs=ports("top_inputs"),
            top_outputs=ports("top_outputs"),
        )
    except NetlistError:
        raise
    except ValueError as exc:
        raise NetlistError(str(exc)) from None


def _req(doc: dict, key: str, typ, where: str):
    if key not in doc:
        raise NetlistError(f'{where}: missing required field "{key}"')
    value = doc[key]
    if not isinstance(value, typ):
        raise NetlistError(f"{where}.{key}: expected {typ.__name__}")
    return value


def _reject_unknown(doc: dict, allowed: set, where: str) -> None:
    unknown = sorted(set(doc) - allowed)
    if unknown:
        raise NetlistError(f"{where}: unknown field {unknown[0]!r}")


def _check_unique(items, what: str) -> None:
    seen = set()
    for item in items:
        if item in seen:
            raise NetlistError(f"duplicate {what}: {item!r}")
        seen.add(item)


def _resolve_pin(c: Circuit, p: PinRef) -> None:
    try:
        c.instance(p.component_id)
    except KeyError:
        raise NetlistError(f"pin reference {p} does not resolve in circuit {c.name!r}") from None
