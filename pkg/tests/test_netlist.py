import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st_

from logiclab import designs
from logiclab.netlist import (
    Circuit,
    ComponentInstance,
    Net,
    NetlistError,
    PinRef,
    TopPort,
    deserialize_circuit,
    merge_nets,
    net_of,
    serialize_circuit,
    validate_circuit,
)


def codes(report):
    return sorted(i.code for i in report.errors)


def test_empty_circuit_is_vacuously_valid(registry):
    report = validate_circuit(Circuit(name="empty"), registry)
    assert report.errors == () and report.warnings == ()


def test_output_output_wire_is_a_conflict(registry):
    report = validate_circuit(designs.output_conflict(), registry)
    assert codes(report) == ["OUTPUT_CONFLICT"]
    assert report.errors[0].location == "n_bad"


def test_vcc_gnd_tie_is_a_short(registry):
    report = validate_circuit(designs.short_circuit(), registry)
    assert codes(report) == ["SHORT_CIRCUIT"]


def test_floating_input_warns(registry):
    c = Circuit(
        name="floating",
        instances=(ComponentInstance(id="u1", part="74LS00"),),
        nets=(
            Net("n1", frozenset({PinRef("u1", "1A")})),
            Net("n2", frozenset({PinRef("u1", "1Y")})),
            # all other gate inputs tied together in one net to keep one floater
            Net("n3", frozenset({
                PinRef("u1", p) for p in ("2A", "2B", "3A", "3B", "4A", "4B")
            })),
        ),
        top_inputs=(TopPort("a", "n1"), TopPort("x", "n3")),
        top_outputs=(TopPort("y", "n2"),),
    )
    report = validate_circuit(c, registry)
    assert not report.errors
    floaters = [w for w in report.warnings if w.code == "FLOATING_REQUIRED_INPUT"]
    assert [w.location for w in floaters] == ["u1.1B"]


def test_unknown_part_and_bad_param(registry):
    c = Circuit(
        name="bad",
        instances=(
            ComponentInstance(id="u1", part="74LS9999"),
            ComponentInstance(id="u2", part="CLOCK", params={"freq_hz": -5}),
            ComponentInstance(id="u3", part="CLOCK", params={"nonsense": 1}),
        ),
    )
    report = validate_circuit(c, registry)
    assert codes(report) == ["BAD_PARAM", "BAD_PARAM", "UNKNOWN_PART"]


def test_dangling_endpoint_reported_not_raised(registry):
    c = Circuit(
        name="dangle",
        instances=(ComponentInstance(id="u1", part="74LS04"),),
        nets=(Net("n1", frozenset({PinRef("u1", "1A"), PinRef("ghost", "Y")})),),
    )
    report = validate_circuit(c, registry)
    assert "DANGLING_PIN_REF" in codes(report)


def test_validation_is_order_independent(registry, counter60):
    base = validate_circuit(counter60, registry)
    permuted = Circuit(
        name=counter60.name,
        instances=tuple(reversed(counter60.instances)),
        nets=tuple(reversed(counter60.nets)),
        top_inputs=counter60.top_inputs,
        top_outputs=counter60.top_outputs,
    )
    again = validate_circuit(permuted, registry)
    assert base.errors == again.errors
    assert base.warnings == again.warnings


def test_structural_invariants_raise():
    with pytest.raises(NetlistError):
        Circuit(
            name="dup",
            instances=(
                ComponentInstance(id="u1", part="VCC"),
                ComponentInstance(id="u1", part="GND"),
            ),
        )
    with pytest.raises(NetlistError):
        # one pin on two nets
        Circuit(
            name="twice",
            instances=(ComponentInstance(id="u1", part="74LS04"),),
            nets=(
                Net("n1", frozenset({PinRef("u1", "1A")})),
                Net("n2", frozenset({PinRef("u1", "1A")})),
            ),
        )


# -- net_of / merge ---------------------------------------------------------


def test_net_of_lookup_and_floating(counter60):
    net = net_of(counter60, PinRef("u_ones", "CLK"))
    assert net is not None and net.id == "n_clk"
    assert net_of(counter60, PinRef("u_ones", "RCO")) is None
    with pytest.raises(NetlistError):
        net_of(counter60, PinRef("nobody", "CLK"))


def test_merge_nets_maps_both_old_endpoints():
    c = Circuit(
        name="m",
        instances=(ComponentInstance(id="u1", part="74LS00"),),
        nets=(
            Net("n1", frozenset({PinRef("u1", "1A")})),
            Net("n2", frozenset({PinRef("u1", "1B")}), label="beta"),
        ),
        top_inputs=(TopPort("a", "n1"), TopPort("b", "n2")),
    )
    merged = merge_nets(c, "n1", "n2")
    assert len(merged.nets) == 1
    for pin in (PinRef("u1", "1A"), PinRef("u1", "1B")):
        assert net_of(merged, pin).id == "n1"
    assert {p.net for p in merged.top_inputs} == {"n1"}


# -- serialization ------------------------------------------------------------


def test_round_trip_identity_one_gate():
    c = designs.nand_demo()
    assert deserialize_circuit(serialize_circuit(c)) == c


def test_round_trip_preserves_positions(counter60):
    again = deserialize_circuit(serialize_circuit(counter60))
    assert again == counter60
    assert [i.position for i in again.instances] == [i.position for i in counter60.instances]


def test_missing_format_version():
    with pytest.raises(NetlistError, match="format_version"):
        deserialize_circuit(b'{"name": "x"}')


def test_unknown_version_rejected():
    doc = json.loads(serialize_circuit(designs.nand_demo()))
    doc["format_version"] = 99
    with pytest.raises(NetlistError, match="format_version"):
        deserialize_circuit(json.dumps(doc).encode())


def test_unknown_field_rejected():
    doc = json.loads(serialize_circuit(designs.nand_demo()))
    doc["surprise"] = 1
    with pytest.raises(NetlistError, match="surprise"):
        deserialize_circuit(json.dumps(doc).encode())
    doc = json.loads(serialize_circuit(designs.nand_demo()))
    doc["instances"][0]["rotation"] = 90
    with pytest.raises(NetlistError, match="rotation"):
        deserialize_circuit(json.dumps(doc).encode())


def test_malformed_json_reports_byte_offset():
    with pytest.raises(NetlistError, match=r"byte \d+"):
        deserialize_circuit(b'{"format_version": 1,,}')


def test_counter_fixture_file_parses(counter60):
    path = __import__("pathlib").Path(__file__).parent / "fixtures" / "counter60.json"
    circuit = deserialize_circuit(path.read_bytes())
    assert circuit == counter60
    assert [p.name for p in circuit.top_inputs][0] == "clk"
    seg_nets = [p for p in circuit.top_outputs if p.name.startswith("seg_")]
    assert len(seg_nets) == 14


# -- randomized round trips ------------------------------------------------------

_PARTS = ["74LS00", "74LS04", "74LS08", "VCC", "GND", "SWITCH"]


@st_.composite
def circuits(draw):
    n_inst = draw(st_.integers(min_value=0, max_value=5))
    instances = []
    pins = []
    for i in range(n_inst):
        part = draw(st_.sampled_from(_PARTS))
        params = {}
        if part == "SWITCH" and draw(st_.booleans()):
            params["value"] = draw(st_.sampled_from([0, 1]))
        pos = (draw(st_.integers(0, 2000)), draw(st_.integers(0, 2000)))
        inst = ComponentInstance(id=f"u{i}", part=part, params=params, position=pos)
        instances.append(inst)
        if part in ("VCC", "GND", "SWITCH"):
            pins.append(PinRef(inst.id, "Y"))
        else:
            pins.append(PinRef(inst.id, "1A"))
            pins.append(PinRef(inst.id, "1Y"))
    free = list(pins)
    nets = []
    i = 0
    while len(free) >= 2 and draw(st_.booleans()):
        take = draw(st_.integers(2, min(3, len(free))))
        endpoints = frozenset(free[:take])
        del free[:take]
        label = draw(st_.one_of(st_.none(), st_.text(alphabet="abcxyz_", min_size=1, max_size=6)))
        nets.append(Net(id=f"w{i}", endpoints=endpoints, label=label))
        i += 1
    top_inputs = []
    top_outputs = []
    if nets and draw(st_.booleans()):
        top_inputs.append(TopPort("tin", nets[0].id))
    if nets and draw(st_.booleans()):
        top_outputs.append(TopPort("tout", nets[-1].id))
    return Circuit(
        name=draw(st_.text(alphabet="abcdef", min_size=1, max_size=8)),
        instances=tuple(instances),
        nets=tuple(nets),
        top_inputs=tuple(top_inputs),
        top_outputs=tuple(top_outputs),
    )


@settings(max_examples=60, deadline=None)
@given(circuits())
def test_random_circuit_round_trip(c):
    assert deserialize_circuit(serialize_circuit(c)) == c


@settings(max_examples=120, deadline=None)
@given(st_.binary(max_size=400))
def test_deserialize_never_crashes_on_garbage(data):
    try:
        deserialize_circuit(data)
    except NetlistError:
        pass
