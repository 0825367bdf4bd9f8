"""logiclab: a gate-level digital-logic teaching platform.

Event-driven four-valued simulation of 74-series schematics, a VHDL
subset frontend and emitter, waveform autograding, and the homework
service behind the browser UI.
"""

__version__ = "0.1.0"

from .engine import Probe, SimLog, Trace, sample
from .kernel import ALL_NETS, PORTS, SimConfig, ValidationFailed, simulate
from .logic import LogicValue, resolve
from .netlist import (
    Circuit,
    ComponentInstance,
    Net,
    NetlistError,
    PinRef,
    TopPort,
    ValidationReport,
    deserialize_circuit,
    net_of,
    serialize_circuit,
    validate_circuit,
)
from .parts import ComponentModel, ComponentRegistry, builtin_registry
from .stimulus import SignalSpec, StimulusSet, deserialize_stimulus, expand, serialize_stimulus
from .vcd import export_vcd

__all__ = [
    "ALL_NETS",
    "PORTS",
    "Circuit",
    "ComponentInstance",
    "ComponentModel",
    "ComponentRegistry",
    "LogicValue",
    "Net",
    "NetlistError",
    "PinRef",
    "Probe",
    "SignalSpec",
    "SimConfig",
    "SimLog",
    "StimulusSet",
    "TopPort",
    "Trace",
    "ValidationFailed",
    "ValidationReport",
    "builtin_registry",
    "deserialize_circuit",
    "deserialize_stimulus",
    "expand",
    "export_vcd",
    "net_of",
    "resolve",
    "sample",
    "serialize_circuit",
    "serialize_stimulus",
    "simulate",
    "validate_circuit",
]
