"""VHDL subset bridge: frontend (parse + elaborate onto the simulation
engine) and backend (structural emission of circuits and testbenches).

The accepted grammar is documented in docs/vhdl_subset.md.
"""

from .syntax import Diagnostic, VhdlUnit, parse_vhdl
from .elaborate import ElaboratedDesign, elaborate
from .emit import emit_vhdl, emit_testbench

__all__ = [
    "Diagnostic",
    "ElaboratedDesign",
    "VhdlUnit",
    "elaborate",
    "emit_testbench",
    "emit_vhdl",
    "parse_vhdl",
]
