#!/usr/bin/env python3
"""Regenerate the part model fixtures under src/logiclab/parts_data/.

Behavioral expressions are built structurally (gate units, decoder
minterms, ripple-carry recurrences).  The reference function tables the
test suite checks against are produced by a *separate* script that
computes each part arithmetically, so a mistake here cannot hide there.
"""

import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "logiclab" / "parts_data"


def pin(name, direction, index):
    return {"name": name, "direction": direction, "index": index}


def gate_quad(part, op, units):
    """Four (or six) one-output gate units: [(in_pins..., out_pin, indices...)]."""
    pins, exprs = [], {}
    for unit in units:
        *ins, out = unit
        for name, idx in ins:
            pins.append(pin(name, "INPUT", idx))
        out_name, out_idx = out
        pins.append(pin(out_name, "OUTPUT", out_idx))
        exprs[out_name] = [op] + [name for name, _ in ins] if op != "not" else ["not", ins[0][0]]
    return {
        "format_version": 1,
        "part": part,
        "kind": "COMBINATIONAL",
        "delay_ns": 10,
        "pins": pins,
        "behavior": {"exprs": exprs},
    }


def two_in(n, a, b, y):
    return [((f"{n}A", a), (f"{n}B", b), (f"{n}Y", y))]


def minterm(sel_pins, value):
    """AND over select pins (LSB first) matching a binary value."""
    terms = []
    for i, name in enumerate(sel_pins):
        terms.append(name if (value >> i) & 1 else ["not", name])
    return terms


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    docs = []

    docs.append(gate_quad("74LS00", "nand",
        two_in(1, 1, 2, 3) + two_in(2, 4, 5, 6) + two_in(3, 9, 10, 8) + two_in(4, 12, 13, 11)))
    docs.append(gate_quad("74LS02", "nor",
        two_in(1, 2, 3, 1) + two_in(2, 5, 6, 4) + two_in(3, 8, 9, 10) + two_in(4, 11, 12, 13)))
    docs.append(gate_quad("74LS08", "and",
        two_in(1, 1, 2, 3) + two_in(2, 4, 5, 6) + two_in(3, 9, 10, 8) + two_in(4, 12, 13, 11)))
    docs.append(gate_quad("74LS32", "or",
        two_in(1, 1, 2, 3) + two_in(2, 4, 5, 6) + two_in(3, 9, 10, 8) + two_in(4, 12, 13, 11)))
    docs.append(gate_quad("74LS86", "xor",
        two_in(1, 1, 2, 3) + two_in(2, 4, 5, 6) + two_in(3, 9, 10, 8) + two_in(4, 12, 13, 11)))
    docs.append(gate_quad("74LS04", "not", [
        ((f"{n}A", a), (f"{n}Y", y))
        for n, a, y in [(1, 1, 2), (2, 3, 4), (3, 5, 6), (4, 9, 8), (5, 11, 10), (6, 13, 12)]
    ]))

    # 3-to-8 decoder: active-low outputs, three enables
    sel = ["A", "B", "C"]
    dec_pins = [pin("A", "INPUT", 1), pin("B", "INPUT", 2), pin("C", "INPUT", 3),
                pin("G2A", "INPUT", 4), pin("G2B", "INPUT", 5), pin("G1", "INPUT", 6)]
    dec_out_idx = {7: 7, 6: 9, 5: 10, 4: 11, 3: 12, 2: 13, 1: 14, 0: 15}
    dec_exprs = {}
    for n in range(8):
        dec_pins.append(pin(f"Y{n}", "OUTPUT", dec_out_idx[n]))
        dec_exprs[f"Y{n}"] = ["nand", "G1", ["not", "G2A"], ["not", "G2B"]] + minterm(sel, n)
    docs.append({"format_version": 1, "part": "74LS138", "kind": "COMBINATIONAL",
                 "delay_ns": 10, "pins": dec_pins, "behavior": {"exprs": dec_exprs}})

    # 8-to-1 mux with active-low strobe and complementary outputs
    mux_pins = [pin("D3", "INPUT", 1), pin("D2", "INPUT", 2), pin("D1", "INPUT", 3),
                pin("D0", "INPUT", 4), pin("Y", "OUTPUT", 5), pin("W", "OUTPUT", 6),
                pin("G", "INPUT", 7), pin("C", "INPUT", 9), pin("B", "INPUT", 10),
                pin("A", "INPUT", 11), pin("D7", "INPUT", 12), pin("D6", "INPUT", 13),
                pin("D5", "INPUT", 14), pin("D4", "INPUT", 15)]
    selected = ["or"] + [["and", f"D{n}"] + minterm(["A", "B", "C"], n) for n in range(8)]
    y_expr = ["and", ["not", "G"], selected]
    docs.append({"format_version": 1, "part": "74LS151", "kind": "COMBINATIONAL",
                 "delay_ns": 10, "pins": mux_pins,
                 "behavior": {"exprs": {"Y": y_expr, "W": ["not", y_expr]}}})

    # dual 4-to-1 mux, shared select lines
    m153_pins = [pin("1G", "INPUT", 1), pin("B", "INPUT", 2), pin("1C3", "INPUT", 3),
                 pin("1C2", "INPUT", 4), pin("1C1", "INPUT", 5), pin("1C0", "INPUT", 6),
                 pin("1Y", "OUTPUT", 7), pin("2Y", "OUTPUT", 9), pin("2C0", "INPUT", 10),
                 pin("2C1", "INPUT", 11), pin("2C2", "INPUT", 12), pin("2C3", "INPUT", 13),
                 pin("A", "INPUT", 14), pin("2G", "INPUT", 15)]
    m153_exprs = {}
    for unit in (1, 2):
        sel4 = ["or"] + [["and", f"{unit}C{n}"] + minterm(["A", "B"], n) for n in range(4)]
        m153_exprs[f"{unit}Y"] = ["and", ["not", f"{unit}G"], sel4]
    docs.append({"format_version": 1, "part": "74LS153", "kind": "COMBINATIONAL",
                 "delay_ns": 10, "pins": m153_pins, "behavior": {"exprs": m153_exprs}})

    # 4-bit ripple-carry adder (behavior is flat expressions; the chip is faster, the function identical)
    add_pins = [pin("S2", "OUTPUT", 1), pin("B2", "INPUT", 2), pin("A2", "INPUT", 3),
                pin("S1", "OUTPUT", 4), pin("A1", "INPUT", 5), pin("B1", "INPUT", 6),
                pin("C0", "INPUT", 7), pin("C4", "OUTPUT", 9), pin("S4", "OUTPUT", 10),
                pin("B4", "INPUT", 11), pin("A4", "INPUT", 12), pin("A3", "INPUT", 13),
                pin("S3", "OUTPUT", 14), pin("B3", "INPUT", 15)]
    add_exprs = {}
    carry = "C0"
    for i in range(1, 5):
        a, b = f"A{i}", f"B{i}"
        add_exprs[f"S{i}"] = ["xor", ["xor", a, b], carry]
        carry = ["or", ["and", a, b], ["and", carry, ["xor", a, b]]]
    add_exprs["C4"] = carry
    docs.append({"format_version": 1, "part": "74LS283", "kind": "COMBINATIONAL",
                 "delay_ns": 10, "pins": add_pins, "behavior": {"exprs": add_exprs}})

    # BCD to seven-segment decoder, active-high outputs (7448 pattern set)
    seg_rows = {
        0: "abcdef", 1: "bc", 2: "abdeg", 3: "abcdg", 4: "bcfg", 5: "acdfg",
        6: "cdefg", 7: "abc", 8: "abcdefg", 9: "abcfg", 10: "deg", 11: "cdg",
        12: "bfg", 13: "adfg", 14: "defg", 15: "",
    }
    seg_idx = {"OA": 13, "OB": 12, "OC": 11, "OD": 10, "OE": 9, "OF": 15, "OG": 14}
    sseg_pins = [pin("A", "INPUT", 7), pin("B", "INPUT", 1), pin("C", "INPUT", 2),
                 pin("D", "INPUT", 6)]
    sseg_pins += [pin(name, "OUTPUT", idx) for name, idx in seg_idx.items()]
    rows = {}
    for value in range(16):
        key = format(value, "04b")  # DCBA
        rows[key] = {f"O{seg.upper()}": int(seg in seg_rows[value]) for seg in "abcdefg"}
    docs.append({"format_version": 1, "part": "7448", "kind": "COMBINATIONAL",
                 "delay_ns": 10, "pins": sseg_pins,
                 "behavior": {"table": {"inputs": ["D", "C", "B", "A"], "rows": rows}}})

    # dual D flip-flop with async clear/preset
    ff_pins, units = [], []
    for n, (clr, d, clk, pre, q, qn) in [(1, (1, 2, 3, 4, 5, 6)), (2, (13, 12, 11, 10, 9, 8))]:
        ff_pins += [pin(f"{n}CLR", "INPUT", clr), pin(f"{n}D", "INPUT", d),
                    pin(f"{n}CLK", "INPUT", clk), pin(f"{n}PRE", "INPUT", pre),
                    pin(f"{n}Q", "OUTPUT", q), pin(f"{n}QN", "OUTPUT", qn)]
        units.append({"clk": f"{n}CLK", "d": f"{n}D", "clr": f"{n}CLR",
                      "pre": f"{n}PRE", "q": f"{n}Q", "qn": f"{n}QN"})
    docs.append({"format_version": 1, "part": "74LS74", "kind": "SEQUENTIAL",
                 "delay_ns": 10, "pins": ff_pins, "behavior": {"template": "dff", "units": units}})

    # 4-bit synchronous counter with load and carry out
    ctr_pins = [pin("CLR", "INPUT", 1), pin("CLK", "INPUT", 2), pin("A", "INPUT", 3),
                pin("B", "INPUT", 4), pin("C", "INPUT", 5), pin("D", "INPUT", 6),
                pin("ENP", "INPUT", 7), pin("LOAD", "INPUT", 9), pin("ENT", "INPUT", 10),
                pin("QD", "OUTPUT", 11), pin("QC", "OUTPUT", 12), pin("QB", "OUTPUT", 13),
                pin("QA", "OUTPUT", 14), pin("RCO", "OUTPUT", 15)]
    docs.append({"format_version": 1, "part": "74LS163", "kind": "SEQUENTIAL",
                 "delay_ns": 10, "pins": ctr_pins,
                 "behavior": {"template": "counter4", "clk": "CLK", "clr": "CLR",
                              "load": "LOAD", "enp": "ENP", "ent": "ENT",
                              "data": ["A", "B", "C", "D"],
                              "q": ["QA", "QB", "QC", "QD"], "rco": "RCO"}})

    docs.append({"format_version": 1, "part": "SEVEN_SEG", "kind": "DISPLAY", "delay_ns": 0,
                 "pins": [pin(s, "INPUT", i + 1) for i, s in enumerate("abcdefg")],
                 "behavior": {"template": "display", "segments": list("abcdefg")}})
    docs.append({"format_version": 1, "part": "LED", "kind": "DISPLAY", "delay_ns": 0,
                 "pins": [pin("IN", "INPUT", 1)],
                 "behavior": {"template": "display", "segments": ["IN"]}})
    docs.append({"format_version": 1, "part": "VCC", "kind": "SOURCE", "delay_ns": 0,
                 "pins": [pin("Y", "OUTPUT", 1)],
                 "behavior": {"template": "constant", "level": "1"}})
    docs.append({"format_version": 1, "part": "GND", "kind": "SOURCE", "delay_ns": 0,
                 "pins": [pin("Y", "OUTPUT", 1)],
                 "behavior": {"template": "constant", "level": "0"}})
    docs.append({"format_version": 1, "part": "SWITCH", "kind": "SOURCE", "delay_ns": 0,
                 "pins": [pin("Y", "OUTPUT", 1)],
                 "behavior": {"template": "constant", "default": 0},
                 "params": {"value": {"kind": "choice", "choices": [0, 1]}}})
    docs.append({"format_version": 1, "part": "CLOCK", "kind": "SOURCE", "delay_ns": 0,
                 "pins": [pin("Y", "OUTPUT", 1)],
                 "behavior": {"template": "clock"},
                 "params": {"freq_hz": {"kind": "number", "min": 1e-6},
                            "duty": {"kind": "fraction"},
                            "phase_ns": {"kind": "int", "min": 0}}})

    for doc in docs:
        name = doc["part"].lower().replace("/", "_") + ".json"
        (OUT / name).write_text(json.dumps(doc, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {len(docs)} model fixtures to {OUT}")


if __name__ == "__main__":
    main()
