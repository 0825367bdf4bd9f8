import { describe, expect, it } from "vitest";

import { CanvasDocument } from "../src/document.js";
import type { NetlistJson } from "../src/types.js";

function nandAt(doc: CanvasDocument, x = 100, y = 100) {
  return doc.addInstance("74LS00", x, y);
}

describe("CanvasDocument", () => {
  it("places parts and serializes a well-formed netlist", () => {
    const doc = new CanvasDocument();
    doc.name = "demo";
    const gate = nandAt(doc, 120, 80);
    const json = doc.toNetlist();
    expect(json.format_version).toBe(1);
    expect(json.instances).toEqual([
      { id: gate.id, part: "74LS00", params: {}, position: [120, 80] },
    ]);
    expect(json.nets).toEqual([]);
  });

  it("wires two pins into a fresh net and merges nets transitively", () => {
    const doc = new CanvasDocument();
    const g1 = nandAt(doc);
    const g2 = nandAt(doc, 300, 100);
    expect(doc.wire({ component: g1.id, pin: "1Y" }, { component: g2.id, pin: "1A" })).toBeNull();
    expect(doc.nets.size).toBe(1);
    // join another input pin into the same net via a second wire
    expect(doc.wire({ component: g2.id, pin: "1B" }, { component: g2.id, pin: "1A" })).toBeNull();
    expect(doc.nets.size).toBe(1);
    const net = [...doc.nets.values()][0];
    expect(net.endpoints.length).toBe(3);
  });

  it("refuses to wire two output ports together", () => {
    const doc = new CanvasDocument();
    const g1 = nandAt(doc);
    const g2 = nandAt(doc, 300, 100);
    const error = doc.wire(
      { component: g1.id, pin: "1Y" },
      { component: g2.id, pin: "1Y" },
    );
    expect(error).toMatch(/two output ports/);
    expect(doc.nets.size).toBe(0);
    // also via an intermediate net that already has a driver
    doc.wire({ component: g1.id, pin: "1Y" }, { component: g2.id, pin: "1A" });
    const err2 = doc.wire(
      { component: g2.id, pin: "1Y" },
      { component: g2.id, pin: "1A" },
    );
    expect(err2).toMatch(/two output ports/);
  });

  it("marks ports, stubbing single-pin nets", () => {
    const doc = new CanvasDocument();
    const gate = nandAt(doc);
    expect(doc.markPort({ component: gate.id, pin: "1A" }, "a", "in")).toBeNull();
    expect(doc.markPort({ component: gate.id, pin: "1Y" }, "y", "out")).toBeNull();
    expect(doc.markPort({ component: gate.id, pin: "1B" }, "a", "in")).toMatch(/taken/);
    expect(doc.markPort({ component: gate.id, pin: "1Y" }, "z", "in")).toMatch(/input port/);
    const json = doc.toNetlist();
    expect(json.top_inputs).toHaveLength(1);
    expect(json.top_outputs).toHaveLength(1);
    const inNet = json.nets.find((n) => n.id === json.top_inputs[0].net)!;
    expect(inNet.endpoints).toEqual([{ component: gate.id, pin: "1A" }]);
  });

  it("undo and redo restore committed states", () => {
    const doc = new CanvasDocument();
    const gate = nandAt(doc);
    doc.wire({ component: gate.id, pin: "1A" }, { component: gate.id, pin: "1B" });
    expect(doc.nets.size).toBe(1);
    doc.undo();
    expect(doc.nets.size).toBe(0);
    expect(doc.instances.size).toBe(1);
    doc.undo();
    expect(doc.instances.size).toBe(0);
    doc.redo();
    doc.redo();
    expect(doc.instances.size).toBe(1);
    expect(doc.nets.size).toBe(1);
  });

  it("delete removes instances, their endpoints and empty nets", () => {
    const doc = new CanvasDocument();
    const g1 = nandAt(doc);
    const g2 = nandAt(doc, 300, 100);
    doc.wire({ component: g1.id, pin: "1Y" }, { component: g2.id, pin: "1A" });
    doc.selection = new Set([g2.id]);
    doc.deleteSelection();
    expect(doc.instances.size).toBe(1);
    const net = [...doc.nets.values()][0];
    expect(net.endpoints).toEqual([{ component: g1.id, pin: "1Y" }]);
    // deleting the last endpoint owner drops the net and its probe
    doc.addProbe(net.id);
    doc.selection = new Set([g1.id]);
    doc.deleteSelection();
    expect(doc.nets.size).toBe(0);
    expect(doc.probes.size).toBe(0);
  });

  it("round-trips through the netlist format", () => {
    const doc = new CanvasDocument();
    doc.name = "round";
    const gate = nandAt(doc, 40, 60);
    doc.markPort({ component: gate.id, pin: "1A" }, "a", "in");
    doc.markPort({ component: gate.id, pin: "1B" }, "b", "in");
    doc.markPort({ component: gate.id, pin: "1Y" }, "y", "out");
    const json: NetlistJson = doc.toNetlist();
    const again = CanvasDocument.fromNetlist(json);
    expect(again.toNetlist()).toEqual(json);
  });

  it("probes survive net merges", () => {
    const doc = new CanvasDocument();
    const g1 = nandAt(doc);
    const g2 = nandAt(doc, 300, 100);
    doc.markPort({ component: g1.id, pin: "1Y" }, "y", "out");
    const netId = [...doc.nets.keys()][0];
    const probe = doc.addProbe(netId);
    doc.wire({ component: g2.id, pin: "1A" }, { component: g1.id, pin: "1Y" });
    expect(doc.probes.get(probe.id)!.net).toBe(doc.netOfPin({ component: g1.id, pin: "1Y" })!.id);
  });
});
