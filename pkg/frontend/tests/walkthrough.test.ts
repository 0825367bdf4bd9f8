// The scripted UI walkthrough: drag a NAND onto the canvas, mark its
// input ports, attach a probe to the output, run an interactive
// simulation, and watch the strip show the settled 0 after the 10 ns
// propagation delay. The simulate response is the real kernel's output
// for this circuit (captured fixture), remapped onto whatever net ids
// the editor generated.

import { beforeEach, describe, expect, it, vi } from "vitest";

import nandFixture from "../fixtures/nand_simulate_response.json";
import { ApiClient } from "../src/api.js";
import { EditorController, type EditorContext } from "../src/editor.js";
import { pinGeom } from "../src/catalog.js";
import { runInteractive, refreshProbes } from "../src/simulate.js";
import { StimulusDoc } from "../src/stimulus.js";
import type { NetlistJson, SimulateResponse, TraceJson } from "../src/types.js";

function editorContext(): EditorContext {
  return {
    fillStyle: "",
    strokeStyle: "",
    font: "",
    lineWidth: 1,
    beginPath() {},
    moveTo() {},
    lineTo() {},
    stroke() {},
    fillRect() {},
    fillText() {},
    clearRect() {},
    strokeRect() {},
    arc() {},
    fill() {},
  };
}

/** Serve the captured kernel trace, renaming its nets (n_a/n_b/n_y from
 * the reference circuit) to the ids the editor invented. */
function simulateMock(): { fetchFn: typeof fetch; calls: { path: string; body: NetlistJson }[] } {
  const calls: { path: string; body: NetlistJson }[] = [];
  const fetchFn = (async (url: RequestInfo | URL, init?: RequestInit) => {
    const path = String(url);
    if (!path.endsWith("/api/simulate")) {
      return new Response(JSON.stringify({ code: "NOT_FOUND", message: path }), { status: 404 });
    }
    const request = JSON.parse(String(init?.body));
    const netlist = JSON.parse(request.payload) as NetlistJson;
    calls.push({ path, body: netlist });

    const pinNet = (pin: string) =>
      netlist.nets.find((n) => n.endpoints.some((e) => e.pin === pin))?.id;
    const mapping: Record<string, string | undefined> = {
      n_a: pinNet("1A"),
      n_b: pinNet("1B"),
      n_y: pinNet("1Y"),
    };
    const fixtureTrace = nandFixture.trace as TraceJson;
    const trace: TraceJson = { signals: [], horizon_ns: request.stimulus.horizon_ns, changes: {} };
    for (const [fixtureName, changes] of Object.entries(fixtureTrace.changes)) {
      const mapped = mapping[fixtureName];
      if (mapped) {
        trace.signals.push(mapped);
        trace.changes[mapped] = changes as TraceJson["changes"][string];
      }
    }
    const body: SimulateResponse = { ok: true, trace, log: [], fault: null };
    return new Response(JSON.stringify(body), {
      status: 200,
      headers: { "Content-Type": "application/json" },
    });
  }) as typeof fetch;
  return { fetchFn, calls };
}

describe("NAND walkthrough", () => {
  let editor: EditorController;
  const portNames: string[] = [];
  const statusLog: string[] = [];

  beforeEach(() => {
    portNames.length = 0;
    statusLog.length = 0;
    editor = new EditorController({
      status: (message) => void statusLog.push(message),
      promptPortName: () => portNames.shift() ?? null,
      onChange: () => {},
    });
  });

  it("builds the one-gate circuit, probes it, and sees the 10 ns transition", async () => {
    // 1. drag the NAND from the palette onto the canvas
    editor.startPlacing("74LS00");
    editor.pointerDown(200, 120);
    expect(editor.doc.instances.size).toBe(1);
    const gate = [...editor.doc.instances.values()][0];
    expect(gate.part).toBe("74LS00");

    // drag it to a nicer spot (select + move + drop)
    editor.pointerDown(gate.x + 30, gate.y + 30);
    editor.pointerMove(gate.x + 90, gate.y + 50);
    editor.pointerUp(gate.x + 90, gate.y + 50);
    expect([gate.x, gate.y]).toEqual([260, 140]);

    // 2. mark the unit-1 pins as ports (clicks with the port tools)
    const pinAt = (pin: string) => {
      const geom = pinGeom("74LS00", pin)!;
      return { x: gate.x + geom.x, y: gate.y + geom.y };
    };
    editor.setTool("port-in");
    portNames.push("a");
    editor.pointerDown(pinAt("1A").x, pinAt("1A").y);
    portNames.push("b");
    editor.pointerDown(pinAt("1B").x, pinAt("1B").y);
    expect([...editor.doc.topInputs.keys()]).toEqual(["a", "b"]);
    editor.setTool("port-out");
    portNames.push("y");
    editor.pointerDown(pinAt("1Y").x, pinAt("1Y").y);
    expect([...editor.doc.topOutputs.keys()]).toEqual(["y"]);

    // 3. attach a probe to the output net
    editor.setTool("probe");
    editor.pointerDown(pinAt("1Y").x, pinAt("1Y").y);
    expect(editor.doc.probes.size).toBe(1);

    // the committed document serializes to a well-formed netlist file
    const netlist = editor.doc.toNetlist();
    expect(netlist.format_version).toBe(1);
    expect(netlist.instances).toHaveLength(1);
    expect(netlist.top_inputs.map((p) => p.name)).toEqual(["a", "b"]);

    // 4. stimulus editor lists the inputs automatically; hold both at 1
    const stim = StimulusDoc.forCircuit(editor.doc, 100);
    expect(stim.inputs).toEqual(["a", "b"]);
    stim.setConstant("a", "1");
    stim.setConstant("b", "1");

    // 5. run the interactive simulation through the API client
    const { fetchFn, calls } = simulateMock();
    const api = new ApiClient("", fetchFn);
    api.token = "token";
    const session = await runInteractive(api, editor.doc, stim);
    expect(calls).toHaveLength(1);
    expect(calls[0].body.name).toBe(netlist.name);

    // 6. the waveform strip shows X before and 0 after the 10 ns delay
    const probe = [...editor.doc.probes.values()][0];
    const outputNet = editor.doc.netOfPin({ component: gate.id, pin: "1Y" })!;
    expect(session.view.lanes).toHaveLength(1);
    expect(session.view.lanes[0].label).toBe(probe.label);
    expect(session.view.lanes[0].changes).toEqual([
      [0, "X"],
      [10, "0"],
    ]);
    session.view.setCursor(5);
    expect(session.view.renderedValueAt(outputNet.id)).toBe("X");
    session.view.setCursor(15);
    expect(session.view.renderedValueAt(outputNet.id)).toBe("0");

    // 7. adding a probe re-renders from the cached trace, no new request
    editor.setTool("probe");
    editor.pointerDown(pinAt("1A").x, pinAt("1A").y);
    expect(editor.doc.probes.size).toBe(2);
    refreshProbes(session, editor.doc);
    expect(session.view.lanes).toHaveLength(2);
    expect(calls).toHaveLength(1);

    // 8. undo via keyboard shortcut removes the second probe
    editor.keyDown("z", true);
    refreshProbes(session, editor.doc);
    expect(session.view.lanes).toHaveLength(1);

    // the canvas renderer accepts the document without throwing
    editor.render(editorContext(), 900, 480);
  });

  it("refuses an output-to-output wire at draw time", () => {
    editor.startPlacing("74LS00");
    editor.pointerDown(100, 100);
    editor.startPlacing("74LS04");
    editor.pointerDown(400, 100);
    const [nand, inv] = [...editor.doc.instances.values()];
    const at = (inst: typeof nand, pin: string) => {
      const geom = pinGeom(inst.part, pin)!;
      return { x: inst.x + geom.x, y: inst.y + geom.y };
    };
    editor.setTool("wire");
    editor.pointerDown(at(nand, "1Y").x, at(nand, "1Y").y);
    editor.pointerDown(at(inv, "1Y").x, at(inv, "1Y").y);
    expect(editor.lastError).toMatch(/two output ports/);
    expect(editor.doc.nets.size).toBe(0);
    // a legal wire still works afterwards
    editor.pointerDown(at(nand, "1Y").x, at(nand, "1Y").y);
    editor.pointerDown(at(inv, "1A").x, at(inv, "1A").y);
    expect(editor.lastError).toBeNull();
    expect(editor.doc.nets.size).toBe(1);
  });

  it("DOM event wiring drives the same controller", () => {
    const canvas = document.createElement("canvas");
    Object.defineProperty(canvas, "getBoundingClientRect", {
      value: () => ({ left: 0, top: 0, width: 900, height: 480 }),
    });
    document.body.appendChild(canvas);
    editor.attach(canvas);
    editor.startPlacing("VCC");
    canvas.dispatchEvent(new MouseEvent("mousedown", { clientX: 50, clientY: 60 }));
    expect(editor.doc.instances.size).toBe(1);
    expect([...editor.doc.instances.values()][0].part).toBe("VCC");
  });
});
