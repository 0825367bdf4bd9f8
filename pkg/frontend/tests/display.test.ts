// Seven-segment decode against a real captured counter trace: the ones
// digit cycles, and segment sets match the classic patterns.

import { describe, expect, it } from "vitest";

import counterNetlist from "../fixtures/counter60_netlist.json";
import counterTrace from "../fixtures/counter_trace.json";
import { CanvasDocument } from "../src/document.js";
import { displayState, drawSevenSeg } from "../src/display.js";
import { EditorController } from "../src/editor.js";
import type { NetlistJson, TraceJson } from "../src/types.js";

const DIGITS: Record<number, string> = {
  0: "abcdef",
  1: "bc",
  2: "abdeg",
  3: "abcdg",
  4: "bcfg",
  5: "acdfg",
  6: "cdefg",
};

// edges rise at 500 + j*1000; the count reads k in (edge k, edge k+1)
function sampleTimeFor(count: number): number {
  return 500 + count * 1000 - 1;
}

describe("seven-segment rendering", () => {
  const doc = CanvasDocument.fromNetlist(counterNetlist as NetlistJson);
  const trace = counterTrace as TraceJson;
  const onesDisplay = doc.instances.get("u_seg1")!;

  it("digits cycle with the counter", () => {
    for (let k = 0; k <= 6; k++) {
      const t = sampleTimeFor(k);
      if (t >= trace.horizon_ns) break;
      const state = displayState(doc, onesDisplay, trace, t);
      expect([...state.lit].sort().join("")).toBe(DIGITS[k]);
      expect(state.unknown.size).toBe(0);
    }
  });

  it("pre-settle segments read as unknown", () => {
    const state = displayState(doc, onesDisplay, trace, 0);
    expect(state.unknown.size).toBeGreaterThan(0);
  });

  it("lit and dark segments stroke in different colors", () => {
    const strokes: string[] = [];
    const ctx = {
      strokeStyle: "" as string,
      lineWidth: 0,
      beginPath() {},
      moveTo() {},
      lineTo() {},
      stroke() {
        strokes.push(String(this.strokeStyle));
      },
    };
    const state = displayState(doc, onesDisplay, trace, 5499); // showing 5
    drawSevenSeg(ctx, 0, 0, state);
    expect(strokes.length).toBe(7);
    expect(new Set(strokes).size).toBeGreaterThan(1);
  });

  it("the editor lights displays when a trace is attached", () => {
    const editor = new EditorController({
      status: () => {},
      promptPortName: () => null,
      onChange: () => {},
    });
    editor.doc = doc;
    editor.displayTrace = trace;
    editor.displayTime = 5499;
    const strokes: string[] = [];
    const ctx = {
      fillStyle: "",
      strokeStyle: "",
      font: "",
      lineWidth: 1,
      beginPath() {},
      moveTo() {},
      lineTo() {},
      stroke() {
        strokes.push(String(this.strokeStyle));
      },
      fillRect() {},
      fillText() {},
      clearRect() {},
      strokeRect() {},
      arc() {},
      fill() {},
    };
    editor.render(ctx, 1000, 600);
    expect(strokes).toContain("#ff5d47"); // at least one lit segment stroked
  });
});
