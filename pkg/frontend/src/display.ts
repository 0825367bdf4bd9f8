// Seven-segment and LED rendering: decode the segment input nets of a
// display instance from the simulation trace at the waveform cursor,
// and paint the lit segments.

import { CATALOG } from "./catalog.js";
import type { CanvasDocument, Placed } from "./document.js";
import { sampleChanges } from "./waveform.js";
import type { LogicChar, TraceJson } from "./types.js";

export interface DisplayState {
  lit: Set<string>;
  unknown: Set<string>;
}

function netSignal(doc: CanvasDocument, netId: string): string {
  return doc.nets.get(netId)?.label ?? netId;
}

/** Segment states of one display instance at time t, read off the trace. */
export function displayState(
  doc: CanvasDocument,
  inst: Placed,
  trace: TraceJson,
  t: number,
): DisplayState {
  const lit = new Set<string>();
  const unknown = new Set<string>();
  for (const pin of CATALOG[inst.part]?.pins ?? []) {
    if (pin.dir !== "in") continue;
    const net = doc.netOfPin({ component: inst.id, pin: pin.name });
    let value: LogicChar = "Z";
    if (net) {
      const changes = trace.changes[netSignal(doc, net.id)];
      if (changes) value = sampleChanges(changes, t);
    }
    if (value === "1") lit.add(pin.name);
    else if (value === "X" || value === "Z") unknown.add(pin.name);
  }
  return { lit, unknown };
}

// segment strokes on a 14x24 digit cell, [x0, y0, x1, y1]
const STROKES: Record<string, [number, number, number, number]> = {
  a: [2, 0, 12, 0],
  b: [14, 2, 14, 10],
  c: [14, 14, 14, 22],
  d: [2, 24, 12, 24],
  e: [0, 14, 0, 22],
  f: [0, 2, 0, 10],
  g: [2, 12, 12, 12],
};

export interface SegmentContext {
  strokeStyle: string | CanvasGradient | CanvasPattern;
  lineWidth: number;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
}

export function drawSevenSeg(
  ctx: SegmentContext,
  x: number,
  y: number,
  state: DisplayState,
): void {
  for (const [segment, [x0, y0, x1, y1]] of Object.entries(STROKES)) {
    ctx.strokeStyle = state.lit.has(segment)
      ? "#ff5d47"
      : state.unknown.has(segment)
        ? "#6b5a38"
        : "#2a3242";
    ctx.lineWidth = 3;
    ctx.beginPath();
    ctx.moveTo(x + x0, y + y0);
    ctx.lineTo(x + x1, y + y1);
    ctx.stroke();
  }
}
