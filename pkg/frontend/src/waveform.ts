// Waveform strip: per-probe lanes, a time viewport and a cursor. The
// value printed at the cursor is exactly sample(trace, signal, cursor):
// most recent change at or before the cursor instant.

import type { LogicChar, TraceJson } from "./types.js";

export interface Lane {
  label: string;
  signal: string;
  changes: [number, LogicChar][];
}

// narrow slice of CanvasRenderingContext2D so tests can pass a recorder
export interface StripContext {
  fillStyle: string | CanvasGradient | CanvasPattern;
  strokeStyle: string | CanvasGradient | CanvasPattern;
  font: string;
  lineWidth: number;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  fillRect(x: number, y: number, w: number, h: number): void;
  fillText(text: string, x: number, y: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
}

const LANE_HEIGHT = 28;
const LABEL_WIDTH = 110;

export function sampleChanges(changes: [number, LogicChar][], t: number): LogicChar {
  let lo = 0;
  let hi = changes.length - 1;
  let best: LogicChar = "Z";
  while (lo <= hi) {
    const mid = (lo + hi) >> 1;
    if (changes[mid][0] <= t) {
      best = changes[mid][1];
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  return best;
}

export class WaveformView {
  lanes: Lane[] = [];
  t0 = 0;
  t1 = 1;
  cursor = 0;

  setTrace(trace: TraceJson, wanted: { label: string; signal: string }[]): void {
    this.lanes = wanted
      .filter((w) => trace.changes[w.signal] !== undefined)
      .map((w) => ({ label: w.label, signal: w.signal, changes: trace.changes[w.signal] }));
    this.t0 = 0;
    this.t1 = Math.max(1, trace.horizon_ns);
    this.cursor = Math.min(this.cursor, this.t1);
  }

  sample(signal: string, t: number): LogicChar {
    const lane = this.lanes.find((l) => l.signal === signal || l.label === signal);
    if (!lane) throw new Error(`no such signal in view: ${signal}`);
    return sampleChanges(lane.changes, t);
  }

  /** The value the cursor readout shows for a lane; by construction this
   * is the same thing sample() returns. */
  renderedValueAt(signal: string): LogicChar {
    return this.sample(signal, this.cursor);
  }

  setCursor(t: number): void {
    this.cursor = Math.max(this.t0, Math.min(this.t1, Math.round(t)));
  }

  zoom(factor: number, center?: number): void {
    const mid = center ?? (this.t0 + this.t1) / 2;
    const span = Math.max(1, (this.t1 - this.t0) * factor);
    this.t0 = Math.max(0, Math.round(mid - span / 2));
    this.t1 = Math.round(this.t0 + span);
  }

  timeAtX(x: number, width: number): number {
    const plotW = Math.max(1, width - LABEL_WIDTH);
    const frac = Math.min(1, Math.max(0, (x - LABEL_WIDTH) / plotW));
    return Math.round(this.t0 + frac * (this.t1 - this.t0));
  }

  private xAt(t: number, width: number): number {
    const plotW = width - LABEL_WIDTH;
    return LABEL_WIDTH + ((t - this.t0) / Math.max(1, this.t1 - this.t0)) * plotW;
  }

  render(ctx: StripContext, width: number, height: number): void {
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#10141c";
    ctx.fillRect(0, 0, width, height);
    ctx.font = "12px monospace";
    this.lanes.forEach((lane, idx) => {
      const top = idx * LANE_HEIGHT + 6;
      const hi = top + 4;
      const lo = top + LANE_HEIGHT - 10;
      ctx.fillStyle = "#9fb4d0";
      ctx.fillText(lane.label, 6, lo);
      ctx.fillStyle = "#d8e2f0";
      ctx.fillText(this.renderedValueAt(lane.signal), LABEL_WIDTH - 26, lo);
      ctx.strokeStyle = "#46d27a";
      ctx.lineWidth = 1.5;
      ctx.beginPath();
      let prevY: number | null = null;
      const levelFor = (v: LogicChar) => (v === "1" ? hi : v === "0" ? lo : (hi + lo) / 2);
      const visible = lane.changes.filter(([t]) => t <= this.t1);
      for (let i = 0; i < visible.length; i++) {
        const [t, v] = visible[i];
        const x = Math.max(LABEL_WIDTH, this.xAt(t, width));
        const y = levelFor(v);
        if (prevY === null) {
          ctx.moveTo(x, y);
        } else {
          ctx.lineTo(x, prevY);
          ctx.lineTo(x, y);
        }
        prevY = y;
      }
      if (prevY !== null) ctx.lineTo(this.xAt(this.t1, width), prevY);
      ctx.stroke();
    });
    // cursor
    ctx.strokeStyle = "#e8c162";
    ctx.lineWidth = 1;
    ctx.beginPath();
    const cx = this.xAt(this.cursor, width);
    ctx.moveTo(cx, 0);
    ctx.lineTo(cx, height);
    ctx.stroke();
    ctx.fillStyle = "#e8c162";
    ctx.fillText(`${this.cursor} ns`, Math.min(cx + 4, width - 70), height - 4);
  }
}
