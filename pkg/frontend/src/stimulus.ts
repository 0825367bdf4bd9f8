// The stimulation-signal editor model. Input port names come straight
// from the circuit document; per input the user either fills in clock /
// constant parameters or draws a pattern lane, and both persist through
// the one published stimulus format.

import type { CanvasDocument } from "./document.js";
import type { LogicChar, SignalSpecJson, StimulusJson } from "./types.js";

export interface PatternEdge {
  t: number;
  value: LogicChar;
}

export type InputSpec =
  | { kind: "CONSTANT"; value: LogicChar }
  | { kind: "CLOCK"; freqHz: number; duty: number; phaseNs: number }
  | { kind: "PATTERN"; edges: PatternEdge[] };

export class StimulusDoc {
  inputs: string[] = [];
  specs = new Map<string, InputSpec>();
  horizonNs = 1_000;

  /** Read the target circuit's input port labels automatically. */
  static forCircuit(doc: CanvasDocument, horizonNs = 1_000): StimulusDoc {
    const out = new StimulusDoc();
    out.horizonNs = horizonNs;
    out.inputs = [...doc.topInputs.keys()];
    for (const name of out.inputs) {
      out.specs.set(name, { kind: "CONSTANT", value: "0" });
    }
    return out;
  }

  setConstant(name: string, value: LogicChar): void {
    this.require(name);
    this.specs.set(name, { kind: "CONSTANT", value });
  }

  setClock(name: string, freqHz: number, duty = 0.5, phaseNs = 0): void {
    this.require(name);
    if (!(freqHz > 0)) throw new Error("freq_hz must be positive");
    if (!(duty > 0 && duty < 1)) throw new Error("duty must be in (0, 1)");
    if (phaseNs < 0) throw new Error("phase_ns must be >= 0");
    this.specs.set(name, { kind: "CLOCK", freqHz, duty, phaseNs });
  }

  /** Clicking the pattern lane toggles/extends the drawn waveform; edges
   * stay strictly increasing by construction. */
  drawPatternEdge(name: string, t: number, value: LogicChar): void {
    this.require(name);
    let spec = this.specs.get(name);
    if (!spec || spec.kind !== "PATTERN") {
      spec = { kind: "PATTERN", edges: [{ t: 0, value: "0" }] };
      this.specs.set(name, spec);
    }
    const at = Math.max(0, Math.round(t));
    const edges = spec.edges;
    const existing = edges.findIndex((e) => e.t === at);
    if (existing >= 0) {
      edges[existing] = { t: at, value };
      return;
    }
    edges.push({ t: at, value });
    edges.sort((a, b) => a.t - b.t);
  }

  private require(name: string): void {
    if (!this.inputs.includes(name)) {
      throw new Error(`no such input port: ${name}`);
    }
  }

  toJson(): StimulusJson {
    const assignments: Record<string, SignalSpecJson> = {};
    for (const name of this.inputs) {
      const spec = this.specs.get(name);
      if (!spec) continue;
      if (spec.kind === "CONSTANT") {
        assignments[name] = { kind: "CONSTANT", value: spec.value };
      } else if (spec.kind === "CLOCK") {
        assignments[name] = {
          kind: "CLOCK",
          freq_hz: spec.freqHz,
          duty: spec.duty,
          phase_ns: spec.phaseNs,
        };
      } else {
        assignments[name] = {
          kind: "PATTERN",
          edges: spec.edges.map((e) => [e.t, e.value] as [number, LogicChar]),
        };
      }
    }
    return { format_version: 1, horizon_ns: this.horizonNs, assignments };
  }

  static fromJson(doc: StimulusJson): StimulusDoc {
    const out = new StimulusDoc();
    out.horizonNs = doc.horizon_ns;
    out.inputs = Object.keys(doc.assignments);
    for (const [name, spec] of Object.entries(doc.assignments)) {
      if (spec.kind === "CONSTANT") {
        out.specs.set(name, { kind: "CONSTANT", value: spec.value });
      } else if (spec.kind === "CLOCK") {
        out.specs.set(name, {
          kind: "CLOCK",
          freqHz: spec.freq_hz,
          duty: spec.duty ?? 0.5,
          phaseNs: spec.phase_ns ?? 0,
        });
      } else {
        out.specs.set(name, {
          kind: "PATTERN",
          edges: spec.edges.map(([t, value]) => ({ t, value })),
        });
      }
    }
    return out;
  }
}
