// Interactive simulation: ship the document plus stimulus to the
// simulate endpoint, keep the full all-nets trace, and feed the
// waveform strip from it. Because the watch set is every net, adding
// or removing probes mid-session only re-reads the cached trace.

import type { ApiClient } from "./api.js";
import type { CanvasDocument } from "./document.js";
import type { StimulusDoc } from "./stimulus.js";
import type { TraceJson } from "./types.js";
import { WaveformView } from "./waveform.js";

export interface SimSession {
  trace: TraceJson;
  log: string[];
  fault: string | null;
  view: WaveformView;
}

export class SimulationError extends Error {
  constructor(public diagnostics: string[]) {
    super(diagnostics.join("\n") || "design did not simulate");
  }
}

function probeSignals(doc: CanvasDocument): { label: string; signal: string }[] {
  return [...doc.probes.values()].map((p) => {
    const net = doc.nets.get(p.net);
    return { label: p.label, signal: net?.label ?? p.net };
  });
}

export async function runInteractive(
  api: ApiClient,
  doc: CanvasDocument,
  stimulus: StimulusDoc,
): Promise<SimSession> {
  const resp = await api.simulateNetlist(doc.toNetlist(), stimulus.toJson(), "ALL_NETS");
  if (!resp.ok || !resp.trace) {
    throw new SimulationError(resp.diagnostics ?? []);
  }
  const view = new WaveformView();
  view.setTrace(resp.trace, probeSignals(doc));
  return {
    trace: resp.trace,
    log: resp.log ?? [],
    fault: resp.fault ?? null,
    view,
  };
}

/** Re-derive the strip after probes changed; no new simulation needed
 * while the watched set was all nets. */
export function refreshProbes(session: SimSession, doc: CanvasDocument): void {
  session.view.setTrace(session.trace, probeSignals(doc));
}
