// The editable mirror of a circuit: instances, nets, top ports, plus
// transient edit state (selection, pending wire) and an undo/redo stack.
// Every committed edit can serialize to a netlist file the service accepts.

import { CATALOG, pinGeom } from "./catalog.js";
import type { NetlistJson, PinRefJson } from "./types.js";

export interface Placed {
  id: string;
  part: string;
  params: Record<string, number>;
  x: number;
  y: number;
}

export interface EditNet {
  id: string;
  label?: string;
  endpoints: PinRefJson[];
}

export interface Probe {
  id: string;
  net: string;
  label: string;
}

export type PinKey = string; // "instance.pin"

export function pinKey(ref: PinRefJson): PinKey {
  return `${ref.component}.${ref.pin}`;
}

interface Snapshot {
  doc: string; // serialized committed state
  probes: string;
}

export class CanvasDocument {
  name = "untitled";
  instances = new Map<string, Placed>();
  nets = new Map<string, EditNet>();
  topInputs = new Map<string, string>(); // port name -> net id
  topOutputs = new Map<string, string>();
  probes = new Map<string, Probe>();

  // transient edit state, never serialized
  selection = new Set<string>();
  pendingWire: PinRefJson | null = null;

  private undoStack: Snapshot[] = [];
  private redoStack: Snapshot[] = [];
  private counter = 0;

  private snapshot(): Snapshot {
    return {
      doc: JSON.stringify(this.toNetlist()),
      probes: JSON.stringify([...this.probes.values()]),
    };
  }

  private commit(before: Snapshot): void {
    this.undoStack.push(before);
    this.redoStack.length = 0;
  }

  private freshId(prefix: string): string {
    this.counter += 1;
    let id = `${prefix}${this.counter}`;
    while (this.instances.has(id) || this.nets.has(id)) {
      this.counter += 1;
      id = `${prefix}${this.counter}`;
    }
    return id;
  }

  addInstance(part: string, x: number, y: number): Placed {
    if (!CATALOG[part]) throw new Error(`unknown part ${part}`);
    const before = this.snapshot();
    const placed: Placed = { id: this.freshId("u"), part, params: {}, x, y };
    this.instances.set(placed.id, placed);
    this.commit(before);
    return placed;
  }

  moveInstance(id: string, x: number, y: number, transient = false): void {
    const inst = this.instances.get(id);
    if (!inst) return;
    if (!transient) {
      const before = this.snapshot();
      inst.x = x;
      inst.y = y;
      this.commit(before);
    } else {
      inst.x = x;
      inst.y = y;
    }
  }

  setParam(id: string, key: string, value: number): void {
    const inst = this.instances.get(id);
    if (!inst) return;
    const before = this.snapshot();
    inst.params[key] = value;
    this.commit(before);
  }

  netOfPin(ref: PinRefJson): EditNet | undefined {
    for (const net of this.nets.values()) {
      if (net.endpoints.some((e) => pinKey(e) === pinKey(ref))) return net;
    }
    return undefined;
  }

  private pinDir(ref: PinRefJson): "in" | "out" | undefined {
    const inst = this.instances.get(ref.component);
    if (!inst) return undefined;
    return pinGeom(inst.part, ref.pin)?.dir;
  }

  private netHasOutput(net: EditNet): boolean {
    return net.endpoints.some((e) => this.pinDir(e) === "out");
  }

  /** Wire two pins together; returns an error message instead of
   * committing when the drawing rule forbids it (two output ports). */
  wire(a: PinRefJson, b: PinRefJson): string | null {
    if (pinKey(a) === pinKey(b)) return "cannot wire a pin to itself";
    const dirA = this.pinDir(a);
    const dirB = this.pinDir(b);
    if (!dirA || !dirB) return "no such pin";
    const netA = this.netOfPin(a);
    const netB = this.netOfPin(b);
    const outputs =
      (dirA === "out" || (netA ? this.netHasOutput(netA) : false) ? 1 : 0) +
      (dirB === "out" || (netB ? this.netHasOutput(netB) : false) ? 1 : 0);
    if (outputs > 1) return "cannot wire two output ports together";

    const before = this.snapshot();
    if (netA && netB) {
      if (netA.id !== netB.id) {
        netA.endpoints.push(...netB.endpoints);
        netA.label = netA.label ?? netB.label;
        this.retargetNet(netB.id, netA.id);
        this.nets.delete(netB.id);
      }
    } else if (netA) {
      netA.endpoints.push(b);
    } else if (netB) {
      netB.endpoints.push(a);
    } else {
      const id = this.freshId("w");
      this.nets.set(id, { id, endpoints: [a, b] });
    }
    this.commit(before);
    return null;
  }

  private retargetNet(from: string, to: string): void {
    for (const [name, net] of this.topInputs) if (net === from) this.topInputs.set(name, to);
    for (const [name, net] of this.topOutputs) if (net === from) this.topOutputs.set(name, to);
    for (const probe of this.probes.values()) if (probe.net === from) probe.net = to;
  }

  /** Expose a pin as a named top-level port, stubbing a net if needed. */
  markPort(ref: PinRefJson, portName: string, direction: "in" | "out"): string | null {
    if (this.topInputs.has(portName) || this.topOutputs.has(portName)) {
      return `port name ${portName} is taken`;
    }
    const pinD = this.pinDir(ref);
    if (!pinD) return "no such pin";
    if (direction === "in" && pinD === "out") {
      return "an input port must drive input pins";
    }
    const before = this.snapshot();
    let net = this.netOfPin(ref);
    if (!net) {
      const id = this.freshId("w");
      net = { id, endpoints: [ref] };
      this.nets.set(id, net);
    }
    (direction === "in" ? this.topInputs : this.topOutputs).set(portName, net.id);
    this.commit(before);
    return null;
  }

  addProbe(net: string, label?: string): Probe {
    const before = this.snapshot();
    const id = this.freshId("probe");
    const probe: Probe = { id, net, label: label ?? this.nets.get(net)?.label ?? net };
    this.probes.set(id, probe);
    this.commit(before);
    return probe;
  }

  removeProbe(id: string): void {
    if (!this.probes.has(id)) return;
    const before = this.snapshot();
    this.probes.delete(id);
    this.commit(before);
  }

  deleteSelection(): void {
    if (this.selection.size === 0) return;
    const before = this.snapshot();
    for (const id of this.selection) {
      this.instances.delete(id);
      for (const net of [...this.nets.values()]) {
        net.endpoints = net.endpoints.filter((e) => e.component !== id);
        if (net.endpoints.length === 0) {
          for (const [name, n] of [...this.topInputs]) if (n === net.id) this.topInputs.delete(name);
          for (const [name, n] of [...this.topOutputs]) if (n === net.id) this.topOutputs.delete(name);
          for (const [pid, probe] of [...this.probes]) if (probe.net === net.id) this.probes.delete(pid);
          this.nets.delete(net.id);
        }
      }
    }
    this.selection.clear();
    this.commit(before);
  }

  undo(): void {
    const snap = this.undoStack.pop();
    if (!snap) return;
    this.redoStack.push(this.snapshot());
    this.restore(snap);
  }

  redo(): void {
    const snap = this.redoStack.pop();
    if (!snap) return;
    this.undoStack.push(this.snapshot());
    this.restore(snap);
  }

  private restore(snap: Snapshot): void {
    this.loadNetlist(JSON.parse(snap.doc) as NetlistJson);
    this.probes = new Map(
      (JSON.parse(snap.probes) as Probe[]).map((p) => [p.id, p]),
    );
  }

  toNetlist(): NetlistJson {
    return {
      format_version: 1,
      name: this.name,
      instances: [...this.instances.values()].map((i) => ({
        id: i.id,
        part: i.part,
        params: { ...i.params },
        position: [Math.round(i.x), Math.round(i.y)] as [number, number],
      })),
      nets: [...this.nets.values()].map((n) => ({
        id: n.id,
        ...(n.label ? { label: n.label } : {}),
        endpoints: n.endpoints.map((e) => ({ ...e })),
      })),
      top_inputs: [...this.topInputs].map(([name, net]) => ({ name, net })),
      top_outputs: [...this.topOutputs].map(([name, net]) => ({ name, net })),
    };
  }

  loadNetlist(doc: NetlistJson): void {
    this.name = doc.name;
    this.instances = new Map(
      doc.instances.map((i) => [
        i.id,
        { id: i.id, part: i.part, params: { ...i.params }, x: i.position[0], y: i.position[1] },
      ]),
    );
    this.nets = new Map(
      doc.nets.map((n) => [n.id, { id: n.id, label: n.label, endpoints: n.endpoints.map((e) => ({ ...e })) }]),
    );
    this.topInputs = new Map(doc.top_inputs.map((p) => [p.name, p.net]));
    this.topOutputs = new Map(doc.top_outputs.map((p) => [p.name, p.net]));
    this.selection.clear();
    this.pendingWire = null;
  }

  static fromNetlist(doc: NetlistJson): CanvasDocument {
    const out = new CanvasDocument();
    out.loadNetlist(doc);
    return out;
  }
}
