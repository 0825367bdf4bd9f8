// Canvas circuit editor: drag parts from the palette, wire pins with
// two clicks, place probes, mark ports, move things around. All state
// changes go through CanvasDocument so undo/redo and serialization see
// exactly what the canvas shows.

import { CATALOG } from "./catalog.js";
import { displayState, drawSevenSeg } from "./display.js";
import { CanvasDocument, pinKey } from "./document.js";
import type { PinRefJson, TraceJson } from "./types.js";
import type { StripContext } from "./waveform.js";

export type Tool = "select" | "wire" | "probe" | "port-in" | "port-out";

const PIN_RADIUS = 5;

export interface EditorContext extends StripContext {
  strokeRect(x: number, y: number, w: number, h: number): void;
  arc(x: number, y: number, r: number, a0: number, a1: number): void;
  fill(): void;
}

export interface EditorHooks {
  status(message: string): void;
  promptPortName(suggested: string): string | null;
  onChange(): void;
}

interface DragState {
  id: string;
  dx: number;
  dy: number;
  startX: number;
  startY: number;
}

export class EditorController {
  doc = new CanvasDocument();
  tool: Tool = "select";
  placingPart: string | null = null;
  lastError: string | null = null;
  // when set, display parts light up from this trace at this instant
  displayTrace: TraceJson | null = null;
  displayTime = 0;

  private drag: DragState | null = null;
  private portCounter = 0;

  constructor(private hooks: EditorHooks) {}

  // -- geometry -----------------------------------------------------------

  pinPosition(ref: PinRefJson): { x: number; y: number } | null {
    const inst = this.doc.instances.get(ref.component);
    if (!inst) return null;
    const geom = CATALOG[inst.part]?.pins.find((p) => p.name === ref.pin);
    if (!geom) return null;
    return { x: inst.x + geom.x, y: inst.y + geom.y };
  }

  hitPin(x: number, y: number): PinRefJson | null {
    for (const inst of this.doc.instances.values()) {
      for (const pin of CATALOG[inst.part]?.pins ?? []) {
        const px = inst.x + pin.x;
        const py = inst.y + pin.y;
        if (Math.abs(px - x) <= PIN_RADIUS + 2 && Math.abs(py - y) <= PIN_RADIUS + 2) {
          return { component: inst.id, pin: pin.name };
        }
      }
    }
    return null;
  }

  hitInstance(x: number, y: number): string | null {
    for (const inst of [...this.doc.instances.values()].reverse()) {
      const geom = CATALOG[inst.part];
      if (!geom) continue;
      if (x >= inst.x && x <= inst.x + geom.width && y >= inst.y && y <= inst.y + geom.height) {
        return inst.id;
      }
    }
    return null;
  }

  // -- palette / tools ------------------------------------------------------

  startPlacing(part: string): void {
    this.placingPart = part;
    this.tool = "select";
    this.hooks.status(`placing ${part}: click the canvas`);
  }

  setTool(tool: Tool): void {
    this.tool = tool;
    this.placingPart = null;
    this.doc.pendingWire = null;
    this.hooks.status(`tool: ${tool}`);
  }

  // -- pointer protocol (DOM handlers delegate here) -------------------------

  pointerDown(x: number, y: number): void {
    this.lastError = null;
    if (this.placingPart) {
      const placed = this.doc.addInstance(this.placingPart, Math.round(x), Math.round(y));
      this.placingPart = null;
      this.doc.selection = new Set([placed.id]);
      this.hooks.status(`placed ${placed.part} as ${placed.id}`);
      this.hooks.onChange();
      return;
    }
    const pin = this.hitPin(x, y);
    if (this.tool === "wire") {
      if (!pin) return;
      if (!this.doc.pendingWire) {
        this.doc.pendingWire = pin;
        this.hooks.status(`wire from ${pinKey(pin)}...`);
        return;
      }
      const error = this.doc.wire(this.doc.pendingWire, pin);
      this.doc.pendingWire = null;
      if (error) {
        this.lastError = error;
        this.hooks.status(error);
      } else {
        this.hooks.status(`wired to ${pinKey(pin)}`);
        this.hooks.onChange();
      }
      return;
    }
    if (this.tool === "probe") {
      const target = pin ? this.doc.netOfPin(pin) : null;
      if (pin && !target) {
        this.lastError = "pin is not wired to anything yet";
        this.hooks.status(this.lastError);
        return;
      }
      if (target) {
        const probe = this.doc.addProbe(target.id);
        this.hooks.status(`probe ${probe.label} on ${target.id}`);
        this.hooks.onChange();
      }
      return;
    }
    if (this.tool === "port-in" || this.tool === "port-out") {
      if (!pin) return;
      const direction = this.tool === "port-in" ? "in" : "out";
      this.portCounter += 1;
      const suggested = `${direction === "in" ? "in" : "out"}${this.portCounter}`;
      const name = this.hooks.promptPortName(suggested);
      if (!name) return;
      const error = this.doc.markPort(pin, name, direction);
      if (error) {
        this.lastError = error;
        this.hooks.status(error);
      } else {
        this.hooks.status(`port ${name} -> ${pinKey(pin)}`);
        this.hooks.onChange();
      }
      return;
    }
    // select / move
    const instId = this.hitInstance(x, y);
    if (instId) {
      const inst = this.doc.instances.get(instId)!;
      this.doc.selection = new Set([instId]);
      this.drag = { id: instId, dx: x - inst.x, dy: y - inst.y, startX: inst.x, startY: inst.y };
    } else {
      this.doc.selection.clear();
    }
  }

  pointerMove(x: number, y: number): void {
    if (this.drag) {
      this.doc.moveInstance(this.drag.id, Math.round(x - this.drag.dx), Math.round(y - this.drag.dy), true);
    }
  }

  pointerUp(x: number, y: number): void {
    if (this.drag) {
      const inst = this.doc.instances.get(this.drag.id);
      if (inst && (inst.x !== this.drag.startX || inst.y !== this.drag.startY)) {
        // restore then re-apply as a single undoable move
        const { x: fx, y: fy } = inst;
        inst.x = this.drag.startX;
        inst.y = this.drag.startY;
        this.doc.moveInstance(this.drag.id, fx, fy);
        this.hooks.onChange();
      }
      this.drag = null;
    }
  }

  keyDown(key: string, ctrl = false): void {
    if (key === "Escape") {
      this.doc.pendingWire = null;
      this.placingPart = null;
      return;
    }
    if (key === "Delete" || key === "Backspace") {
      this.doc.deleteSelection();
      this.hooks.onChange();
      return;
    }
    if (ctrl && key.toLowerCase() === "z") {
      this.doc.undo();
      this.hooks.onChange();
      return;
    }
    if (ctrl && key.toLowerCase() === "y") {
      this.doc.redo();
      this.hooks.onChange();
    }
  }

  attach(canvas: HTMLCanvasElement): void {
    const pos = (ev: MouseEvent) => {
      const rect = canvas.getBoundingClientRect();
      return { x: ev.clientX - rect.left, y: ev.clientY - rect.top };
    };
    canvas.addEventListener("mousedown", (ev) => {
      const { x, y } = pos(ev);
      this.pointerDown(x, y);
    });
    canvas.addEventListener("mousemove", (ev) => {
      const { x, y } = pos(ev);
      this.pointerMove(x, y);
    });
    canvas.addEventListener("mouseup", (ev) => {
      const { x, y } = pos(ev);
      this.pointerUp(x, y);
    });
    window.addEventListener("keydown", (ev) => this.keyDown(ev.key, ev.ctrlKey || ev.metaKey));
  }

  // -- drawing ---------------------------------------------------------------

  render(ctx: EditorContext, width: number, height: number): void {
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#141820";
    ctx.fillRect(0, 0, width, height);
    ctx.strokeStyle = "#1e2633";
    ctx.lineWidth = 1;
    for (let gx = 0; gx < width; gx += 20) {
      ctx.beginPath();
      ctx.moveTo(gx, 0);
      ctx.lineTo(gx, height);
      ctx.stroke();
    }
    for (let gy = 0; gy < height; gy += 20) {
      ctx.beginPath();
      ctx.moveTo(0, gy);
      ctx.lineTo(width, gy);
      ctx.stroke();
    }

    // wires: star topology from the first endpoint of each net
    ctx.strokeStyle = "#5a89c8";
    ctx.lineWidth = 2;
    for (const net of this.doc.nets.values()) {
      const anchors = net.endpoints
        .map((e) => this.pinPosition(e))
        .filter((p): p is { x: number; y: number } => p !== null);
      for (let i = 1; i < anchors.length; i++) {
        ctx.beginPath();
        ctx.moveTo(anchors[0].x, anchors[0].y);
        ctx.lineTo(anchors[i].x, anchors[i].y);
        ctx.stroke();
      }
    }

    for (const inst of this.doc.instances.values()) {
      const geom = CATALOG[inst.part];
      if (!geom) continue;
      ctx.fillStyle = "#222c3d";
      ctx.fillRect(inst.x, inst.y, geom.width, geom.height);
      ctx.strokeStyle = this.doc.selection.has(inst.id) ? "#e8c162" : "#3d4f6b";
      ctx.strokeRect(inst.x, inst.y, geom.width, geom.height);
      ctx.fillStyle = "#cfd9e8";
      ctx.font = "11px monospace";
      ctx.fillText(inst.part, inst.x + 4, inst.y + 12);
      ctx.fillText(inst.id, inst.x + 4, inst.y + geom.height - 4);
      for (const pin of geom.pins) {
        ctx.fillStyle = pin.dir === "out" ? "#67c577" : "#d9a05b";
        ctx.beginPath();
        ctx.arc(inst.x + pin.x, inst.y + pin.y, PIN_RADIUS - 1, 0, Math.PI * 2);
        ctx.fill();
      }
      if (inst.part === "SEVEN_SEG" && this.displayTrace) {
        const state = displayState(this.doc, inst, this.displayTrace, this.displayTime);
        drawSevenSeg(ctx, inst.x + geom.width / 2 - 7, inst.y + 20, state);
      }
    }

    // probe flags
    ctx.fillStyle = "#e8c162";
    for (const probe of this.doc.probes.values()) {
      const net = this.doc.nets.get(probe.net);
      const anchor = net && net.endpoints.length ? this.pinPosition(net.endpoints[0]) : null;
      if (anchor) {
        ctx.fillRect(anchor.x - 3, anchor.y - 14, 6, 8);
        ctx.fillText(probe.label, anchor.x + 6, anchor.y - 8);
      }
    }

    // port tags
    ctx.fillStyle = "#7fd0c9";
    const tag = (name: string, netId: string, marker: string) => {
      const net = this.doc.nets.get(netId);
      const anchor = net && net.endpoints.length ? this.pinPosition(net.endpoints[0]) : null;
      if (anchor) ctx.fillText(`${marker}${name}`, anchor.x - 8, anchor.y + 16);
    };
    for (const [name, netId] of this.doc.topInputs) tag(name, netId, "▶");
    for (const [name, netId] of this.doc.topOutputs) tag(name, netId, "◀");
  }
}
