// App shell: login, the four-column home page, the circuit editor with
// stimulus panel and waveform strip, the VHDL editor, and the
// instructor dashboard.

import { ApiClient, ApiError } from "./api.js";
import { PALETTE_ORDER } from "./catalog.js";
import { EditorController, Tool } from "./editor.js";
import { HomePage } from "./home.js";
import { Dashboard } from "./dashboard.js";
import { runInteractive, refreshProbes, SimSession, SimulationError } from "./simulate.js";
import { StimulusDoc } from "./stimulus.js";
import { VhdlEditor } from "./vhdl_editor.js";
import type { ProjectMeta } from "./types.js";

const api = new ApiClient("");

function el<T extends HTMLElement = HTMLElement>(selector: string): T {
  const node = document.querySelector(selector);
  if (!node) throw new Error(`missing element ${selector}`);
  return node as T;
}

function show(viewId: string): void {
  for (const view of document.querySelectorAll<HTMLElement>(".view")) {
    view.hidden = view.id !== viewId;
  }
}

function setStatus(message: string): void {
  el("#status").textContent = message;
}

// -- login -------------------------------------------------------------------

async function handleLogin(): Promise<void> {
  const name = el<HTMLInputElement>("#login-name").value;
  const password = el<HTMLInputElement>("#login-password").value;
  try {
    const who = await api.login(name, password);
    setStatus(`signed in as ${who.name} (${who.role.toLowerCase()})`);
    el("#whoami").textContent = who.name;
    if (who.role === "INSTRUCTOR") el("#nav-dashboard").hidden = false;
    await openHome();
  } catch (err) {
    setStatus(err instanceof ApiError ? `login failed: ${err.message}` : String(err));
  }
}

// -- home ---------------------------------------------------------------------

const home = new HomePage(api, document.getElementById("home-root") ?? document.body, (p) => {
  void openProject(p);
});

async function openHome(): Promise<void> {
  await home.load();
  show("view-home");
}

// -- circuit editor -------------------------------------------------------------

let currentProject: ProjectMeta | null = null;
let session: SimSession | null = null;
let stimulusDoc: StimulusDoc | null = null;

const editor = new EditorController({
  status: setStatus,
  promptPortName: (suggested) => window.prompt("port name", suggested),
  onChange: () => {
    redraw();
    void persist();
  },
});

function redraw(): void {
  editor.displayTrace = session?.trace ?? null;
  editor.displayTime = session?.view.cursor ?? 0;
  const canvas = el<HTMLCanvasElement>("#schematic");
  const ctx = canvas.getContext("2d");
  if (ctx) editor.render(ctx, canvas.width, canvas.height);
  const strip = el<HTMLCanvasElement>("#waveforms");
  const sctx = strip.getContext("2d");
  if (sctx && session) session.view.render(sctx, strip.width, strip.height);
}

async function persist(): Promise<void> {
  if (!currentProject) return;
  try {
    await api.saveProject(currentProject.id, JSON.stringify(editor.doc.toNetlist()));
  } catch (err) {
    setStatus(`save failed: ${err instanceof ApiError ? err.message : err}`);
  }
}

async function openProject(project: ProjectMeta): Promise<void> {
  currentProject = project;
  const full = await api.getProject(project.id);
  if (project.repr === "VHDL") {
    vhdl.textarea.value = full.payload;
    show("view-vhdl");
    return;
  }
  if (full.payload) {
    try {
      editor.doc.loadNetlist(JSON.parse(full.payload));
    } catch {
      setStatus("project payload is not a netlist yet; starting fresh");
    }
  }
  editor.doc.name = full.name;
  buildStimulusPanel();
  show("view-editor");
  redraw();
}

function buildStimulusPanel(): void {
  stimulusDoc = StimulusDoc.forCircuit(editor.doc, Number(el<HTMLInputElement>("#horizon").value) || 1000);
  const panel = el("#stimulus-rows");
  panel.innerHTML = "";
  for (const name of stimulusDoc.inputs) {
    const row = document.createElement("div");
    row.className = "stim-row";
    row.innerHTML =
      `<span class="stim-name">${name}</span>` +
      `<select data-input="${name}">` +
      `<option value="CONSTANT">constant</option><option value="CLOCK">clock</option>` +
      `</select>` +
      `<input data-freq="${name}" placeholder="freq Hz" size="8" hidden />` +
      `<select data-level="${name}"><option>0</option><option>1</option></select>`;
    const kind = row.querySelector<HTMLSelectElement>("select[data-input]")!;
    const freq = row.querySelector<HTMLInputElement>("input[data-freq]")!;
    const level = row.querySelector<HTMLSelectElement>("select[data-level]")!;
    const apply = () => {
      if (!stimulusDoc) return;
      if (kind.value === "CLOCK") {
        freq.hidden = false;
        level.hidden = true;
        stimulusDoc.setClock(name, Number(freq.value) || 50);
      } else {
        freq.hidden = true;
        level.hidden = false;
        stimulusDoc.setConstant(name, level.value === "1" ? "1" : "0");
      }
    };
    kind.addEventListener("change", apply);
    freq.addEventListener("change", apply);
    level.addEventListener("change", apply);
    panel.appendChild(row);
  }
}

async function runSimulation(): Promise<void> {
  if (!stimulusDoc) buildStimulusPanel();
  if (!stimulusDoc) return;
  stimulusDoc.horizonNs = Number(el<HTMLInputElement>("#horizon").value) || 1000;
  try {
    session = await runInteractive(api, editor.doc, stimulusDoc);
    setStatus(session.fault ? `simulation fault: ${session.fault}` : "simulation done");
    el("#sim-log").textContent = session.log.join("\n");
  } catch (err) {
    if (err instanceof SimulationError) {
      setStatus("design has problems; see the log");
      el("#sim-log").textContent = err.diagnostics.join("\n");
    } else {
      setStatus(String(err));
    }
  }
  redraw();
}

// -- vhdl editor ------------------------------------------------------------------

const vhdl = new VhdlEditor(api, document.getElementById("vhdl-root") ?? document.body);

// -- dashboard -------------------------------------------------------------------

const dashboard = new Dashboard(api, document.getElementById("dashboard-root") ?? document.body);

// -- wiring the chrome --------------------------------------------------------------

export function boot(): void {
  el("#login-go").addEventListener("click", () => void handleLogin());
  el("#nav-home").addEventListener("click", () => void openHome());
  el("#nav-dashboard").addEventListener("click", () => {
    const id = window.prompt("assignment id", "a0001");
    if (id) {
      void dashboard.load(id).then(() => show("view-dashboard"));
    }
  });
  el("#run-sim").addEventListener("click", () => void runSimulation());
  el("#vhdl-check").addEventListener("click", () => {
    void vhdl
      .check({ format_version: 1, horizon_ns: 1000, assignments: {} })
      .then((diags) => setStatus(diags.length ? `${diags.length} problem(s)` : "clean"));
  });

  const palette = el("#palette");
  for (const part of PALETTE_ORDER) {
    const button = document.createElement("button");
    button.textContent = part;
    button.addEventListener("click", () => editor.startPlacing(part));
    palette.appendChild(button);
  }
  for (const tool of ["select", "wire", "probe", "port-in", "port-out"] as Tool[]) {
    el(`#tool-${tool}`).addEventListener("click", () => editor.setTool(tool));
  }
  const canvas = el<HTMLCanvasElement>("#schematic");
  editor.attach(canvas);
  canvas.addEventListener("mouseup", () => redraw());
  canvas.addEventListener("mousemove", () => redraw());
  const strip = el<HTMLCanvasElement>("#waveforms");
  strip.addEventListener("mousedown", (ev) => {
    if (!session) return;
    const rect = strip.getBoundingClientRect();
    session.view.setCursor(session.view.timeAtX(ev.clientX - rect.left, strip.width));
    redraw();
  });
  el("#probe-refresh").addEventListener("click", () => {
    if (session) {
      refreshProbes(session, editor.doc);
      redraw();
    }
  });
  show("view-login");
}

if (typeof document !== "undefined" && document.readyState !== "loading") {
  boot();
} else if (typeof document !== "undefined") {
  document.addEventListener("DOMContentLoaded", boot);
}
