// Plain-text VHDL editing with server-side diagnostics listed under the
// editor at their reported line and column. Clicking a diagnostic moves
// the caret to the spot.

import type { ApiClient } from "./api.js";
import type { StimulusJson } from "./types.js";

const DIAG_RE = /^([^:]+):(\d+):(\d+):\s*(.*)$/;

export interface ParsedDiagnostic {
  file: string;
  line: number;
  column: number;
  message: string;
  raw: string;
}

export function parseDiagnostic(text: string): ParsedDiagnostic {
  const match = DIAG_RE.exec(text);
  if (!match) return { file: "", line: 1, column: 1, message: text, raw: text };
  return {
    file: match[1],
    line: Number(match[2]),
    column: Number(match[3]),
    message: match[4],
    raw: text,
  };
}

export function caretOffset(source: string, line: number, column: number): number {
  const lines = source.split("\n");
  let offset = 0;
  for (let i = 0; i < Math.min(line - 1, lines.length); i++) {
    offset += lines[i].length + 1;
  }
  return offset + Math.max(0, column - 1);
}

export class VhdlEditor {
  textarea: HTMLTextAreaElement;
  diagnosticsList: HTMLOListElement;
  diagnostics: ParsedDiagnostic[] = [];

  constructor(
    private api: ApiClient,
    root: HTMLElement,
  ) {
    const docRef = root.ownerDocument;
    this.textarea = docRef.createElement("textarea");
    this.textarea.className = "vhdl-source";
    this.textarea.spellcheck = false;
    this.diagnosticsList = docRef.createElement("ol");
    this.diagnosticsList.className = "vhdl-diagnostics";
    root.appendChild(this.textarea);
    root.appendChild(this.diagnosticsList);
  }

  /** Compile-check by running a zero-interest simulation; the server is
   * the only authority on what the subset accepts. */
  async check(stimulus: StimulusJson): Promise<ParsedDiagnostic[]> {
    const resp = await this.api.simulate({
      repr: "VHDL",
      payload: this.textarea.value,
      stimulus,
    });
    this.diagnostics = (resp.diagnostics ?? []).map(parseDiagnostic);
    this.renderDiagnostics();
    return this.diagnostics;
  }

  renderDiagnostics(): void {
    const docRef = this.diagnosticsList.ownerDocument;
    this.diagnosticsList.innerHTML = "";
    for (const diag of this.diagnostics) {
      const item = docRef.createElement("li");
      item.textContent = `${diag.line}:${diag.column} ${diag.message}`;
      item.dataset.line = String(diag.line);
      item.dataset.column = String(diag.column);
      item.addEventListener("click", () => this.jumpTo(diag));
      this.diagnosticsList.appendChild(item);
    }
  }

  jumpTo(diag: ParsedDiagnostic): void {
    const offset = caretOffset(this.textarea.value, diag.line, diag.column);
    this.textarea.focus();
    this.textarea.setSelectionRange(offset, offset);
  }
}
