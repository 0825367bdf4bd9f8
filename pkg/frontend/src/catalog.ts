// Render-side catalog: pin names, directions and box geometry per part.
// The server's part fixtures stay authoritative for behavior; this table
// only has to agree on pin names, which the netlist format requires anyway.

export interface PinGeom {
  name: string;
  dir: "in" | "out";
  x: number; // relative to instance origin
  y: number;
}

export interface PartGeom {
  part: string;
  width: number;
  height: number;
  pins: PinGeom[];
}

const PIN_SPACING = 16;

function box(part: string, inputs: string[], outputs: string[]): PartGeom {
  const rows = Math.max(inputs.length, outputs.length);
  const height = Math.max(2, rows + 1) * PIN_SPACING;
  const width = 72;
  const pins: PinGeom[] = [];
  inputs.forEach((name, i) =>
    pins.push({ name, dir: "in", x: 0, y: (i + 1) * PIN_SPACING }),
  );
  outputs.forEach((name, i) =>
    pins.push({ name, dir: "out", x: width, y: (i + 1) * PIN_SPACING }),
  );
  return { part, width, height, pins };
}

function quad(part: string): PartGeom {
  const ins: string[] = [];
  const outs: string[] = [];
  for (let unit = 1; unit <= 4; unit++) {
    ins.push(`${unit}A`, `${unit}B`);
    outs.push(`${unit}Y`);
  }
  return box(part, ins, outs);
}

const SEGMENTS = ["a", "b", "c", "d", "e", "f", "g"];

export const CATALOG: Record<string, PartGeom> = {};
for (const geom of [
  quad("74LS00"),
  quad("74LS02"),
  quad("74LS08"),
  quad("74LS32"),
  quad("74LS86"),
  box(
    "74LS04",
    [1, 2, 3, 4, 5, 6].map((n) => `${n}A`),
    [1, 2, 3, 4, 5, 6].map((n) => `${n}Y`),
  ),
  box(
    "74LS74",
    ["1CLR", "1D", "1CLK", "1PRE", "2CLR", "2D", "2CLK", "2PRE"],
    ["1Q", "1QN", "2Q", "2QN"],
  ),
  box(
    "74LS138",
    ["A", "B", "C", "G1", "G2A", "G2B"],
    [0, 1, 2, 3, 4, 5, 6, 7].map((n) => `Y${n}`),
  ),
  box(
    "74LS151",
    ["D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7", "A", "B", "C", "G"],
    ["Y", "W"],
  ),
  box(
    "74LS153",
    ["1G", "2G", "A", "B", "1C0", "1C1", "1C2", "1C3", "2C0", "2C1", "2C2", "2C3"],
    ["1Y", "2Y"],
  ),
  box(
    "74LS163",
    ["CLR", "CLK", "A", "B", "C", "D", "ENP", "ENT", "LOAD"],
    ["QA", "QB", "QC", "QD", "RCO"],
  ),
  box(
    "74LS283",
    ["C0", "A1", "B1", "A2", "B2", "A3", "B3", "A4", "B4"],
    ["S1", "S2", "S3", "S4", "C4"],
  ),
  box("7448", ["A", "B", "C", "D"], SEGMENTS.map((s) => `O${s.toUpperCase()}`)),
  box("SEVEN_SEG", SEGMENTS, []),
  box("LED", ["IN"], []),
  box("CLOCK", [], ["Y"]),
  box("SWITCH", [], ["Y"]),
  box("VCC", [], ["Y"]),
  box("GND", [], ["Y"]),
]) {
  CATALOG[geom.part] = geom;
}

export const PALETTE_ORDER = Object.keys(CATALOG);

export function pinGeom(part: string, pin: string): PinGeom | undefined {
  return CATALOG[part]?.pins.find((p) => p.name === pin);
}
