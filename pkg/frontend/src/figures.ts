/**
 * Figure builders. Each takes parsed CSV rows and returns a complete SVG
 * string; rendering is pure string assembly, so identical input gives
 * identical bytes and nothing is written until the build succeeds.
 */

import { readFileSync, writeFileSync } from "node:fs";

import {
  Cell,
  ColumnSpec,
  DYNAMIC_COLUMNS,
  SPECTRUM_COLUMNS,
  Table,
  floatOrNull,
  parseTable,
} from "./csv.js";
import { MASK_COLOR, g2Color, intensityColor } from "./color.js";

export type FigureId =
  | "phase_diagram"
  | "g_cut"
  | "spectrum_panel"
  | "freq_scan";

export const FIGURE_IDS: FigureId[] = [
  "phase_diagram",
  "g_cut",
  "spectrum_panel",
  "freq_scan",
];

export interface FigureSpec {
  figure: FigureId;
  input: string;
  output: string;
  /** g2 color-scale saturation; pixels only, data is never clipped. */
  cap: number;
}

export function render(spec: FigureSpec): void {
  const text = readFileSync(spec.input, "utf-8");
  const svg = renderText(spec.figure, text, spec.cap);
  writeFileSync(spec.output, svg);
}

export function renderText(figure: FigureId, text: string, cap = 2): string {
  if (!(Number.isFinite(cap) && cap > 1)) {
    throw new Error(`cap must be a finite number > 1, got ${cap}`);
  }
  const schema: ColumnSpec[] =
    figure === "spectrum_panel" ? SPECTRUM_COLUMNS : DYNAMIC_COLUMNS;
  const table = parseTable(text, schema);
  switch (figure) {
    case "phase_diagram":
      return buildPhaseDiagram(table, cap);
    case "g_cut":
      return buildCut(table, cap, "g", "coupling g");
    case "freq_scan":
      return buildCut(table, cap, "omega_d", "drive frequency");
    case "spectrum_panel":
      return buildSpectrumPanel(table);
  }
}

// ---------------------------------------------------------------------------
// Helpers
// ---------------------------------------------------------------------------

function esc(s: string): string {
  return s
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function fmt(v: number): string {
  return String(Number(v.toPrecision(4)));
}

function niceTicks(lo: number, hi: number, n: number): number[] {
  if (!(hi > lo)) return [lo];
  const span = hi - lo;
  const step0 = span / Math.max(1, n);
  const mag = Math.pow(10, Math.floor(Math.log10(step0)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= n)!;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * span; v += step) {
    ticks.push(v);
  }
  return ticks;
}

function num(cell: Cell): number | null {
  return floatOrNull(cell);
}

/** Positive values only, as log10; everything else is unplottable. */
function log10OrNull(cell: Cell): number | null {
  const v = num(cell);
  return v !== null && v > 0 ? Math.log10(v) : null;
}

interface Axis {
  of: (v: number) => number;
  lo: number;
  hi: number;
}

function linAxis(lo: number, hi: number, p0: number, p1: number): Axis {
  const span = hi - lo || 1;
  return { of: (v) => p0 + ((v - lo) / span) * (p1 - p0), lo, hi };
}

// ---------------------------------------------------------------------------
// Phase diagram: two heat panels (intensity, g2) over the (g, omega_d) grid
// ---------------------------------------------------------------------------

function buildPhaseDiagram(table: Table, cap: number): string {
  const xs = [...new Set(table.rows.map((r) => num(r.g)))].filter(
    (v): v is number => v !== null
  );
  const ys = [...new Set(table.rows.map((r) => num(r.omega_d)))].filter(
    (v): v is number => v !== null
  );
  xs.sort((a, b) => a - b);
  ys.sort((a, b) => a - b);
  const byCell = new Map(
    table.rows.map((r) => [`${num(r.g)}|${num(r.omega_d)}`, r])
  );

  const iLogs = table.rows
    .map((r) => log10OrNull(r.i_out))
    .filter((v): v is number => v !== null);
  const iLo = iLogs.length ? Math.min(...iLogs) : 0;
  const iHi = iLogs.length ? Math.max(...iLogs) : 1;

  const W = 740;
  const H = 340;
  const pw = 290;
  const ph = 240;
  const mt = 40;
  const panels = [
    { x0: 52, title: "output intensity (log color)" },
    { x0: 52 + pw + 56, title: `g2(0) (log color, cap ${fmt(cap)})` },
  ];

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;

  const cw = pw / xs.length;
  const chh = ph / ys.length;
  for (let p = 0; p < 2; p++) {
    const { x0, title } = panels[p];
    s += `<text x="${x0}" y="${mt - 10}" font-size="11" font-weight="600" fill="#222">${esc(title)}</text>\n`;
    for (let yi = 0; yi < ys.length; yi++) {
      for (let xi = 0; xi < xs.length; xi++) {
        const row = byCell.get(`${xs[xi]}|${ys[yi]}`);
        let fill = MASK_COLOR;
        if (row !== undefined) {
          fill =
            p === 0
              ? intensityColor(num(row.i_out), iLo, iHi)
              : g2Color(num(row.g2), cap);
        }
        const cx = x0 + xi * cw;
        const cy = mt + ph - (yi + 1) * chh; // omega_d increases upward
        s += `<rect x="${cx.toFixed(2)}" y="${cy.toFixed(2)}" width="${(cw + 0.05).toFixed(2)}" height="${(chh + 0.05).toFixed(2)}" fill="${fill}"/>\n`;
      }
    }
    s += `<rect x="${x0}" y="${mt}" width="${pw}" height="${ph}" fill="none" stroke="#333" stroke-width="0.8"/>\n`;
    // corner tick labels; the grid is categorical by index
    s += `<text x="${x0}" y="${mt + ph + 12}" font-size="9" fill="#444">g = ${fmt(xs[0])}</text>\n`;
    s += `<text x="${x0 + pw}" y="${mt + ph + 12}" font-size="9" fill="#444" text-anchor="end">${fmt(xs[xs.length - 1])}</text>\n`;
    s += `<text x="${x0 - 4}" y="${mt + ph}" font-size="9" fill="#444" text-anchor="end">${fmt(ys[0])}</text>\n`;
    s += `<text x="${x0 - 4}" y="${mt + 9}" font-size="9" fill="#444" text-anchor="end">${fmt(ys[ys.length - 1])}</text>\n`;
    if (p === 0) {
      s += `<text x="${x0 - 36}" y="${mt + ph / 2}" font-size="10" fill="#222" transform="rotate(-90 ${x0 - 36} ${mt + ph / 2})" text-anchor="middle">drive frequency</text>\n`;
    }

    // legend strip
    const ly = mt + ph + 26;
    const lw = 160;
    const n = 32;
    for (let i = 0; i < n; i++) {
      const t = (i + 0.5) / n;
      const fill =
        p === 0
          ? intensityColor(Math.pow(10, iLo + t * (iHi - iLo)), iLo, iHi)
          : g2Color(Math.pow(cap, 2 * t - 1), cap);
      s += `<rect x="${(x0 + (i * lw) / n).toFixed(2)}" y="${ly}" width="${(lw / n + 0.05).toFixed(2)}" height="8" fill="${fill}"/>\n`;
    }
    const [l0, l1] =
      p === 0
        ? [`1e${fmt(iLo)}`, `1e${fmt(iHi)}`]
        : [fmt(1 / cap), fmt(cap)];
    s += `<text x="${x0}" y="${ly + 18}" font-size="8" fill="#444">${esc(l0)}</text>\n`;
    s += `<text x="${x0 + lw}" y="${ly + 18}" font-size="8" fill="#444" text-anchor="end">${esc(l1)}</text>\n`;
    s += `<rect x="${x0 + lw + 14}" y="${ly}" width="8" height="8" fill="${MASK_COLOR}"/>\n`;
    s += `<text x="${x0 + lw + 26}" y="${ly + 7}" font-size="8" fill="#444">undefined</text>\n`;
  }
  s += `<text x="${W / 2}" y="${H - 6}" font-size="10" fill="#222" text-anchor="middle">coupling g</text>\n`;
  s += `</svg>\n`;
  return s;
}

// ---------------------------------------------------------------------------
// Cuts: intensity and g2 vs one swept variable
// ---------------------------------------------------------------------------

function buildCut(
  table: Table,
  cap: number,
  xKey: "g" | "omega_d",
  xLabel: string
): string {
  const rows = [...table.rows].sort(
    (a, b) => (num(a[xKey]) ?? 0) - (num(b[xKey]) ?? 0)
  );
  const xVals = rows
    .map((r) => num(r[xKey]))
    .filter((v): v is number => v !== null);
  const xAx = linAxis(Math.min(...xVals), Math.max(...xVals), 64, 520);

  const W = 560;
  const H = 420;
  const panels = [
    { top: 36, title: "output intensity", key: "i_out" as const },
    { top: 232, title: "g2(0)", key: "g2" as const },
  ];

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;

  for (const { top, title, key } of panels) {
    const ph = 150;
    const logs = rows
      .map((r) => log10OrNull(r[key]))
      .filter((v): v is number => v !== null);
    let lo = logs.length ? Math.min(...logs) : -1;
    let hi = logs.length ? Math.max(...logs) : 1;
    if (key === "g2") {
      lo = Math.min(lo, -0.1); // keep the unity line in view
      hi = Math.max(hi, 0.1);
    }
    const pad = 0.06 * (hi - lo || 1);
    const yAx = linAxis(lo - pad, hi + pad, top + ph, top);

    s += `<text x="64" y="${top - 8}" font-size="11" font-weight="600" fill="#222">${esc(title)}</text>\n`;
    s += `<rect x="64" y="${top}" width="456" height="${ph}" fill="none" stroke="#333" stroke-width="0.8"/>\n`;
    for (const d of niceTicks(yAx.lo, yAx.hi, 4)) {
      const y = yAx.of(d);
      s += `<line x1="64" y1="${y.toFixed(1)}" x2="520" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.6"/>\n`;
      s += `<text x="60" y="${(y + 3).toFixed(1)}" font-size="8" fill="#444" text-anchor="end">1e${fmt(d)}</text>\n`;
    }
    for (const t of niceTicks(xAx.lo, xAx.hi, 6)) {
      const x = xAx.of(t);
      s += `<text x="${x.toFixed(1)}" y="${top + ph + 12}" font-size="8" fill="#444" text-anchor="middle">${fmt(t)}</text>\n`;
    }

    if (key === "g2") {
      const y1 = yAx.of(0);
      s += `<line x1="64" y1="${y1.toFixed(1)}" x2="520" y2="${y1.toFixed(1)}" stroke="#888" stroke-width="1" stroke-dasharray="5,3"/>\n`;
    }

    // polyline broken at unplottable points
    let seg: string[] = [];
    const flush = () => {
      if (seg.length > 1) {
        s += `<polyline points="${seg.join(" ")}" fill="none" stroke="#555" stroke-width="1"/>\n`;
      }
      seg = [];
    };
    for (const r of rows) {
      const x = num(r[xKey]);
      const lv = log10OrNull(r[key]);
      if (x === null || lv === null) {
        flush();
        continue;
      }
      seg.push(`${xAx.of(x).toFixed(1)},${yAx.of(lv).toFixed(1)}`);
    }
    flush();

    for (const r of rows) {
      const x = num(r[xKey]);
      if (x === null) continue;
      const lv = log10OrNull(r[key]);
      if (lv === null) {
        // masked: value undefined at this point
        const px = xAx.of(x);
        s += `<line x1="${px.toFixed(1)}" y1="${top + ph - 8}" x2="${px.toFixed(1)}" y2="${top + ph}" stroke="${MASK_COLOR}" stroke-width="2"/>\n`;
        continue;
      }
      const fill = key === "g2" ? g2Color(num(r.g2), cap) : "#2166ac";
      const ring = r.converged === false ? "#b2182b" : "#333";
      s += `<circle cx="${xAx.of(x).toFixed(1)}" cy="${yAx.of(lv).toFixed(1)}" r="2.6" fill="${fill}" stroke="${ring}" stroke-width="0.7"/>\n`;
    }
  }

  s += `<text x="292" y="${H - 8}" font-size="10" fill="#222" text-anchor="middle">${esc(xLabel)}</text>\n`;
  s += `</svg>\n`;
  return s;
}

// ---------------------------------------------------------------------------
// Spectrum panel: dressed levels vs g, colored by parity
// ---------------------------------------------------------------------------

function buildSpectrumPanel(table: Table): string {
  const groups = new Map<string, { g: number; e: number }[]>();
  for (const r of table.rows) {
    const g = num(r.g);
    const e = num(r.energy);
    if (g === null || e === null) continue;
    const key = `${num(r.parity)}|${num(r.j)}`;
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push({ g, e });
  }
  const gAll = [...groups.values()].flat();
  const xAx = linAxis(
    Math.min(...gAll.map((p) => p.g)),
    Math.max(...gAll.map((p) => p.g)),
    64,
    520
  );
  const yAx = linAxis(
    Math.min(...gAll.map((p) => p.e)),
    Math.max(...gAll.map((p) => p.e)),
    316,
    40
  );

  const W = 560;
  const H = 360;
  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#fff"/>\n`;
  s += `<text x="64" y="24" font-size="11" font-weight="600" fill="#222">dressed levels vs coupling</text>\n`;
  s += `<rect x="64" y="40" width="456" height="276" fill="none" stroke="#333" stroke-width="0.8"/>\n`;

  for (const t of niceTicks(yAx.hi, yAx.lo, 6)) {
    const y = yAx.of(t);
    s += `<line x1="64" y1="${y.toFixed(1)}" x2="520" y2="${y.toFixed(1)}" stroke="#eee" stroke-width="0.6"/>\n`;
    s += `<text x="60" y="${(y + 3).toFixed(1)}" font-size="8" fill="#444" text-anchor="end">${fmt(t)}</text>\n`;
  }
  for (const t of niceTicks(xAx.lo, xAx.hi, 6)) {
    s += `<text x="${xAx.of(t).toFixed(1)}" y="328" font-size="8" fill="#444" text-anchor="middle">${fmt(t)}</text>\n`;
  }

  const keys = [...groups.keys()].sort();
  for (const key of keys) {
    const pts = groups.get(key)!.sort((a, b) => a.g - b.g);
    const color = key.startsWith("-") ? "#b2182b" : "#2166ac";
    const path = pts
      .map((p) => `${xAx.of(p.g).toFixed(1)},${yAx.of(p.e).toFixed(1)}`)
      .join(" ");
    s += `<polyline points="${path}" fill="none" stroke="${color}" stroke-width="1"/>\n`;
  }

  s += `<text x="430" y="56" font-size="9" fill="#2166ac">parity +1</text>\n`;
  s += `<text x="430" y="68" font-size="9" fill="#b2182b">parity -1</text>\n`;
  s += `<text x="292" y="${H - 8}" font-size="10" fill="#222" text-anchor="middle">coupling g</text>\n`;
  s += `<text x="28" y="178" font-size="10" fill="#222" transform="rotate(-90 28 178)" text-anchor="middle">energy</text>\n`;
  s += `</svg>\n`;
  return s;
}
