/**
 * Strict reader for the CSV schemas published by the solver. The solver
 * writes plain comma-separated values with no quoting (no field ever
 * contains a comma), empty cells for undefined values, "true"/"false"
 * booleans, and repr-style floats.
 */

export class CsvSchemaError extends Error {}

export type CellKind = "float" | "int" | "bool" | "sign";

export interface ColumnSpec {
  name: string;
  kind: CellKind;
}

export type Cell = number | boolean | null;

export interface Table {
  columns: string[];
  rows: Record<string, Cell>[];
}

/** Dynamic sweep schema (grid, cuts, frequency scans). */
export const DYNAMIC_COLUMNS: ColumnSpec[] = [
  { name: "g", kind: "float" },
  { name: "omega_d", kind: "float" },
  { name: "i_out", kind: "float" },
  { name: "g2", kind: "float" },
  { name: "converged", kind: "bool" },
  { name: "n_fock", kind: "int" },
  { name: "n_levels", kind: "int" },
  { name: "refinements", kind: "int" },
  { name: "wall_ms", kind: "int" },
];

/** Eigenlevel dump schema. */
export const SPECTRUM_COLUMNS: ColumnSpec[] = [
  { name: "g", kind: "float" },
  { name: "rank", kind: "int" },
  { name: "energy", kind: "float" },
  { name: "parity", kind: "sign" },
  { name: "j", kind: "int" },
];

function parseCell(raw: string, col: ColumnSpec, rowNo: number): Cell {
  if (raw === "") return null; // undefined observable or failed point
  if (col.kind === "bool") {
    if (raw === "true") return true;
    if (raw === "false") return false;
    throw new CsvSchemaError(
      `column "${col.name}", row ${rowNo}: not a boolean: "${raw}"`
    );
  }
  if (col.kind === "sign") {
    // parity sectors are written as "+" / "-"
    if (raw === "+") return 1;
    if (raw === "-") return -1;
    throw new CsvSchemaError(
      `column "${col.name}", row ${rowNo}: not a parity sign: "${raw}"`
    );
  }
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new CsvSchemaError(
      `column "${col.name}", row ${rowNo}: not a number: "${raw}"`
    );
  }
  if (col.kind === "int" && !Number.isInteger(v)) {
    throw new CsvSchemaError(
      `column "${col.name}", row ${rowNo}: not an integer: "${raw}"`
    );
  }
  return v;
}

/**
 * Parse CSV text against a schema. The header must contain exactly the
 * schema's columns (order free); any rename or extra column is a schema
 * mismatch reported by name.
 */
export function parseTable(text: string, schema: ColumnSpec[]): Table {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new CsvSchemaError("empty input: no header line");
  }
  const header = lines[0].split(",");
  for (const col of schema) {
    if (!header.includes(col.name)) {
      throw new CsvSchemaError(
        `missing column "${col.name}" (header: ${lines[0]})`
      );
    }
  }
  for (const name of header) {
    if (!schema.some((c) => c.name === name)) {
      throw new CsvSchemaError(`unexpected column "${name}"`);
    }
  }
  if (lines.length === 1) {
    throw new CsvSchemaError("no data rows");
  }

  const byName = new Map(schema.map((c) => [c.name, c]));
  const rows: Record<string, Cell>[] = [];
  for (let i = 1; i < lines.length; i++) {
    const parts = lines[i].split(",");
    if (parts.length !== header.length) {
      throw new CsvSchemaError(
        `row ${i}: expected ${header.length} fields, got ${parts.length}`
      );
    }
    const row: Record<string, Cell> = {};
    for (let c = 0; c < header.length; c++) {
      row[header[c]] = parseCell(parts[c], byName.get(header[c])!, i);
    }
    rows.push(row);
  }
  return { columns: header, rows };
}

export function floatOrNull(cell: Cell): number | null {
  return typeof cell === "number" ? cell : null;
}
