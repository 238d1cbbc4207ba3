import { describe, expect, it } from "vitest";

import {
  CsvSchemaError,
  DYNAMIC_COLUMNS,
  SPECTRUM_COLUMNS,
  parseTable,
} from "../src/csv.js";

const HEADER = "g,omega_d,i_out,g2,converged,n_fock,n_levels,refinements,wall_ms";

describe("parseTable", () => {
  it("reads a dynamic sweep row with typed cells", () => {
    const text = `${HEADER}\n0.5,1.4586,0.00091,0.4456,true,22,8,0,218\n`;
    const t = parseTable(text, DYNAMIC_COLUMNS);
    expect(t.rows).toHaveLength(1);
    expect(t.rows[0].g).toBe(0.5);
    expect(t.rows[0].converged).toBe(true);
    expect(t.rows[0].n_fock).toBe(22);
  });

  it("maps empty cells to null", () => {
    const text = `${HEADER}\n0.5,1.4586,0.00091,,true,22,8,0,218\n0.9,1.1,,,,,,,\n`;
    const t = parseTable(text, DYNAMIC_COLUMNS);
    expect(t.rows[0].g2).toBeNull();
    expect(t.rows[0].i_out).toBe(0.00091);
    expect(t.rows[1].i_out).toBeNull();
    expect(t.rows[1].converged).toBeNull();
  });

  it("round-trips repr-style floats exactly", () => {
    const v = 0.058698175558505886;
    const text = `g,rank,energy,parity,j\n${v},0,${v},+,0\n`;
    const t = parseTable(text, SPECTRUM_COLUMNS);
    expect(t.rows[0].energy).toBe(v);
    expect(t.rows[0].parity).toBe(1);
  });

  it("rejects malformed parity signs by column name", () => {
    const text = `g,rank,energy,parity,j\n0.1,0,0.5,plus,0\n`;
    expect(() => parseTable(text, SPECTRUM_COLUMNS)).toThrowError(
      /column "parity", row 1: not a parity sign/
    );
  });

  it("names a missing column on header mismatch", () => {
    const bad = HEADER.replace("g2", "gg2");
    expect(() => parseTable(`${bad}\n0,1,2,3,true,4,5,6,7\n`, DYNAMIC_COLUMNS))
      .toThrowError(/missing column "g2"/);
  });

  it("names an unexpected column", () => {
    expect(() =>
      parseTable(`${HEADER},extra\n0,1,2,3,true,4,5,6,7,8\n`, DYNAMIC_COLUMNS)
    ).toThrowError(/unexpected column "extra"/);
  });

  it("rejects empty input and header-only input", () => {
    expect(() => parseTable("", DYNAMIC_COLUMNS)).toThrowError(CsvSchemaError);
    expect(() => parseTable(`${HEADER}\n`, DYNAMIC_COLUMNS)).toThrowError(
      /no data rows/
    );
  });

  it("names column and row for malformed cells", () => {
    const text = `${HEADER}\n0.5,1.4,x,0.4,true,22,8,0,218\n`;
    expect(() => parseTable(text, DYNAMIC_COLUMNS)).toThrowError(
      /column "i_out", row 1: not a number: "x"/
    );
    const boolBad = `${HEADER}\n0.5,1.4,0.1,0.4,yes,22,8,0,218\n`;
    expect(() => parseTable(boolBad, DYNAMIC_COLUMNS)).toThrowError(
      /column "converged", row 1: not a boolean/
    );
    const intBad = `${HEADER}\n0.5,1.4,0.1,0.4,true,22.5,8,0,218\n`;
    expect(() => parseTable(intBad, DYNAMIC_COLUMNS)).toThrowError(
      /column "n_fock", row 1: not an integer/
    );
  });

  it("rejects ragged rows", () => {
    expect(() =>
      parseTable(`${HEADER}\n0.5,1.4,0.1\n`, DYNAMIC_COLUMNS)
    ).toThrowError(/row 1: expected 9 fields, got 3/);
  });
});
