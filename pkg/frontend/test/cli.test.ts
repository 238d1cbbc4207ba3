import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterEach, describe, expect, it, vi } from "vitest";

import { main } from "../src/cli.js";

const HEADER = "g,omega_d,i_out,g2,converged,n_fock,n_levels,refinements,wall_ms";
const CSV = `${HEADER}\n0.3,1.29,0.0011,0.44,true,22,8,0,215\n0.5,1.46,0.00091,0.45,true,22,8,0,218\n`;

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "clitest-"));
}

describe("cli", () => {
  afterEach(() => vi.restoreAllMocks());

  it("renders a figure end to end", () => {
    const dir = tmp();
    const input = join(dir, "cut.csv");
    const output = join(dir, "cut.svg");
    writeFileSync(input, CSV);
    vi.spyOn(console, "log").mockImplementation(() => {});
    const code = main([
      "render", "--figure", "g_cut", "--in", input, "--out", output,
    ]);
    expect(code).toBe(0);
    expect(readFileSync(output, "utf-8").startsWith("<svg")).toBe(true);
  });

  it("accepts --cap", () => {
    const dir = tmp();
    const input = join(dir, "cut.csv");
    writeFileSync(input, CSV);
    vi.spyOn(console, "log").mockImplementation(() => {});
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    expect(main(["render", "--figure", "g_cut", "--in", input, "--out", a, "--cap", "1.5"])).toBe(0);
    expect(main(["render", "--figure", "g_cut", "--in", input, "--out", b, "--cap", "8"])).toBe(0);
    expect(readFileSync(a, "utf-8")).not.toBe(readFileSync(b, "utf-8"));
  });

  it("fails with a named column on schema mismatch", () => {
    const dir = tmp();
    const input = join(dir, "bad.csv");
    const output = join(dir, "bad.svg");
    writeFileSync(input, CSV.replace(",g2,", ",gg2,"));
    const err = vi.spyOn(console, "error").mockImplementation(() => {});
    const code = main([
      "render", "--figure", "g_cut", "--in", input, "--out", output,
    ]);
    expect(code).toBe(1);
    expect(existsSync(output)).toBe(false);
    expect(String(err.mock.calls[0][0])).toContain('"g2"');
  });

  it("rejects unknown figures, commands, and missing flags", () => {
    vi.spyOn(console, "error").mockImplementation(() => {});
    expect(main(["render", "--figure", "pie", "--in", "x", "--out", "y"])).toBe(1);
    expect(main(["plot"])).toBe(1);
    expect(main(["render", "--figure", "g_cut"])).toBe(1);
  });
});
