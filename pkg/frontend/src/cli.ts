#!/usr/bin/env node
/**
 * Usage:
 *   rabisim-figures render --figure <id> --in <csv> --out <svg> [--cap 2.0]
 *
 * Figure ids: phase_diagram | g_cut | spectrum_panel | freq_scan.
 * The input CSV is one produced by the solver CLI (`rabisim grid`,
 * `rabisim cut`, `rabisim freqscan`, `rabisim spectrum`).
 */

import { parseArgs } from "node:util";
import { pathToFileURL } from "node:url";

import { FIGURE_IDS, FigureId, render } from "./figures.js";

export function main(argv: string[]): number {
  try {
    if (argv[0] !== "render") {
      throw new Error(`unknown command "${argv[0] ?? ""}"; expected "render"`);
    }
    const { values } = parseArgs({
      args: argv.slice(1),
      options: {
        figure: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        cap: { type: "string", default: "2" },
      },
    });
    const { figure, in: input, out: output } = values;
    if (!figure || !input || !output) {
      throw new Error("render requires --figure, --in and --out");
    }
    if (!(FIGURE_IDS as string[]).includes(figure)) {
      throw new Error(
        `unknown figure "${figure}"; expected one of ${FIGURE_IDS.join(", ")}`
      );
    }
    const cap = Number(values.cap);
    render({ figure: figure as FigureId, input, output, cap });
    console.log(`SVG -> ${output}`);
    return 0;
  } catch (e) {
    console.error(`error: ${e instanceof Error ? e.message : e}`);
    return 1;
  }
}

if (
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href
) {
  process.exit(main(process.argv.slice(2)));
}
