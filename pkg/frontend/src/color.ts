/**
 * Color scales. g2 uses a diverging ramp on a log axis centered at
 * g2 = 1 and saturating at the cap; intensity uses a sequential ramp on
 * log10(i_out). Undefined cells get MASK_COLOR, which neither ramp can
 * produce, so "dark cavity" never masquerades as "g2 at the cap".
 */

export const MASK_COLOR = "#9e9e9e";

type Rgb = [number, number, number];

const BLUE: Rgb = [33, 102, 172];
const WHITE: Rgb = [247, 247, 247];
const RED: Rgb = [178, 24, 43];

const DEEP: Rgb = [8, 48, 107];
const PALE: Rgb = [247, 251, 255];

function hex(c: Rgb): string {
  return (
    "#" + c.map((v) => Math.round(v).toString(16).padStart(2, "0")).join("")
  );
}

function lerp(a: Rgb, b: Rgb, t: number): Rgb {
  return [0, 1, 2].map((i) => a[i] + (b[i] - a[i]) * t) as Rgb;
}

/** Diverging ramp over t in [-1, 1]; t = 0 is the neutral midpoint. */
function diverging(t: number): string {
  return t < 0 ? hex(lerp(WHITE, BLUE, -t)) : hex(lerp(WHITE, RED, t));
}

/**
 * Color for a g2 value. Log scale, white at g2 = 1, fully red at
 * g2 >= cap, fully blue at g2 <= 1/cap. Null, non-finite, and
 * non-positive values are masked.
 */
export function g2Color(g2: number | null, cap = 2): string {
  if (g2 === null || !Number.isFinite(g2) || g2 <= 0) return MASK_COLOR;
  const span = Math.log10(cap);
  const t = Math.max(-span, Math.min(span, Math.log10(g2))) / span;
  return diverging(t);
}

/**
 * Color for an intensity value given the log10 range of the defined
 * data; high intensity is dark. Null and non-positive values are masked.
 */
export function intensityColor(
  v: number | null,
  lo: number,
  hi: number
): string {
  if (v === null || !Number.isFinite(v) || v <= 0) return MASK_COLOR;
  const t =
    hi > lo ? Math.max(0, Math.min(1, (Math.log10(v) - lo) / (hi - lo))) : 0.5;
  return hex(lerp(PALE, DEEP, t));
}
