import { describe, expect, it } from "vitest";

import { MASK_COLOR, g2Color, intensityColor } from "../src/color.js";

describe("g2Color", () => {
  it("is neutral white at g2 = 1", () => {
    expect(g2Color(1)).toBe("#f7f7f7");
  });

  it("saturates at the cap", () => {
    expect(g2Color(2, 2)).toBe(g2Color(50, 2));
    expect(g2Color(2, 2)).toBe(g2Color(1e6, 2));
    expect(g2Color(0.5, 2)).toBe(g2Color(1e-9, 2));
  });

  it("responds to the cap below saturation", () => {
    expect(g2Color(1.5, 2)).not.toBe(g2Color(1.5, 4));
    expect(g2Color(2, 4)).not.toBe(g2Color(4, 4));
  });

  it("masks undefined and unplottable values", () => {
    expect(g2Color(null)).toBe(MASK_COLOR);
    expect(g2Color(0)).toBe(MASK_COLOR);
    expect(g2Color(-0.3)).toBe(MASK_COLOR);
    expect(g2Color(Number.NaN)).toBe(MASK_COLOR);
    expect(g2Color(Number.POSITIVE_INFINITY)).toBe(MASK_COLOR);
  });

  it("never emits the mask color for plottable values", () => {
    for (let i = 0; i <= 400; i++) {
      const g2 = Math.pow(10, -3 + (6 * i) / 400);
      expect(g2Color(g2, 2)).not.toBe(MASK_COLOR);
    }
  });
});

describe("intensityColor", () => {
  it("spans pale to deep over the given log range", () => {
    expect(intensityColor(1e-6, -6, -2)).toBe("#f7fbff");
    expect(intensityColor(1e-2, -6, -2)).toBe("#08306b");
  });

  it("clamps outside the range", () => {
    expect(intensityColor(1e-9, -6, -2)).toBe(intensityColor(1e-6, -6, -2));
    expect(intensityColor(1, -6, -2)).toBe(intensityColor(1e-2, -6, -2));
  });

  it("masks undefined and non-positive values", () => {
    expect(intensityColor(null, -6, -2)).toBe(MASK_COLOR);
    expect(intensityColor(0, -6, -2)).toBe(MASK_COLOR);
  });

  it("never emits the mask color for plottable values", () => {
    for (let i = 0; i <= 400; i++) {
      const v = Math.pow(10, -6 + (4 * i) / 400);
      expect(intensityColor(v, -6, -2)).not.toBe(MASK_COLOR);
    }
  });
});
