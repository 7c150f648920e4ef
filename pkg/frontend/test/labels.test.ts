import { describe, expect, it } from "vitest";

import { LABELS, asLabel, isLabel, labelDisplay, severity } from "../src/labels.js";

describe("label space", () => {
  it("has exactly three values in severity order", () => {
    expect(LABELS).toEqual(["fair", "potentially_unfair", "clearly_unfair"]);
    expect(LABELS.map(severity)).toEqual([0, 1, 2]);
  });

  it("renders display names for all three", () => {
    expect(labelDisplay("fair")).toBe("Fair");
    expect(labelDisplay("potentially_unfair")).toBe("Potentially Unfair");
    expect(labelDisplay("clearly_unfair")).toBe("Clearly Unfair");
  });

  it("rejects anything outside the three-class space", () => {
    for (const bad of ["unfair", "FAIR ", "", null, undefined, 3, "neutral"]) {
      expect(isLabel(bad)).toBe(false);
      expect(() => asLabel(bad)).toThrow(/not a renderable label/);
      expect(() => labelDisplay(bad)).toThrow();
    }
  });
});
