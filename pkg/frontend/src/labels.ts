/** The three-class label space; nothing else is ever renderable. */

export const LABELS = ["fair", "potentially_unfair", "clearly_unfair"] as const;

export type Label = (typeof LABELS)[number];

const DISPLAY: Record<Label, string> = {
  fair: "Fair",
  potentially_unfair: "Potentially Unfair",
  clearly_unfair: "Clearly Unfair",
};

const SEVERITY: Record<Label, number> = {
  fair: 0,
  potentially_unfair: 1,
  clearly_unfair: 2,
};

export function isLabel(value: unknown): value is Label {
  return typeof value === "string" && (LABELS as readonly string[]).includes(value);
}

/** Throws on anything outside the three-class space. */
export function asLabel(value: unknown): Label {
  if (!isLabel(value)) {
    throw new Error(`not a renderable label: ${JSON.stringify(value)}`);
  }
  return value;
}

export function labelDisplay(value: unknown): string {
  return DISPLAY[asLabel(value)];
}

export function severity(value: unknown): number {
  return SEVERITY[asLabel(value)];
}
