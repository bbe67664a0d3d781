// Provisional client-side copy of the server's aggregation rule, used only
// for instant feedback while editing; the PATCH response always wins.

import type { Level } from "./types.js";

const WEIGHT_TENTHS: Record<Level, number> = { I: 1, IE: 3, EI: 7, E: 9 };
const SCALE_TENTHS = [1, 3, 5, 7, 9];

export const VALUE_LABELS: Record<string, string> = {
  "0.1": "marginal",
  "0.3": "low",
  "0.5": "equivalent",
  "0.7": "predominant",
  "0.9": "central",
};

// Mean of the level weights snapped to the nearest scale point; exact
// midpoints round toward the more external value. Integer arithmetic in
// tenths keeps ties exact.
export function suggestValue(levels: Level[]): number {
  if (levels.length === 0) {
    throw new Error("cannot aggregate an empty level list");
  }
  const sum = levels.reduce((acc, level) => acc + WEIGHT_TENTHS[level], 0);
  let best = SCALE_TENTHS[0];
  for (const candidate of SCALE_TENTHS.slice(1)) {
    if (Math.abs(sum - candidate * levels.length) <= Math.abs(sum - best * levels.length)) {
      best = candidate;
    }
  }
  return best / 10;
}

export function valueLabel(value: number): string {
  return VALUE_LABELS[value.toFixed(1)] ?? "";
}

// One scale step is 0.2; deviations beyond one step get a warning highlight.
export function stepGap(a: number, b: number): number {
  return Math.round(Math.abs(a - b) / 0.2);
}
