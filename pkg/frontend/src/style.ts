// Color tables matching the engine's SVG style map.

export const WAVELENGTH_COLORS: Record<number, string> = {
  650: "#ff0000",
  610: "#ff7f00",
  580: "#ffd700",
  550: "#00c000",
  470: "#0000ff",
  440: "#4b0082",
  410: "#8b00ff",
};

export const MEDIUM_FILLS: Record<string, string> = {
  air: "none",
  water: "#bfe3f7",
  glass: "#d7e4ee",
  crown: "#d9e8dc",
  flint: "#e4dcee",
};

export function colorFor(lambdaNm: number): string {
  const exact = WAVELENGTH_COLORS[lambdaNm];
  if (exact !== undefined) return exact;
  let best = 650;
  for (const key of Object.keys(WAVELENGTH_COLORS)) {
    const k = Number(key);
    if (Math.abs(k - lambdaNm) < Math.abs(best - lambdaNm)) best = k;
  }
  return WAVELENGTH_COLORS[best];
}

export function fillFor(medium: string): string {
  return MEDIUM_FILLS[medium] ?? "#dddddd";
}
