// Static display data for the presets the service lets clients create.
// The shift sets shown in the constraint inspector duplicate the fixed
// bundles of those shipped instances; they are rendering aids only.
// Every game-state fact on screen — pebbles, phase, bijection, winner —
// comes from the server.

export interface EdgeInfo {
  u: string;
  v: string;
  shiftsA: string[];
  shiftsB: string[];
}

export interface PresetInfo {
  name: string;
  m: number;
  baseVertices: string[];
  fanBits: string[]; // fan order around each base anchor
  edges: EdgeInfo[];
}

export const PRESET_CATALOG: Record<string, PresetInfo> = {
  "fig2-lifted": {
    name: "fig2-lifted",
    m: 1,
    baseVertices: ["v1", "v2", "v3"],
    fanBits: ["0", "1"],
    edges: [
      { u: "v1", v: "v2", shiftsA: ["0"], shiftsB: ["0"] },
      { u: "v1", v: "v3", shiftsA: ["0"], shiftsB: ["0"] },
      { u: "v2", v: "v3", shiftsA: ["0"], shiftsB: ["1"] },
    ],
  },
  "fig3-lifted": {
    name: "fig3-lifted",
    m: 2,
    baseVertices: ["v1", "v2", "v3", "v4"],
    fanBits: ["00", "01", "10", "11"],
    edges: [
      { u: "v1", v: "v2", shiftsA: ["00", "01"], shiftsB: ["00", "01"] },
      { u: "v1", v: "v3", shiftsA: ["00", "10"], shiftsB: ["00", "10"] },
      { u: "v1", v: "v4", shiftsA: ["00", "11"], shiftsB: ["00", "11"] },
      { u: "v2", v: "v3", shiftsA: ["00", "11"], shiftsB: ["00", "11"] },
      { u: "v2", v: "v4", shiftsA: ["00", "10"], shiftsB: ["00", "10"] },
      { u: "v3", v: "v4", shiftsA: ["00", "01"], shiftsB: ["10", "11"] },
    ],
  },
};

export function presetInfo(name: string): PresetInfo | null {
  return PRESET_CATALOG[name] ?? null;
}
