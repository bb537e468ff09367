// Pure scene assembly: BoardModel + transient UI flags in, plain
// drawable objects out.  No DOM access here; dom.ts applies the scene.

import { BoardModel } from "./model.js";
import { paneLayout } from "./layout.js";

export const PEBBLE_COLORS = [
  "#e8590c",
  "#5f3dc4",
  "#2b8a3e",
  "#c2255c",
  "#1971c2",
  "#e67700",
  "#0b7285",
  "#862e9c",
];

export interface UiFlags {
  busy: boolean;
  error: string | null;
  hoverEdge: string | null; // edge key "u|v"
  hoverElement: string | null; // pane-a element name
}

export interface SceneNode {
  name: string;
  x: number;
  y: number;
  label: string;
  pebbles: number[];
  lifted: number[];
  clickable: boolean;
  highlighted: boolean;
}

export interface SceneAnchor {
  base: string;
  x: number;
  y: number;
  gstar: string | null;
}

export interface SceneEdge {
  key: string;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  shifts: string[];
  hovered: boolean;
}

export interface PaneScene {
  side: "a" | "b";
  title: string;
  width: number;
  height: number;
  anchors: SceneAnchor[];
  edges: SceneEdge[];
  nodes: SceneNode[];
}

export interface PairButton {
  pair: number;
  enabled: boolean;
  held: boolean;
  color: string;
}

export interface Inspector {
  title: string;
  lines: string[];
}

export interface Scene {
  connected: boolean;
  panes: PaneScene[];
  pairButtons: PairButton[];
  inspector: Inspector | null;
  log: string[];
  banner: string | null;
  toast: string | null;
  status: string;
  busy: boolean;
}

export function edgeKey(u: string, v: string): string {
  return u < v ? `${u}|${v}` : `${v}|${u}`;
}

function buildPane(model: BoardModel, side: "a" | "b", ui: UiFlags): PaneScene {
  const info = model.preset;
  const layout = paneLayout(info.baseVertices, info.fanBits);
  const gstar =
    side === "a" && model.bijection?.gstar ? model.bijection.gstar : null;
  const anchors: SceneAnchor[] = info.baseVertices.map((base) => ({
    base,
    x: layout.anchors[base].x,
    y: layout.anchors[base].y,
    gstar: gstar ? gstar[base] ?? null : null,
  }));
  const edges: SceneEdge[] = info.edges.map((edge) => ({
    key: edgeKey(edge.u, edge.v),
    x1: layout.anchors[edge.u].x,
    y1: layout.anchors[edge.u].y,
    x2: layout.anchors[edge.v].x,
    y2: layout.anchors[edge.v].y,
    shifts: side === "a" ? edge.shiftsA : edge.shiftsB,
    hovered: ui.hoverEdge === edgeKey(edge.u, edge.v),
  }));
  const universe =
    side === "a" ? model.state.universe_a : model.state.universe_b;
  const table = model.bijection?.table ?? null;
  const image =
    side === "b" && table && ui.hoverElement
      ? table[ui.hoverElement] ?? null
      : null;
  const nodes: SceneNode[] = universe.map((name) => {
    const spot = layout.elements[name];
    const pebbles = model.pebbles
      .filter((p) => !p.held && (side === "a" ? p.a : p.b) === name)
      .map((p) => p.pair);
    const lifted = model.pebbles
      .filter((p) => p.held && (side === "a" ? p.a : p.b) === name)
      .map((p) => p.pair);
    return {
      name,
      x: spot?.x ?? 0,
      y: spot?.y ?? 0,
      label: name.slice(name.lastIndexOf("#") + 1),
      pebbles,
      lifted,
      clickable: side === "a" && model.canPlace && !ui.busy,
      highlighted: image === name,
    };
  });
  return {
    side,
    title: side === "a" ? "structure A" : "structure B",
    width: layout.width,
    height: layout.height,
    anchors,
    edges,
    nodes,
  };
}

function buildInspector(model: BoardModel, ui: UiFlags): Inspector | null {
  if (!ui.hoverEdge) return null;
  const edge = model.preset.edges.find(
    (e) => edgeKey(e.u, e.v) === ui.hoverEdge
  );
  if (!edge) return null;
  return {
    title: `constraint ${edge.u}–${edge.v}`,
    lines: [
      `structure A shifts: {${edge.shiftsA.join(", ")}}`,
      `structure B shifts: {${edge.shiftsB.join(", ")}}`,
    ],
  };
}

export function buildScene(model: BoardModel | null, ui: UiFlags): Scene {
  if (model === null) {
    return {
      connected: false,
      panes: [],
      pairButtons: [],
      inspector: null,
      log: [],
      banner: null,
      toast: ui.error,
      status: "no session",
      busy: ui.busy,
    };
  }
  const pairButtons: PairButton[] = model.pebbles.map((p) => ({
    pair: p.pair,
    enabled: model.canPickup && !ui.busy,
    held: p.held,
    color: PEBBLE_COLORS[p.pair % PEBBLE_COLORS.length],
  }));
  return {
    connected: true,
    panes: [buildPane(model, "a", ui), buildPane(model, "b", ui)],
    pairButtons,
    inspector: buildInspector(model, ui),
    log: model.logLines,
    banner: model.banner,
    toast: ui.error,
    status: model.statusLine,
    busy: ui.busy,
  };
}
