// Pure geometry for one structure pane: base vertices sit on a circle,
// and the label copies of each base vertex fan out in a small ring
// around its anchor, keeping the base-graph shape recognizable.

export interface Point {
  x: number;
  y: number;
}

export interface PaneLayout {
  width: number;
  height: number;
  fanRadius: number;
  anchors: Record<string, Point>;
  elements: Record<string, Point>;
}

export const PANE_WIDTH = 360;
export const PANE_HEIGHT = 340;
const ANCHOR_MARGIN = 64;
const FAN_RADIUS = 26;

export function paneLayout(
  baseVertices: string[],
  fanBits: string[],
  width: number = PANE_WIDTH,
  height: number = PANE_HEIGHT
): PaneLayout {
  const cx = width / 2;
  const cy = height / 2;
  const ring = Math.min(width, height) / 2 - ANCHOR_MARGIN;
  const anchors: Record<string, Point> = {};
  baseVertices.forEach((v, i) => {
    const angle = (2 * Math.PI * i) / baseVertices.length - Math.PI / 2;
    anchors[v] = {
      x: cx + ring * Math.cos(angle),
      y: cy + ring * Math.sin(angle),
    };
  });
  const elements: Record<string, Point> = {};
  for (const v of baseVertices) {
    fanBits.forEach((bits, j) => {
      const angle = (2 * Math.PI * j) / fanBits.length - Math.PI / 2;
      elements[`${v}#${bits}`] = {
        x: anchors[v].x + FAN_RADIUS * Math.cos(angle),
        y: anchors[v].y + FAN_RADIUS * Math.sin(angle),
      };
    });
  }
  return { width, height, fanRadius: FAN_RADIUS, anchors, elements };
}
