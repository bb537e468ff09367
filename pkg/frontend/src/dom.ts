// Applies a Scene to the page.  Rebuilds the two SVG panes and the
// sidebar on every render; the boards are small enough that diffing
// would buy nothing.

import { PaneScene, Scene, PEBBLE_COLORS } from "./scene.js";

export interface Handlers {
  onPickup: (pair: number) => void;
  onPlace: (element: string) => void;
  onHoverEdge: (key: string | null) => void;
  onHoverElement: (name: string | null) => void;
}

const SVG_NS = "http://www.w3.org/2000/svg";

function svg(tag: string, attrs: Record<string, string>): SVGElement {
  const el = document.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) {
    el.setAttribute(key, value);
  }
  return el;
}

function renderPane(
  pane: PaneScene,
  handlers: Handlers
): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "pane";
  const title = document.createElement("h3");
  title.textContent = pane.title;
  wrap.appendChild(title);

  const root = svg("svg", {
    viewBox: `0 0 ${pane.width} ${pane.height}`,
    width: String(pane.width),
    height: String(pane.height),
  });

  for (const edge of pane.edges) {
    const line = svg("line", {
      x1: String(edge.x1),
      y1: String(edge.y1),
      x2: String(edge.x2),
      y2: String(edge.y2),
      class: edge.hovered ? "edge hovered" : "edge",
    });
    line.addEventListener("mouseenter", () => handlers.onHoverEdge(edge.key));
    line.addEventListener("mouseleave", () => handlers.onHoverEdge(null));
    root.appendChild(line);
  }

  for (const anchor of pane.anchors) {
    const label = svg("text", {
      x: String(anchor.x),
      y: String(anchor.y + 4),
      class: "anchor-label",
      "text-anchor": "middle",
    });
    label.textContent = anchor.base;
    root.appendChild(label);
    if (anchor.gstar !== null) {
      const badge = svg("text", {
        x: String(anchor.x),
        y: String(anchor.y - 38),
        class: "gstar-badge",
        "text-anchor": "middle",
      });
      badge.textContent = `g*=${anchor.gstar}`;
      root.appendChild(badge);
    }
  }

  for (const node of pane.nodes) {
    const group = svg("g", { class: "element" });
    const classes = ["node"];
    if (node.clickable) classes.push("clickable");
    if (node.highlighted) classes.push("highlighted");
    const circle = svg("circle", {
      cx: String(node.x),
      cy: String(node.y),
      r: "11",
      class: classes.join(" "),
    });
    group.appendChild(circle);
    const text = svg("text", {
      x: String(node.x),
      y: String(node.y + 3.5),
      class: "node-label",
      "text-anchor": "middle",
    });
    text.textContent = node.label;
    group.appendChild(text);
    node.pebbles.forEach((pair, i) => {
      group.appendChild(
        svg("circle", {
          cx: String(node.x + 10 + 7 * i),
          cy: String(node.y - 10),
          r: "6",
          class: "pebble",
          fill: PEBBLE_COLORS[pair % PEBBLE_COLORS.length],
        })
      );
    });
    node.lifted.forEach((pair, i) => {
      group.appendChild(
        svg("circle", {
          cx: String(node.x + 10 + 7 * i),
          cy: String(node.y + 10),
          r: "6",
          class: "pebble lifted",
          stroke: PEBBLE_COLORS[pair % PEBBLE_COLORS.length],
          fill: "none",
        })
      );
    });
    if (node.clickable) {
      circle.addEventListener("click", () => handlers.onPlace(node.name));
    }
    if (pane.side === "a") {
      group.addEventListener("mouseenter", () =>
        handlers.onHoverElement(node.name)
      );
      group.addEventListener("mouseleave", () =>
        handlers.onHoverElement(null)
      );
    }
    root.appendChild(group);
  }

  wrap.appendChild(root);
  return wrap;
}

export function render(scene: Scene, mount: HTMLElement, handlers: Handlers): void {
  mount.textContent = "";

  const status = document.createElement("div");
  status.className = "status";
  status.textContent = scene.busy ? `${scene.status} …` : scene.status;
  mount.appendChild(status);

  if (scene.banner) {
    const banner = document.createElement("div");
    banner.className = "banner";
    banner.textContent = scene.banner;
    mount.appendChild(banner);
  }
  if (scene.toast) {
    const toast = document.createElement("div");
    toast.className = "toast";
    toast.textContent = scene.toast;
    mount.appendChild(toast);
  }

  if (!scene.connected) return;

  const buttons = document.createElement("div");
  buttons.className = "pairs";
  for (const button of scene.pairButtons) {
    const el = document.createElement("button");
    el.textContent = button.held ? `pair ${button.pair} ✋` : `pair ${button.pair}`;
    el.style.borderColor = button.color;
    el.disabled = !button.enabled;
    el.addEventListener("click", () => handlers.onPickup(button.pair));
    buttons.appendChild(el);
  }
  mount.appendChild(buttons);

  const panes = document.createElement("div");
  panes.className = "panes";
  for (const pane of scene.panes) {
    panes.appendChild(renderPane(pane, handlers));
  }
  mount.appendChild(panes);

  const aside = document.createElement("div");
  aside.className = "aside";
  if (scene.inspector) {
    const box = document.createElement("div");
    box.className = "inspector";
    const head = document.createElement("strong");
    head.textContent = scene.inspector.title;
    box.appendChild(head);
    for (const line of scene.inspector.lines) {
      const p = document.createElement("div");
      p.textContent = line;
      box.appendChild(p);
    }
    aside.appendChild(box);
  }
  const log = document.createElement("ol");
  log.className = "log";
  for (const line of scene.log) {
    const item = document.createElement("li");
    item.textContent = line;
    log.appendChild(item);
  }
  aside.appendChild(log);
  mount.appendChild(aside);
}
