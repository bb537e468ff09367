// Browser entry point: wires the controller to the live service and
// re-renders the scene on every change.

import { httpTransport, SessionApi } from "./api.js";
import { BoardController } from "./controller.js";
import { buildScene, UiFlags } from "./scene.js";
import { render, Handlers } from "./dom.js";

function serviceUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("service");
  return fromQuery ?? "http://127.0.0.1:8642";
}

function start(): void {
  const mount = document.getElementById("board");
  const presetSelect = document.getElementById("preset") as HTMLSelectElement;
  const kInput = document.getElementById("pairs") as HTMLInputElement;
  const newButton = document.getElementById("new-session") as HTMLButtonElement;
  if (!mount || !presetSelect || !kInput || !newButton) {
    throw new Error("page is missing its fixed controls");
  }

  const ui: UiFlags = {
    busy: false,
    error: null,
    hoverEdge: null,
    hoverElement: null,
  };

  const controller = new BoardController(
    new SessionApi(httpTransport(serviceUrl())),
    () => paint()
  );

  const handlers: Handlers = {
    onPickup: (pair) => void controller.pickup(pair),
    onPlace: (element) => void controller.place(element),
    onHoverEdge: (key) => {
      ui.hoverEdge = key;
      paint();
    },
    onHoverElement: (name) => {
      ui.hoverElement = name;
      paint();
    },
  };

  function paint(): void {
    const snap = controller.snapshot();
    ui.busy = snap.busy;
    ui.error = snap.error;
    newButton.disabled = snap.busy;
    render(buildScene(snap.model, ui), mount as HTMLElement, handlers);
  }

  newButton.addEventListener("click", () => {
    const k = Number.parseInt(kInput.value, 10);
    void controller.start(presetSelect.value, Number.isNaN(k) ? 2 : k);
  });

  paint();
}

start();
