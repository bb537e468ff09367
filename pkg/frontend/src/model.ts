// Board model: a normalized view of the latest server state.  Building
// it performs no game reasoning — legality flags only echo the phase
// the server reported, and the bijection is carried verbatim from the
// last lift response while the server is waiting for a placement.

import {
  BijectionPayload,
  SessionState,
  TranscriptEntry,
  splitElement,
} from "./protocol.js";
import { PresetInfo, presetInfo } from "./presets.js";

export interface PebbleView {
  pair: number;
  a: string | null;
  b: string | null;
  held: boolean;
}

export interface BoardModel {
  preset: PresetInfo;
  state: SessionState;
  bijection: BijectionPayload | null;
  pebbles: PebbleView[];
  canPickup: boolean;
  canPlace: boolean;
  logLines: string[];
  banner: string | null;
  statusLine: string;
}

// Unknown presets still render: reconstruct fans from the element names
// and show no constraint edges.
function syntheticPreset(name: string, universe: string[]): PresetInfo {
  const bases: string[] = [];
  const bits = new Set<string>();
  for (const element of universe) {
    const parts = splitElement(element);
    const base = parts ? parts.base : element;
    if (!bases.includes(base)) bases.push(base);
    bits.add(parts ? parts.bits : "");
  }
  const fanBits = [...bits].sort();
  return { name, m: fanBits[0]?.length ?? 0, baseVertices: bases, fanBits, edges: [] };
}

function describeBijection(entry: TranscriptEntry): string {
  if (entry.gstar) {
    const moved = Object.entries(entry.gstar).filter(([, bits]) =>
      bits.includes("1")
    );
    if (moved.length === 0) return "g* = 0";
    return "g* " + moved.map(([v, bits]) => `${v}:${bits}`).join(" ");
  }
  return `table #${entry.table_digest}`;
}

export function logLine(entry: TranscriptEntry): string {
  const core = `round ${entry.round} · pair ${entry.pickup} · ${describeBijection(
    entry
  )} · place ${entry.place}`;
  return entry.winner ? `${core} — ${entry.winner} wins` : core;
}

function statusLine(state: SessionState, winner: string | null): string {
  if (winner) return `game over after round ${state.round}`;
  if (state.phase === "place") {
    return `round ${state.round} — pair ${state.picked} held, place it`;
  }
  return `round ${state.round} — lift a pair`;
}

export function buildModel(
  state: SessionState,
  bijection: BijectionPayload | null
): BoardModel {
  const preset =
    presetInfo(state.preset) ??
    syntheticPreset(state.preset, state.universe_a);
  const pebbles: PebbleView[] = [];
  for (let pair = 0; pair < state.k; pair++) {
    const placed = state.placements[String(pair)];
    pebbles.push({
      pair,
      a: placed ? placed[0] : null,
      b: placed ? placed[1] : null,
      held: state.picked === pair,
    });
  }
  const winner = state.winner;
  const canPickup = winner === null && state.phase === "pickup";
  const canPlace = winner === null && state.phase === "place";
  return {
    preset,
    state,
    bijection: state.phase === "place" ? bijection : null,
    pebbles,
    canPickup,
    canPlace,
    logLines: state.transcript.map(logLine),
    banner: winner === "spoiler" ? `Spoiler wins in round ${state.round}` : null,
    statusLine: statusLine(state, winner),
  };
}
