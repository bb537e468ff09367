// Wire types for the session-service JSON protocol.  These mirror the
// server's responses field for field; nothing here is interpreted
// beyond parsing.

export interface TranscriptEntry {
  round: number;
  pickup: number;
  gstar?: Record<string, string>;
  table_digest?: string;
  place: string;
  winner: string | null;
}

export interface SessionState {
  k: number;
  round: number;
  phase: string; // "pickup" | "place" over the wire
  winner: string | null;
  picked: number | null;
  placements: Record<string, [string, string]>;
  universe_a: string[];
  universe_b: string[];
  preset: string;
  session_id: string;
  transcript: TranscriptEntry[];
}

export interface BijectionPayload {
  kind: string; // "gstar" | "table"
  gstar?: Record<string, string>;
  digest?: string;
  table?: Record<string, string>;
}

export interface CreateResponse {
  session_id: string;
  state: SessionState;
}

export interface StateResponse {
  state: SessionState;
}

export interface PickupResponse {
  bijection: BijectionPayload;
  state: SessionState;
}

// Element names follow the lifted convention base#bits.
export function splitElement(
  name: string
): { base: string; bits: string } | null {
  const cut = name.lastIndexOf("#");
  if (cut < 0) return null;
  return { base: name.slice(0, cut), bits: name.slice(cut + 1) };
}
