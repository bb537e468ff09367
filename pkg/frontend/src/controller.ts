// Session controller: owns the latest server response and the single
// in-flight request.  Gestures arriving while a request is pending are
// dropped (the DOM also greys them out).  Everything rendered derives
// from snapshot(), which is rebuilt from the stored server state.

import { ApiError, SessionApi } from "./api.js";
import { BijectionPayload, SessionState } from "./protocol.js";
import { BoardModel, buildModel } from "./model.js";

export interface Snapshot {
  model: BoardModel | null;
  busy: boolean;
  error: string | null;
}

export class BoardController {
  private api: SessionApi;
  private onChange: () => void;
  private state: SessionState | null = null;
  private bijection: BijectionPayload | null = null;
  private inFlight = false;
  private lastError: string | null = null;

  constructor(api: SessionApi, onChange: () => void = () => {}) {
    this.api = api;
    this.onChange = onChange;
  }

  snapshot(): Snapshot {
    return {
      model: this.state ? buildModel(this.state, this.bijection) : null,
      busy: this.inFlight,
      error: this.lastError,
    };
  }

  get sessionId(): string | null {
    return this.state?.session_id ?? null;
  }

  get busy(): boolean {
    return this.inFlight;
  }

  // Runs one exchange under the in-flight gate.  Returns false when the
  // gesture was dropped because another request is still pending.
  private async exchange(work: () => Promise<void>): Promise<boolean> {
    if (this.inFlight) return false;
    this.inFlight = true;
    this.lastError = null;
    this.onChange();
    try {
      await work();
    } catch (err) {
      if (err instanceof ApiError) {
        this.lastError = `${err.status}: ${err.message}`;
      } else {
        this.lastError = err instanceof Error ? err.message : String(err);
      }
    } finally {
      this.inFlight = false;
      this.onChange();
    }
    return true;
  }

  start(preset: string, k: number): Promise<boolean> {
    return this.exchange(async () => {
      const old = this.state?.session_id;
      if (old) void this.api.close(old).catch(() => {});
      const doc = await this.api.create(preset, k);
      this.state = doc.state;
      this.bijection = null;
    });
  }

  pickup(pair: number): Promise<boolean> {
    return this.exchange(async () => {
      const sid = this.requireSession();
      const doc = await this.api.pickup(sid, pair);
      this.state = doc.state;
      this.bijection = doc.bijection;
    });
  }

  place(aName: string): Promise<boolean> {
    return this.exchange(async () => {
      const sid = this.requireSession();
      const doc = await this.api.place(sid, aName);
      this.state = doc.state;
    });
  }

  // Reload path: rebuilds the board from GET alone.  A bijection lifted
  // before the reload stays with the server, so the overlay is empty
  // until the next lift; placements still work by element name.
  refresh(): Promise<boolean> {
    return this.exchange(async () => {
      const sid = this.requireSession();
      const doc = await this.api.state(sid);
      this.state = doc.state;
      this.bijection = null;
    });
  }

  attach(sessionId: string): Promise<boolean> {
    return this.exchange(async () => {
      const doc = await this.api.state(sessionId);
      this.state = doc.state;
      this.bijection = null;
    });
  }

  quit(): Promise<boolean> {
    return this.exchange(async () => {
      const sid = this.state?.session_id;
      this.state = null;
      this.bijection = null;
      if (sid) await this.api.close(sid).catch(() => {});
    });
  }

  private requireSession(): string {
    const sid = this.state?.session_id;
    if (!sid) throw new Error("no active session");
    return sid;
  }
}
