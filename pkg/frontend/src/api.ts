// Thin typed client for the session service.  All traffic goes through
// an injectable Transport so tests can replay recorded exchanges
// without a network.

import {
  CreateResponse,
  PickupResponse,
  StateResponse,
} from "./protocol.js";

export interface TransportResult {
  status: number;
  body: unknown;
}

export type Transport = (
  method: string,
  path: string,
  body?: unknown
) => Promise<TransportResult>;

export class ApiError extends Error {
  readonly status: number;

  constructor(status: number, reason: string) {
    super(reason);
    this.name = "ApiError";
    this.status = status;
  }
}

export function httpTransport(baseUrl: string): Transport {
  const root = baseUrl.replace(/\/+$/, "");
  return async (method, path, body) => {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "Content-Type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await fetch(root + path, init);
    const text = await resp.text();
    return { status: resp.status, body: text ? JSON.parse(text) : null };
  };
}

function reasonOf(body: unknown, status: number): string {
  if (body && typeof body === "object" && "error" in body) {
    const message = (body as { error: unknown }).error;
    if (typeof message === "string") return message;
  }
  return `unexpected HTTP status ${status}`;
}

export class SessionApi {
  private transport: Transport;

  constructor(transport: Transport) {
    this.transport = transport;
  }

  private async expect<T>(
    wanted: number,
    method: string,
    path: string,
    body?: unknown
  ): Promise<T> {
    const { status, body: doc } = await this.transport(method, path, body);
    if (status !== wanted) throw new ApiError(status, reasonOf(doc, status));
    return doc as T;
  }

  create(preset: string, k: number): Promise<CreateResponse> {
    return this.expect(201, "POST", "/api/sessions", { preset, k });
  }

  state(id: string): Promise<StateResponse> {
    return this.expect(200, "GET", `/api/sessions/${id}`);
  }

  pickup(id: string, pair: number): Promise<PickupResponse> {
    return this.expect(200, "POST", `/api/sessions/${id}/pickup`, { pair });
  }

  place(id: string, a: string): Promise<StateResponse> {
    return this.expect(200, "POST", `/api/sessions/${id}/place`, { a });
  }

  close(id: string): Promise<null> {
    return this.expect(204, "DELETE", `/api/sessions/${id}`);
  }
}
