/** Thin transport layer over the session service's HTTP/JSON and SSE
 * contracts.  The `SessionService` interface is what the app and the
 * view-model tests program against; `HttpService` is the real transport
 * and the test suite substitutes a stub that replays a recorded log. */

import type {
  CreateSessionRequest,
  HintPlan,
  LogRecord,
  SessionView,
} from "./types.js";

export interface CreatedSession extends SessionView {
  session_id: string;
}

export interface MeasureResult extends SessionView {
  outcome: number;
}

export interface SessionService {
  createSession(req: CreateSessionRequest): Promise<CreatedSession>;
  view(sessionId: string): Promise<SessionView>;
  move(sessionId: string, label: string): Promise<SessionView>;
  measure(sessionId: string): Promise<MeasureResult>;
  hint(sessionId: string, solver?: string): Promise<HintPlan>;
  log(sessionId: string): Promise<LogRecord[]>;
  /** Subscribe to state pushes; returns an unsubscribe function. */
  events(sessionId: string, onView: (view: SessionView) => void): () => void;
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    detail: string,
  ) {
    super(detail);
  }
}

export class HttpService implements SessionService {
  constructor(private readonly base: string = "") {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(this.base + path, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        detail = (await resp.json()).detail ?? detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ServiceError(resp.status, detail);
    }
    return (await resp.json()) as T;
  }

  createSession(req: CreateSessionRequest): Promise<CreatedSession> {
    return this.request("/session", { method: "POST", body: JSON.stringify(req) });
  }

  view(sessionId: string): Promise<SessionView> {
    return this.request(`/session/${sessionId}`);
  }

  move(sessionId: string, label: string): Promise<SessionView> {
    return this.request(`/session/${sessionId}/move`, {
      method: "POST",
      body: JSON.stringify({ label }),
    });
  }

  measure(sessionId: string): Promise<MeasureResult> {
    return this.request(`/session/${sessionId}/measure`, { method: "POST" });
  }

  hint(sessionId: string, solver = "combined"): Promise<HintPlan> {
    return this.request(`/session/${sessionId}/hint?solver=${solver}`);
  }

  async log(sessionId: string): Promise<LogRecord[]> {
    const resp = await fetch(`${this.base}/session/${sessionId}/log`);
    if (!resp.ok) {
      throw new ServiceError(resp.status, resp.statusText);
    }
    const text = await resp.text();
    return text
      .split("\n")
      .filter((line) => line.trim().length > 0)
      .map((line) => JSON.parse(line) as LogRecord);
  }

  events(sessionId: string, onView: (view: SessionView) => void): () => void {
    const source = new EventSource(`${this.base}/session/${sessionId}/events`);
    source.onmessage = (ev) => onView(JSON.parse(ev.data) as SessionView);
    return () => source.close();
  }
}
