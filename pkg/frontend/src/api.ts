/**
 * Typed client for the egcnet session service. The console renders server
 * payloads verbatim, so these interfaces mirror the wire format exactly.
 */

export type SlotMap = Record<string, string>;

export interface ContextFlags {
  target?: string;
  other_fortune?: string;
  temporal?: string;
  agency?: string;
  approval?: string;
}

export interface EventBody {
  event_type: string;
  predicate_kind?: string | null;
  slots: SlotMap;
  context?: ContextFlags | null;
}

export interface EgcView {
  vectors: number[][];
  octants: string[];
  signed_components: number[];
  signed_value: number;
  raw_magnitude: number;
}

export interface LearnEntry {
  role: string;
  word: string;
  old_value: number;
  old_known: boolean;
  new_value: number;
  delta: number;
}

export interface LearnReport {
  branch: string;
  rule: string;
  mu: number;
  y_k: number;
  ev: number;
  ev_sign: number;
  lambda_used: number;
  min_role: string;
  entries: LearnEntry[];
  note: string;
}

export interface TurnRecord {
  turn: number | null;
  event: { event_type: string; predicate_kind: string | null; slots: SlotMap };
  context: Record<string, string>;
  resolved_fvs: Record<string, { word: string; value: number; known: boolean }>;
  egc: EgcView;
  emotions: [string, number][];
  e_vector: number[];
  selected_group: number | null;
  state_before: string;
  state_after: string;
  cost_used: number;
  feedback: { ev: number; sign: string } | null;
  learning: LearnReport | null;
  dry_run: boolean;
}

export interface FvDelta {
  word: string;
  initial_value: number;
  current_value: number;
  known: boolean;
}

export interface StateView {
  id: string | null;
  persona: string;
  turns: number;
  mood: string;
  cost_row: Record<string, number>;
  fv_deltas: FvDelta[];
  last_turn: TurnRecord | null;
}

export interface FeedbackResponse {
  report: LearnReport;
  state: StateView;
}

export class ApiError extends Error {
  constructor(readonly status: number, readonly detail: string) {
    super(`HTTP ${status}: ${detail}`);
    this.name = "ApiError";
  }
}

async function parseDetail(response: Response): Promise<string> {
  try {
    const body = (await response.json()) as { detail?: unknown };
    if (typeof body.detail === "string") return body.detail;
    return JSON.stringify(body.detail ?? body);
  } catch {
    return response.statusText;
  }
}

export class SessionApi {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      headers: { "content-type": "application/json" },
      ...init,
    });
    if (!response.ok) {
      throw new ApiError(response.status, await parseDetail(response));
    }
    return (await response.json()) as T;
  }

  async createSession(persona?: string): Promise<{ id: string; state: StateView }> {
    return this.request("/sessions", {
      method: "POST",
      body: JSON.stringify(persona ? { persona } : {}),
    });
  }

  async getState(id: string): Promise<StateView> {
    return this.request(`/sessions/${id}`);
  }

  async submitEvent(id: string, body: EventBody, dryRun = false): Promise<TurnRecord> {
    const query = dryRun ? "?dry_run=true" : "";
    return this.request(`/sessions/${id}/events${query}`, {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  async submitFeedback(id: string, ev: number, sign: "+" | "-"): Promise<FeedbackResponse> {
    return this.request(`/sessions/${id}/feedback`, {
      method: "POST",
      body: JSON.stringify({ ev, sign }),
    });
  }

  async getTrace(id: string): Promise<string> {
    const response = await fetch(`${this.baseUrl}/sessions/${id}/trace`);
    if (!response.ok) {
      throw new ApiError(response.status, await parseDetail(response));
    }
    return response.text();
  }
}
