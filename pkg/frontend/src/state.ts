/**
 * Console state: a plain immutable view model fed exclusively by server
 * payloads. Reducers never derive emotion numbers; they only carry the
 * service's values to the renderer and track which rows to highlight.
 */

import type { FeedbackResponse, LearnReport, StateView, TurnRecord } from "./api.js";

export interface FlashEntry {
  word: string;
  from: number;
  to: number;
  branch: string;
}

export type FeedbackBadge = "none" | "applied" | "no-change" | "update-skipped";
export type FeedbackGate = "need-session" | "need-event" | "ready" | "given";

export interface UiState {
  sessionId: string | null;
  view: StateView | null;
  lastRecord: TurnRecord | null;
  lastDryRun: TurnRecord | null;
  lastReport: LearnReport | null;
  flashes: FlashEntry[];
  feedbackBadge: FeedbackBadge;
  feedbackGate: FeedbackGate;
  moodChanged: boolean;
  history: TurnRecord[];
  error: string | null;
}

export function initialState(): UiState {
  return {
    sessionId: null,
    view: null,
    lastRecord: null,
    lastDryRun: null,
    lastReport: null,
    flashes: [],
    feedbackBadge: "none",
    feedbackGate: "need-session",
    moodChanged: false,
    history: [],
    error: null,
  };
}

export function withSession(state: UiState, id: string, view: StateView): UiState {
  return {
    ...initialState(),
    sessionId: id,
    view,
    feedbackGate: "need-event",
  };
}

/** Refresh from GET /sessions/{id}; the mood pill animates only on change. */
export function withStateView(state: UiState, view: StateView): UiState {
  const previous = state.view?.mood ?? null;
  return {
    ...state,
    view,
    moodChanged: previous !== null && previous !== view.mood,
    error: null,
  };
}

export function withTurnRecord(state: UiState, record: TurnRecord, view: StateView): UiState {
  const next = withStateView(state, view);
  return {
    ...next,
    lastRecord: record,
    lastDryRun: null,
    lastReport: null,
    flashes: [],
    feedbackBadge: "none",
    feedbackGate: "ready",
    history: [...state.history, record],
  };
}

export function withDryRunRecord(state: UiState, record: TurnRecord): UiState {
  return { ...state, lastDryRun: record, error: null };
}

function badgeFor(report: LearnReport): FeedbackBadge {
  if (report.branch === "skipped") return "update-skipped";
  if (report.entries.every((entry) => entry.delta === 0)) return "no-change";
  return "applied";
}

export function withFeedback(state: UiState, response: FeedbackResponse): UiState {
  const next = withStateView(state, response.state);
  return {
    ...next,
    lastReport: response.report,
    flashes: response.report.entries
      .filter((entry) => entry.new_value !== entry.old_value)
      .map((entry) => ({
        word: entry.word,
        from: entry.old_value,
        to: entry.new_value,
        branch: response.report.branch,
      })),
    feedbackBadge: badgeFor(response.report),
    feedbackGate: "given",
  };
}

export function withError(state: UiState, message: string): UiState {
  return { ...state, error: message };
}

export function clearError(state: UiState): UiState {
  return { ...state, error: null };
}
