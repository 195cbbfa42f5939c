/**
 * Browser wiring: keeps one UiState + form model, re-renders the whole app
 * after every confirmed service response (no optimistic updates), and
 * delegates DOM events from the #app container so re-rendering never loses
 * handlers.
 */

import { ApiError, SessionApi } from "./api.js";
import { EVENT_SLOTS, slotsForSubmit, validateEventForm } from "./caseframe.js";
import { renderApp, type FormModel } from "./render.js";
import {
  initialState,
  withDryRunRecord,
  withError,
  withFeedback,
  withSession,
  withTurnRecord,
  type UiState,
} from "./state.js";

function defaultServiceUrl(): string {
  const params = new URLSearchParams(window.location.search);
  return params.get("api") ?? "http://127.0.0.1:8000";
}

class Console {
  private api: SessionApi;
  private state: UiState = initialState();
  private form: FormModel = { eventType: "V(S,O)", slots: {}, whatIf: false };
  private ev = 0.5;
  private sign: "+" | "-" = "+";

  constructor(private root: HTMLElement, serviceUrl: string) {
    this.api = new SessionApi(serviceUrl);
    this.bind();
    this.paint();
  }

  private paint(): void {
    this.root.innerHTML = renderApp({
      state: this.state,
      form: this.form,
      ev: this.ev,
      sign: this.sign,
    });
  }

  private fail(error: unknown): void {
    const message =
      error instanceof ApiError ? error.detail :
      error instanceof Error ? error.message : String(error);
    this.state = withError(this.state, message);
    this.paint();
  }

  private bind(): void {
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      if (target.dataset.action === "new-session") {
        void this.newSession();
      }
    });
    this.root.addEventListener("change", (event) => {
      const target = event.target as HTMLInputElement | HTMLSelectElement;
      switch (target.dataset.action) {
        case "event-type": {
          this.form = { ...this.form, eventType: target.value };
          this.paint();
          break;
        }
        case "what-if": {
          this.form = { ...this.form, whatIf: (target as HTMLInputElement).checked };
          this.paint();
          break;
        }
        case "ev-sign": {
          this.sign = target.value === "-" ? "-" : "+";
          this.paint();
          break;
        }
      }
    });
    this.root.addEventListener("input", (event) => {
      const target = event.target as HTMLInputElement;
      if (target.dataset.slot) {
        this.form = {
          ...this.form,
          slots: { ...this.form.slots, [target.dataset.slot]: target.value },
        };
        // keep focus: update only the submit gate, not the whole tree
        this.refreshFormGate();
      } else if (target.dataset.action === "ev-slider") {
        this.ev = Number(target.value);
        const label = this.root.querySelector(".ev-value");
        if (label) label.textContent = this.ev.toFixed(3);
      }
    });
    this.root.addEventListener("submit", (event) => {
      event.preventDefault();
      const target = event.target as HTMLElement;
      if (target.dataset.action === "submit-event") void this.submitEvent();
      if (target.dataset.action === "submit-feedback") void this.submitFeedback();
    });
  }

  private refreshFormGate(): void {
    const validation = validateEventForm(this.form.eventType, this.form.slots);
    const button = this.root.querySelector<HTMLButtonElement>(".event-form button");
    if (button) button.disabled = !validation.ok;
    const hint = this.root.querySelector(".form-hint");
    if (hint) hint.textContent = validation.hint ?? "";
  }

  private async newSession(): Promise<void> {
    try {
      const { id, state } = await this.api.createSession();
      this.state = withSession(this.state, id, state);
      this.paint();
    } catch (error) {
      this.fail(error);
    }
  }

  private async submitEvent(): Promise<void> {
    if (!this.state.sessionId) return;
    const body = {
      event_type: this.form.eventType,
      slots: slotsForSubmit(this.form.eventType, this.form.slots),
    };
    try {
      const record = await this.api.submitEvent(this.state.sessionId, body, this.form.whatIf);
      if (this.form.whatIf) {
        this.state = withDryRunRecord(this.state, record);
      } else {
        const view = await this.api.getState(this.state.sessionId);
        this.state = withTurnRecord(this.state, record, view);
      }
      this.paint();
    } catch (error) {
      this.fail(error);
    }
  }

  private async submitFeedback(): Promise<void> {
    if (!this.state.sessionId) return;
    try {
      const response = await this.api.submitFeedback(this.state.sessionId, this.ev, this.sign);
      this.state = withFeedback(this.state, response);
      this.paint();
    } catch (error) {
      this.fail(error);
    }
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  new Console(root, defaultServiceUrl());
}

// only run in a real browser; tests import the modules directly
if (typeof document !== "undefined" && typeof window !== "undefined") {
  boot();
}

export { EVENT_SLOTS };
