/**
 * HTML-string renderers. Every number shown comes from a service payload;
 * the only transformation applied is decimal formatting.
 */

import type { StateView, TurnRecord } from "./api.js";
import {
  EVENT_SLOTS,
  EVENT_TYPES,
  SLOT_LABELS,
  validateEventForm,
  type FormValidation,
} from "./caseframe.js";
import type { FlashEntry, UiState } from "./state.js";

export const MOOD_ORDER = ["happy", "quiet", "sad", "surprise", "angry", "fear", "disgust"];

const GROUP_HINTS = [
  "1 uplift", "2 well-being", "3 self-blame", "4 letdown", "5 distress",
  "6 aversion", "7 anger", "8 fear", "9 surprise",
];

export function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function fmt(value: number): string {
  return value.toFixed(3);
}

export function renderMoodIndicator(view: StateView | null, moodChanged: boolean): string {
  const current = view?.mood ?? null;
  const pills = MOOD_ORDER.map((mood) => {
    const classes = ["mood-pill"];
    if (mood === current) classes.push("active");
    if (mood === current && moodChanged) classes.push("changed");
    return `<span class="${classes.join(" ")}" data-mood="${mood}">${mood}</span>`;
  });
  return `<div class="mood-indicator">${pills.join("")}</div>`;
}

export function renderEgcPanel(record: TurnRecord | null): string {
  if (!record) {
    return `<div class="egc-panel empty">no event yet</div>`;
  }
  const rows = record.egc.vectors.map((vec, i) => {
    const octant = record.egc.octants[i] ?? "?";
    const triple = vec.map(fmt).join(", ");
    return `<div class="egc-vector">(${triple}) <span class="octant">${esc(octant)}</span></div>`;
  });
  const emotions = record.emotions.length
    ? record.emotions.map(([name, strength]) => `${esc(name)} ${fmt(strength)}`).join(", ")
    : "none";
  return `<div class="egc-panel">
    ${rows.join("")}
    <div class="signed">signed value <b>${fmt(record.egc.signed_value)}</b></div>
    <div class="elicited">elicited: ${emotions}</div>
    <div class="transition">${esc(record.state_before)} &rarr; ${esc(record.state_after)}</div>
  </div>`;
}

export function renderEVector(record: TurnRecord | null): string {
  const values = record?.e_vector ?? new Array(9).fill(0);
  const bars = values.map((value, i) => {
    const width = Math.round(value * 100);
    return `<div class="e-bar-row" title="${GROUP_HINTS[i] ?? ""}">
      <span class="e-label">e${i + 1}</span>
      <span class="e-bar"><span class="e-fill" style="width:${width}%"></span></span>
      <span class="e-value">${fmt(value)}</span>
    </div>`;
  });
  return `<div class="e-vector">${bars.join("")}</div>`;
}

export function renderFvTable(view: StateView | null, flashes: FlashEntry[]): string {
  const deltas = view?.fv_deltas ?? [];
  if (deltas.length === 0) {
    return `<div class="fv-table empty">no learned words yet</div>`;
  }
  const byWord = new Map(flashes.map((flash) => [flash.word, flash]));
  const rows = deltas.map((delta) => {
    const flash = byWord.get(delta.word);
    const classes = flash ? "fv-row flash" : "fv-row";
    const change = flash
      ? `<span class="fv-change">${fmt(flash.from)} &rarr; ${fmt(flash.to)}</span>
         <span class="badge branch">${esc(flash.branch)}</span>`
      : `<span class="fv-change">${fmt(delta.initial_value)} &rarr; ${fmt(delta.current_value)}</span>`;
    return `<tr class="${classes}" data-word="${esc(delta.word)}">
      <td>${esc(delta.word)}</td>
      <td>${fmt(delta.current_value)}</td>
      <td>${change}</td>
    </tr>`;
  });
  return `<table class="fv-table"><thead><tr><th>word</th><th>FV</th><th>session change</th></tr></thead>
    <tbody>${rows.join("")}</tbody></table>`;
}

export function renderHistory(history: TurnRecord[]): string {
  if (history.length === 0) {
    return `<ol class="history empty"></ol>`;
  }
  const items = history.map((record) => {
    const emotions = record.emotions.map(([name]) => name).join(", ") || "none";
    const fb = record.feedback ? ` fb ${record.feedback.sign}${fmt(record.feedback.ev)}` : "";
    return `<li>#${record.turn} ${esc(record.event.event_type)}
      <span class="hist-emotions">${esc(emotions)}</span>
      ${esc(record.state_before)}&rarr;${esc(record.state_after)}${fb}</li>`;
  });
  return `<ol class="history">${items.join("")}</ol>`;
}

export interface FormModel {
  eventType: string;
  slots: Record<string, string>;
  whatIf: boolean;
}

export function renderEventForm(model: FormModel, validation: FormValidation): string {
  const options = EVENT_TYPES.map((name) =>
    `<option value="${name}"${name === model.eventType ? " selected" : ""}>${name}</option>`);
  const fields = (EVENT_SLOTS[model.eventType] ?? []).map((role) => {
    const value = model.slots[role] ?? "";
    const missing = validation.missing.includes(role);
    return `<label class="slot-field${missing ? " missing" : ""}">
      <span>${role} &middot; ${SLOT_LABELS[role] ?? role}</span>
      <input data-slot="${role}" value="${esc(value)}" placeholder="${SLOT_LABELS[role] ?? role}">
    </label>`;
  });
  const hint = validation.hint
    ? `<div class="form-hint">${esc(validation.hint)}</div>`
    : "";
  return `<form class="event-form" data-action="submit-event">
    <select data-action="event-type">${options.join("")}</select>
    <div class="slot-fields">${fields.join("")}</div>
    <label class="what-if"><input type="checkbox" data-action="what-if"${model.whatIf ? " checked" : ""}>
      what-if (dry run, not committed)</label>
    ${hint}
    <button type="submit"${validation.ok ? "" : " disabled"}>
      ${model.whatIf ? "probe event" : "submit event"}</button>
  </form>`;
}

export function renderWhatIfResult(record: TurnRecord | null): string {
  if (!record) return "";
  return `<div class="what-if-result">
    <span class="badge">what-if</span>
    would read ${fmt(record.egc.signed_value)} &rarr; ${esc(record.state_after)} (not committed)
  </div>`;
}

export function renderFeedbackPanel(state: UiState, ev: number, sign: "+" | "-"): string {
  if (state.feedbackGate === "need-session" || state.feedbackGate === "need-event") {
    return `<div class="feedback-panel blocked">submit an event first, then rate how it really felt</div>`;
  }
  const badge =
    state.feedbackBadge === "no-change" ? `<span class="badge no-change">no change</span>` :
    state.feedbackBadge === "update-skipped" ? `<span class="badge skipped">update skipped</span>` :
    state.feedbackBadge === "applied" ? `<span class="badge applied">FVs updated</span>` : "";
  const report = state.lastReport
    ? `<div class="report-line">branch ${esc(state.lastReport.branch)},
        rule ${esc(state.lastReport.rule)}, y_k ${fmt(state.lastReport.y_k)},
        mu ${fmt(state.lastReport.mu)}</div>`
    : "";
  const disabled = state.feedbackGate === "given" ? " disabled" : "";
  return `<form class="feedback-panel" data-action="submit-feedback">
    <label>real emotion value
      <input type="range" min="0" max="1" step="0.01" value="${ev}" data-action="ev-slider">
      <span class="ev-value">${fmt(ev)}</span>
    </label>
    <select data-action="ev-sign">
      <option value="+"${sign === "+" ? " selected" : ""}>pleasure (+)</option>
      <option value="-"${sign === "-" ? " selected" : ""}>displeasure (-)</option>
    </select>
    <button type="submit"${disabled}>send feedback</button>
    ${badge}${report}
  </form>`;
}

export interface PageModel {
  state: UiState;
  form: FormModel;
  ev: number;
  sign: "+" | "-";
}

export function renderApp(page: PageModel): string {
  const { state } = page;
  const error = state.error ? `<div class="error-bar">${esc(state.error)}</div>` : "";
  if (!state.sessionId || !state.view) {
    return `${error}<div class="connect">
      <button data-action="new-session">start session</button>
    </div>`;
  }
  const validation = validationFor(page.form);
  return `${error}
    <section class="panel">
      <h2>mood</h2>
      ${renderMoodIndicator(state.view, state.moodChanged)}
      <h2>last event</h2>
      ${renderEgcPanel(state.lastRecord)}
      ${renderWhatIfResult(state.lastDryRun)}
      <h2>group strengths</h2>
      ${renderEVector(state.lastRecord)}
    </section>
    <section class="panel">
      <h2>compose event</h2>
      ${renderEventForm(page.form, validation)}
      <h2>feedback</h2>
      ${renderFeedbackPanel(state, page.ev, page.sign)}
    </section>
    <section class="panel">
      <h2>favorite values</h2>
      ${renderFvTable(state.view, state.flashes)}
      <h2>history (${state.history.length})</h2>
      ${renderHistory(state.history)}
    </section>`;
}

function validationFor(form: FormModel): FormValidation {
  return validateEventForm(form.eventType, form.slots);
}
