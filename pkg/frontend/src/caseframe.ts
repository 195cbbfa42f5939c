/**
 * Case-frame form metadata: which slots each event type requires. This is
 * form validation data only; all emotion math stays on the server.
 */

export const SLOT_LABELS: Record<string, string> = {
  S: "Subject",
  O: "Object",
  OF: "Object-from",
  OT: "Object-to",
  OM: "Object-mutual",
  OS: "Object-source",
  OC: "Object-content",
  I: "Instrument",
  C: "Complement",
  P: "Predicate",
};

/** Required slots per event type; the predicate P is required everywhere. */
export const EVENT_SLOTS: Record<string, string[]> = {
  "V(S)": ["S", "P"],
  "A(S,C)": ["S", "C", "P"],
  "A(S,OF,C)": ["S", "OF", "C", "P"],
  "A(S,OT,C)": ["S", "OT", "C", "P"],
  "A(S,OM,C)": ["S", "OM", "C", "P"],
  "A(S,OS,C)": ["S", "OS", "C", "P"],
  "V(S,OF)": ["S", "OF", "P"],
  "V(S,OT)": ["S", "OT", "P"],
  "V(S,OM)": ["S", "OM", "P"],
  "V(S,OS)": ["S", "OS", "P"],
  "V(S,O)": ["S", "O", "P"],
  "V(S,O,OF)": ["S", "O", "OF", "P"],
  "V(S,O,OT)": ["S", "O", "OT", "P"],
  "V(S,O,OM)": ["S", "O", "OM", "P"],
  "V(S,O,I)": ["S", "O", "I", "P"],
  "V(S,O,OC)": ["S", "O", "OC", "P"],
  "A(S,O,C)": ["S", "O", "C", "P"],
};

export const EVENT_TYPES = Object.keys(EVENT_SLOTS);

export interface FormValidation {
  ok: boolean;
  missing: string[];
  extras: string[];
  hint: string | null;
}

/** Client-side mirror of the server's slot requirements for inline hints. */
export function validateEventForm(eventType: string, slots: Record<string, string>): FormValidation {
  const required = EVENT_SLOTS[eventType];
  if (!required) {
    return { ok: false, missing: [], extras: [], hint: `unknown event type ${eventType}` };
  }
  const filled = Object.keys(slots).filter((role) => (slots[role] ?? "").trim() !== "");
  const missing = required.filter((role) => !filled.includes(role));
  const extras = filled.filter((role) => !required.includes(role));
  let hint: string | null = null;
  if (missing.length > 0) {
    hint = `fill ${missing.map((r) => SLOT_LABELS[r] ?? r).join(", ")}`;
  } else if (extras.length > 0) {
    hint = `remove ${extras.join(", ")} (not part of ${eventType})`;
  }
  return { ok: missing.length === 0 && extras.length === 0, missing, extras, hint };
}

/** Trimmed copy of the form's slots restricted to the event type's roles. */
export function slotsForSubmit(eventType: string, slots: Record<string, string>): Record<string, string> {
  const required = EVENT_SLOTS[eventType] ?? [];
  const out: Record<string, string> = {};
  for (const role of required) {
    const word = (slots[role] ?? "").trim();
    if (word !== "") out[role] = word;
  }
  return out;
}
