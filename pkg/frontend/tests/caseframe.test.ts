import { describe, expect, it } from "vitest";

import { EVENT_SLOTS, EVENT_TYPES, slotsForSubmit, validateEventForm } from "../src/caseframe.js";

describe("event slot metadata", () => {
  it("covers all seventeen event types", () => {
    expect(EVENT_TYPES).toHaveLength(17);
    expect(EVENT_SLOTS["V(S,O)"]).toEqual(["S", "O", "P"]);
    expect(EVENT_SLOTS["V(S,O,OC)"]).toEqual(["S", "O", "OC", "P"]);
  });

  it("requires the predicate everywhere", () => {
    for (const roles of Object.values(EVENT_SLOTS)) {
      expect(roles).toContain("P");
    }
  });

  it("adjective types carry a complement", () => {
    for (const [name, roles] of Object.entries(EVENT_SLOTS)) {
      if (name.startsWith("A")) expect(roles).toContain("C");
    }
  });
});

describe("validateEventForm", () => {
  it("accepts a complete frame", () => {
    const v = validateEventForm("V(S,O)", { S: "i", O: "dog", P: "walk" });
    expect(v.ok).toBe(true);
    expect(v.hint).toBeNull();
  });

  it("flags a missing slot with an inline hint", () => {
    const v = validateEventForm("V(S,O)", { S: "i", P: "walk" });
    expect(v.ok).toBe(false);
    expect(v.missing).toEqual(["O"]);
    expect(v.hint).toContain("Object");
  });

  it("treats whitespace-only input as missing", () => {
    const v = validateEventForm("V(S)", { S: "   ", P: "walk" });
    expect(v.missing).toEqual(["S"]);
  });

  it("flags extra slots", () => {
    const v = validateEventForm("V(S)", { S: "i", O: "dog", P: "walk" });
    expect(v.ok).toBe(false);
    expect(v.extras).toEqual(["O"]);
  });

  it("rejects unknown event types", () => {
    const v = validateEventForm("V(Q)", { S: "i" });
    expect(v.ok).toBe(false);
    expect(v.hint).toContain("unknown event type");
  });
});

describe("slotsForSubmit", () => {
  it("trims and drops roles the type does not use", () => {
    const slots = slotsForSubmit("V(S)", { S: " i ", O: "dog", P: "walk" });
    expect(slots).toEqual({ S: "i", P: "walk" });
  });
});
