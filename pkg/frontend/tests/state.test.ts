import { describe, expect, it } from "vitest";

import type { Requirement, SolveResponse, WhatIfResponse } from "../src/api.js";
import { SessionState, targetKey } from "../src/state.js";

const reqBasket: Requirement = { polarity: "req", component: "basket" };
const nreqBasket: Requirement = { polarity: "nreq", component: "basket" };
const reqSize26: Requirement = {
  polarity: "req",
  component: "front_wheel",
  property: "size",
  value: 26,
};

const someSolve: SolveResponse = { status: "SAT", solutions: [], violations: [] };
const someWhatif: WhatIfResponse = {
  values: ["w2"],
  mayBeAbsent: false,
  mustBePresent: true,
};

describe("targetKey", () => {
  it("separates component and property-value targets", () => {
    expect(targetKey(reqBasket)).toBe("basket");
    expect(targetKey(reqSize26)).toBe("front_wheel.size=26");
  });

  it("keeps string and number values distinct", () => {
    const asString: Requirement = { ...reqSize26, value: "26" };
    expect(targetKey(asString)).not.toBe(targetKey(reqSize26));
  });
});

describe("SessionState.toggle", () => {
  it("is an involution: toggling twice restores the initial state", () => {
    const state = new SessionState();
    state.toggle(reqBasket);
    expect(state.requirements).toEqual([reqBasket]);
    state.toggle(reqBasket);
    expect(state.requirements).toEqual([]);
  });

  it("never holds duplicate targets", () => {
    const state = new SessionState();
    state.toggle(reqBasket);
    state.toggle(reqSize26);
    state.toggle(reqBasket);
    const keys = state.requirements.map(targetKey);
    expect(new Set(keys).size).toBe(keys.length);
    expect(state.requirements).toEqual([reqSize26]);
  });

  it("flips polarity in place for the same target", () => {
    const state = new SessionState();
    state.toggle(reqBasket);
    state.toggle(nreqBasket);
    expect(state.requirements).toEqual([nreqBasket]);
  });
});

describe("SessionState.pickValue", () => {
  it("replaces a previous pick on the same cell", () => {
    const state = new SessionState();
    state.pickValue("front_wheel", "size", 26);
    state.pickValue("front_wheel", "size", 28);
    expect(state.requirements).toEqual([
      { polarity: "req", component: "front_wheel", property: "size", value: 28 },
    ]);
    expect(state.pickedValue("front_wheel", "size")).toBe(28);
  });

  it("leaves other cells alone", () => {
    const state = new SessionState();
    state.pickValue("front_wheel", "size", 26);
    state.pickValue("frame", "material", "aluminum");
    expect(state.requirements).toHaveLength(2);
    state.clearCell("front_wheel", "size");
    expect(state.requirements).toEqual([
      { polarity: "req", component: "frame", property: "material", value: "aluminum" },
    ]);
  });
});

describe("what-if cache invalidation", () => {
  it("drops every cached entry when requirements change", () => {
    const state = new SessionState();
    state.acceptWhatif(state.version, "front_wheel", "type", someWhatif);
    expect(state.cachedWhatif("front_wheel", "type")).toEqual(someWhatif);
    state.toggle(reqBasket);
    expect(state.cachedWhatif("front_wheel", "type")).toBeUndefined();
  });

  it("drops entries when the instance changes", () => {
    const state = new SessionState();
    state.acceptWhatif(state.version, "front_wheel", "type", someWhatif);
    state.setInstance("other");
    expect(state.cachedWhatif("front_wheel", "type")).toBeUndefined();
  });
});

describe("stale responses", () => {
  it("rejects a solve response issued before a requirement change", () => {
    const state = new SessionState();
    const issued = state.version;
    state.toggle(reqBasket); // supersedes the in-flight request
    expect(state.acceptSolve(issued, someSolve)).toBe(false);
    expect(state.lastSolve).toBeNull();
  });

  it("accepts the response for the current version", () => {
    const state = new SessionState();
    state.toggle(reqBasket);
    expect(state.acceptSolve(state.version, someSolve)).toBe(true);
    expect(state.lastSolve).toEqual(someSolve);
  });

  it("never caches a stale what-if response", () => {
    const state = new SessionState();
    const issued = state.version;
    state.toggle(reqBasket);
    expect(state.acceptWhatif(issued, "front_wheel", "type", someWhatif)).toBe(false);
    expect(state.cachedWhatif("front_wheel", "type")).toBeUndefined();
  });

  it("versions increase monotonically", () => {
    const state = new SessionState();
    const seen = [state.version];
    state.toggle(reqBasket);
    seen.push(state.version);
    state.pickValue("front_wheel", "size", 26);
    seen.push(state.version);
    state.setInstance("id");
    seen.push(state.version);
    const sorted = [...seen].sort((a, b) => a - b);
    expect(seen).toEqual(sorted);
    expect(new Set(seen).size).toBe(seen.length);
  });
});
