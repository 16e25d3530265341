// Client-side session state: the user's requirement list plus caching and
// staleness control. No constraint logic lives here; the server is the only
// source of truth for what is satisfiable.

import type { Requirement, SolveResponse, Value, WhatIfResponse } from "./api.js";

export type TargetKey = string;

export function targetKey(req: Requirement): TargetKey {
  if (req.property !== undefined && req.value !== undefined) {
    return `${req.component}.${req.property}=${JSON.stringify(req.value)}`;
  }
  return req.component;
}

export function cellKey(component: string, property: string): string {
  return `${component}|${property}`;
}

export class SessionState {
  instanceId: string | null = null;
  /** ordered user requirements, unique by target */
  requirements: Requirement[] = [];
  lastSolve: SolveResponse | null = null;
  /**
   * Monotonically increasing sequence; bumped whenever the requirement set
   * (or the instance) changes. Responses tagged with an older sequence are
   * stale and must be ignored.
   */
  version = 0;

  private whatifCache = new Map<string, WhatIfResponse>();

  setInstance(id: string | null): void {
    this.instanceId = id;
    this.requirements = [];
    this.lastSolve = null;
    this.whatifCache.clear();
    this.version += 1;
  }

  private bump(): void {
    this.whatifCache.clear();
    this.version += 1;
  }

  /**
   * Toggle a requirement: same target and polarity removes it; same target
   * with the other polarity flips it; otherwise it is appended.
   */
  toggle(req: Requirement): void {
    const key = targetKey(req);
    const existing = this.requirements.find((r) => targetKey(r) === key);
    if (existing && existing.polarity === req.polarity) {
      this.requirements = this.requirements.filter((r) => targetKey(r) !== key);
    } else if (existing) {
      this.requirements = this.requirements.map((r) =>
        targetKey(r) === key ? req : r,
      );
    } else {
      this.requirements = [...this.requirements, req];
    }
    this.bump();
  }

  /**
   * Pick a value for one cell: replaces any previous requirement on the
   * same (component, property) cell with (req, component.property=value).
   */
  pickValue(component: string, property: string, value: Value): void {
    const prefix = `${component}.${property}=`;
    this.requirements = this.requirements.filter(
      (r) => !targetKey(r).startsWith(prefix),
    );
    this.requirements = [
      ...this.requirements,
      { polarity: "req", component, property, value },
    ];
    this.bump();
  }

  clearCell(component: string, property: string): void {
    const prefix = `${component}.${property}=`;
    const before = this.requirements.length;
    this.requirements = this.requirements.filter(
      (r) => !targetKey(r).startsWith(prefix),
    );
    if (this.requirements.length !== before) {
      this.bump();
    }
  }

  polarityOf(component: string): "req" | "nreq" | null {
    const found = this.requirements.find(
      (r) => r.property === undefined && r.component === component,
    );
    return found ? found.polarity : null;
  }

  pickedValue(component: string, property: string): Value | undefined {
    const prefix = `${component}.${property}=`;
    const found = this.requirements.find((r) => targetKey(r).startsWith(prefix));
    return found?.value;
  }

  /** Accept a solve response only if nothing changed since it was issued. */
  acceptSolve(version: number, response: SolveResponse): boolean {
    if (version !== this.version) {
      return false;
    }
    this.lastSolve = response;
    return true;
  }

  cachedWhatif(component: string, property: string): WhatIfResponse | undefined {
    return this.whatifCache.get(cellKey(component, property));
  }

  /** Cache a what-if response; stale responses are dropped. */
  acceptWhatif(
    version: number,
    component: string,
    property: string,
    response: WhatIfResponse,
  ): boolean {
    if (version !== this.version) {
      return false;
    }
    this.whatifCache.set(cellKey(component, property), response);
    return true;
  }
}
