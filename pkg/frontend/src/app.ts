// DOM wiring: the only module that touches the document. All state changes
// funnel through SessionState; all data comes from ApiClient responses.

import { ApiClient, ApiError } from "./api.js";
import type { InstanceSummary, Requirement, Value } from "./api.js";
import { EXAMPLE_INSTANCE } from "./example.js";
import {
  conflictAtomsOf,
  renderChips,
  renderErrorPanel,
  renderSolutionPanel,
  renderStatusBadge,
  renderTree,
  renderWarnings,
} from "./render.js";
import { SessionState } from "./state.js";
import { buildComponentTree } from "./tree.js";

const api = new ApiClient("");
const state = new SessionState();

let summary: InstanceSummary | null = null;
let solvePending = false;
let openPicker: { component: string; property: string } | null = null;

const el = (id: string): HTMLElement => {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing element #${id}`);
  }
  return found;
};

function redraw(): void {
  el("status").innerHTML = renderStatusBadge(state.lastSolve, solvePending);
  el("chips").innerHTML = renderChips(
    summary ? summary.userRequirements : [],
    state,
    conflictAtomsOf(state.lastSolve),
  );
  el("solution").innerHTML = renderSolutionPanel(state.lastSolve);
  el("tree").innerHTML = summary
    ? renderTree(
        buildComponentTree(summary.components, summary.partonomy),
        summary,
        state,
        openPicker,
      )
    : `<p class="muted">no instance loaded</p>`;
}

function showError(error: unknown): void {
  if (error instanceof ApiError) {
    el("messages").innerHTML = renderErrorPanel(
      error.code,
      error.message,
      error.position?.line,
      error.position?.column,
    );
  } else {
    el("messages").innerHTML = renderErrorPanel("NETWORK", String(error));
  }
}

async function resolve(): Promise<void> {
  if (!state.instanceId) {
    return;
  }
  const version = state.version;
  solvePending = true;
  redraw();
  try {
    const response = await api.solve(state.instanceId, state.requirements);
    if (state.acceptSolve(version, response)) {
      solvePending = false;
      redraw();
    }
  } catch (error) {
    solvePending = false;
    showError(error);
    redraw();
  }
}

async function openWhatif(component: string, property: string): Promise<void> {
  if (!state.instanceId) {
    return;
  }
  openPicker = { component, property };
  redraw();
  if (state.cachedWhatif(component, property)) {
    return;
  }
  const version = state.version;
  try {
    const response = await api.whatif(
      state.instanceId,
      state.requirements,
      component,
      property,
    );
    if (state.acceptWhatif(version, component, property, response)) {
      redraw();
    }
  } catch (error) {
    showError(error);
  }
}

async function loadInstance(): Promise<void> {
  const source = (el("source") as HTMLTextAreaElement).value;
  el("messages").innerHTML = "";
  try {
    const created = await api.createInstance(source);
    el("messages").innerHTML = renderWarnings(created.warnings);
    summary = await api.getInstance(created.id);
    state.setInstance(created.id);
    openPicker = null;
    redraw();
    await resolve();
  } catch (error) {
    // keep the previous instance and panels untouched on failure
    showError(error);
  }
}

function requirementFromDataset(dataset: DOMStringMap): Requirement {
  const requirement: Requirement = {
    polarity: dataset.polarity === "nreq" ? "nreq" : "req",
    component: dataset.component ?? "",
  };
  if (dataset.property !== undefined && dataset.value !== undefined) {
    requirement.property = dataset.property;
    requirement.value = JSON.parse(dataset.value) as Value;
  }
  return requirement;
}

function onClick(event: Event): void {
  const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
  if (!target) {
    return;
  }
  const { action, component, property } = target.dataset;
  if (action === "toggle") {
    state.toggle(requirementFromDataset(target.dataset));
    openPicker = null;
    redraw();
    void resolve();
  } else if (action === "open-picker" && component && property) {
    if (openPicker && openPicker.component === component && openPicker.property === property) {
      openPicker = null;
      redraw();
      return;
    }
    void openWhatif(component, property);
  } else if (action === "pick" && component && property && target.dataset.value) {
    state.pickValue(component, property, JSON.parse(target.dataset.value) as Value);
    openPicker = null;
    redraw();
    void resolve();
  } else if (action === "clear-pick" && component && property) {
    state.clearCell(component, property);
    openPicker = null;
    redraw();
    void resolve();
  }
}

export function start(): void {
  (el("source") as HTMLTextAreaElement).value = EXAMPLE_INSTANCE;
  el("load").addEventListener("click", () => void loadInstance());
  document.addEventListener("click", onClick);
  redraw();
}

start();
