// Pure HTML builders. Every piece of solver data rendered here is taken
// verbatim from a service response body; the client adds only layout.

import type {
  InstanceSummary,
  Requirement,
  SolveResponse,
  Value,
  Warning,
  WhatIfResponse,
} from "./api.js";
import { SessionState } from "./state.js";
import type { TreeNode } from "./tree.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

const esc = (value: Value): string => escapeHtml(String(value));

/** JSON-encode a value for a data attribute (keeps string/number apart). */
const attrJson = (value: Value): string => `"${escapeHtml(JSON.stringify(value))}"`;

/** The wire text of a requirement target, matching the server's atom syntax. */
export function targetAtomText(req: Requirement): string {
  if (req.property !== undefined && req.value !== undefined) {
    return `(${req.component},${req.property},${req.value})`;
  }
  return req.component;
}

export function requirementLabel(req: Requirement): string {
  const verb = req.polarity === "req" ? "require" : "forbid";
  if (req.property !== undefined && req.value !== undefined) {
    return `${verb} ${req.component}.${req.property} = ${req.value}`;
  }
  return `${verb} ${req.component}`;
}

export function renderWarnings(warnings: Warning[]): string {
  if (!warnings.length) {
    return "";
  }
  const items = warnings
    .map((w) => {
      const pos = w.position ? ` (line ${w.position.line}:${w.position.column})` : "";
      return `<li><code>${escapeHtml(w.code)}</code> ${escapeHtml(w.message)}${pos}</li>`;
    })
    .join("");
  return `<ul class="warnings">${items}</ul>`;
}

export function renderErrorPanel(code: string, message: string, line?: number, column?: number): string {
  const pos = line !== undefined ? ` at line ${line}:${column}` : "";
  return `<div class="error-panel"><code>${escapeHtml(code)}</code>${escapeHtml(pos)}: ${escapeHtml(message)}</div>`;
}

export function renderStatusBadge(solve: SolveResponse | null, pending: boolean): string {
  if (pending) {
    return `<span class="badge pending">solving…</span>`;
  }
  if (!solve) {
    return `<span class="badge idle">no instance</span>`;
  }
  const cls = solve.status === "UNSAT" ? "unsat" : solve.status === "SAT" || solve.status === "CAPPED" ? "sat" : "warn";
  return `<span class="badge ${cls}">${escapeHtml(solve.status)}</span>`;
}

export function renderChips(
  instanceRequirements: Requirement[],
  state: SessionState,
  conflictAtoms: Set<string>,
): string {
  const chip = (req: Requirement, fixed: boolean): string => {
    const conflicted = conflictAtoms.has(targetAtomText(req)) ? " conflict" : "";
    const fixedCls = fixed ? " fixed" : "";
    const remove = fixed
      ? ""
      : `<button class="chip-x" data-action="toggle" data-polarity="${req.polarity}" ` +
        `data-component="${esc(req.component)}"` +
        (req.property !== undefined && req.value !== undefined
          ? ` data-property="${esc(req.property)}" data-value=${attrJson(req.value)}`
          : "") +
        `>×</button>`;
    return `<span class="chip${fixedCls}${conflicted}">${escapeHtml(requirementLabel(req))}${remove}</span>`;
  };
  const fixedChips = instanceRequirements.map((r) => chip(r, true)).join("");
  const userChips = state.requirements.map((r) => chip(r, false)).join("");
  return fixedChips + userChips || `<span class="muted">no requirements yet</span>`;
}

function renderPicker(
  component: string,
  property: string,
  whatif: WhatIfResponse | undefined,
  picked: Value | undefined,
  isOpen: boolean,
): string {
  const pickedText = picked !== undefined ? ` = ${esc(picked)}` : "";
  const head =
    `<button class="cell" data-action="open-picker" data-component="${esc(component)}" ` +
    `data-property="${esc(property)}">${esc(property)}${pickedText}</button>`;
  if (!isOpen) {
    return `<span class="picker">${head}</span>`;
  }
  if (!whatif) {
    return `<span class="picker open">${head}<span class="options muted">loading…</span></span>`;
  }
  const options = whatif.values
    .map((value) => {
      const active = value === picked ? " active" : "";
      return (
        `<button class="option${active}" data-action="pick" data-component="${esc(component)}" ` +
        `data-property="${esc(property)}" data-value=${attrJson(value)}>` +
        `${esc(value)}</button>`
      );
    })
    .join("");
  const clear =
    picked !== undefined
      ? `<button class="option clear" data-action="clear-pick" data-component="${esc(component)}" data-property="${esc(property)}">any</button>`
      : "";
  const note = whatif.values.length ? "" : `<span class="muted">no consistent value</span>`;
  return `<span class="picker open">${head}<span class="options">${options}${clear}${note}</span></span>`;
}

export interface OpenPicker {
  component: string;
  property: string;
}

export function renderTree(
  nodes: TreeNode[],
  summary: InstanceSummary,
  state: SessionState,
  openPicker: OpenPicker | null = null,
): string {
  const domains = new Map<string, { property: string; values: Value[] }[]>();
  for (const cell of summary.domains) {
    const list = domains.get(cell.component) ?? [];
    list.push({ property: cell.property, values: cell.values });
    domains.set(cell.component, list);
  }

  const renderNode = (node: TreeNode): string => {
    const kindBadge = node.kind ? `<span class="kind ${node.kind}">${node.kind}</span>` : "";
    const polarity = state.polarityOf(node.name);
    const reqActive = polarity === "req" ? " active" : "";
    const nreqActive = polarity === "nreq" ? " active" : "";
    const toggles =
      `<button class="toggle req${reqActive}" data-action="toggle" data-polarity="req" ` +
      `data-component="${esc(node.name)}">require</button>` +
      `<button class="toggle nreq${nreqActive}" data-action="toggle" data-polarity="nreq" ` +
      `data-component="${esc(node.name)}">forbid</button>`;
    const pickers = (domains.get(node.name) ?? [])
      .map(({ property }) =>
        renderPicker(
          node.name,
          property,
          state.cachedWhatif(node.name, property),
          state.pickedValue(node.name, property),
          openPicker !== null &&
            openPicker.component === node.name &&
            openPicker.property === property,
        ),
      )
      .join("");
    const children = node.children.length
      ? `<ul>${node.children.map((child) => `<li>${renderNode(child)}</li>`).join("")}</ul>`
      : "";
    return (
      `<div class="component" data-component="${esc(node.name)}">` +
      `<span class="name">${esc(node.name)}</span>${kindBadge}${toggles}${pickers}</div>${children}`
    );
  };

  if (!nodes.length) {
    return `<p class="muted">empty instance: no components</p>`;
  }
  return `<ul class="tree">${nodes.map((n) => `<li>${renderNode(n)}</li>`).join("")}</ul>`;
}

export function conflictAtomsOf(solve: SolveResponse | null): Set<string> {
  const atoms = new Set<string>();
  if (solve) {
    for (const violation of solve.violations) {
      for (const atom of violation.atoms) {
        atoms.add(atom);
      }
    }
  }
  return atoms;
}

export function renderSolutionPanel(solve: SolveResponse | null): string {
  if (!solve) {
    return `<p class="muted">load an instance to configure</p>`;
  }
  if (solve.status === "UNSAT") {
    const items = solve.violations
      .map(
        (v) =>
          `<li><code>${escapeHtml(v.rule)}</code> ${escapeHtml(v.message)}</li>`,
      )
      .join("");
    const list = items
      ? `<ul class="violations">${items}</ul>`
      : `<p>the requirements cannot be satisfied</p>`;
    return `<div class="unsat">${list}</div>`;
  }
  if (!solve.solutions.length) {
    return `<p class="muted">no solution returned</p>`;
  }
  const solution = solve.solutions[0];
  const rows = solution.assignments
    .map(
      (a) =>
        `<tr><td>${esc(a.component)}</td><td>${esc(a.property)}</td><td>${esc(a.value)}</td></tr>`,
    )
    .join("");
  const present = solution.present.map((c) => `<code>${esc(c)}</code>`).join(" ");
  return (
    `<table class="solution"><thead><tr><th>component</th><th>property</th><th>value</th></tr></thead>` +
    `<tbody>${rows}</tbody></table>` +
    `<p class="present">present: ${present || "nothing"}</p>`
  );
}
