// Pure HTML renderers: every function maps state to a string, no DOM access.
// app.ts mounts the strings and wires events via delegation.

import { suggestValue, valueLabel, stepGap } from "./suggest.js";
import { cellKey, findCell, type ViewState } from "./state.js";
import type {
  CategoryInfo,
  CellDelta,
  CellView,
  Diagnostic,
  Level,
  MainTaskInfo,
  ModelView,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

// Shading bucket per scale point, lightest (0.1) to darkest (0.9).
export function valueBucket(value: number | null): string {
  if (value === null) {
    return "v-na";
  }
  return `v-${Math.round(value * 10).toString().padStart(2, "0")}`;
}

function levelPattern(cell: CellView, task: MainTaskInfo): string {
  if (!cell.levels) {
    return "";
  }
  return task.subtasks
    .map((s) => cell.levels?.[s.id])
    .filter((l): l is Level => Boolean(l))
    .join("/");
}

function deltaClass(before: number | null, after: number | null): string {
  if (before === null || after === null || before === after) {
    return "delta-none";
  }
  const steps = stepGap(before, after);
  return after > before ? `delta-up-${steps}` : `delta-down-${steps}`;
}

export function renderCell(
  cell: CellView,
  task: MainTaskInfo,
  state: ViewState,
  compareCell?: CellView,
): string {
  const key = cellKey(cell.category, cell.task);
  const classes = ["cell"];
  const pending = state.pending[key];
  if (cell.applicability === "not_applicable") {
    classes.push("cell-na");
    return (
      `<td class="${classes.join(" ")}" data-cell="${key}">` +
      `<span class="na">N/A</span>` +
      `<span class="rationale" title="${escapeHtml(cell.rationale)}">&#9432;</span></td>`
    );
  }
  classes.push(valueBucket(cell.effective));
  if (pending) {
    classes.push("cell-pending");
  }
  if (state.selected && cellKey(state.selected.category, state.selected.task) === key) {
    classes.push("cell-selected");
  }
  if (compareCell) {
    classes.push(deltaClass(compareCell.effective, cell.effective));
  }
  const overridden =
    cell.override !== null && cell.suggested !== null && cell.override !== cell.suggested;
  const badge = overridden ? `<span class="badge" title="manual override">&#9998;</span>` : "";
  const compareNote =
    compareCell && compareCell.effective !== cell.effective
      ? `<span class="compare-from">${compareCell.effective?.toFixed(1) ?? "N/A"} &rarr;</span>`
      : "";
  return (
    `<td class="${classes.join(" ")}" data-cell="${key}">` +
    `${compareNote}<span class="value">${cell.effective?.toFixed(1) ?? ""}</span>${badge}` +
    `<span class="levels">${levelPattern(cell, task)}</span></td>`
  );
}

export function renderMatrix(
  model: ModelView,
  categories: CategoryInfo[],
  tasks: MainTaskInfo[],
  state: ViewState,
  compare?: ModelView | null,
): string {
  const header = tasks.map((t) => `<th>${escapeHtml(t.name)}</th>`).join("");
  const rows = categories
    .map((category) => {
      const cells = tasks
        .map((task) => {
          const cell = findCell(model, category.id, task.id);
          if (!cell) {
            return `<td class="cell cell-missing"></td>`;
          }
          const compareCell = compare ? findCell(compare, category.id, task.id) : undefined;
          return renderCell(cell, task, state, compareCell);
        })
        .join("");
      return (
        `<tr><th class="row-head">${escapeHtml(category.label)} ` +
        `${escapeHtml(category.short_name)}</th>${cells}</tr>`
      );
    })
    .join("");
  return (
    `<table class="matrix"><thead><tr><th>${escapeHtml(model.name)}</th>${header}</tr></thead>` +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderEditor(cell: CellView, task: MainTaskInfo, state: ViewState): string {
  if (cell.applicability === "not_applicable") {
    return (
      `<div class="editor"><h3>${escapeHtml(task.name)}: not applicable</h3>` +
      `<p class="na-note">Only the rationale of an N/A cell can be edited.</p>` +
      `<textarea data-field="rationale">${escapeHtml(cell.rationale)}</textarea>` +
      `<button data-action="apply">Apply</button></div>`
    );
  }
  const pending = state.pending[cellKey(cell.category, cell.task)];
  const currentLevels = { ...(cell.levels ?? {}), ...(pending?.body.levels ?? {}) };
  const selects = task.subtasks
    .map((subtask) => {
      const current = currentLevels[subtask.id] ?? "I";
      const options = (["I", "IE", "EI", "E"] as Level[])
        .map(
          (level) =>
            `<option value="${level}"${level === current ? " selected" : ""}>${level}</option>`,
        )
        .join("");
      return (
        `<label>${escapeHtml(subtask.name)} ` +
        `<select data-subtask="${escapeHtml(subtask.id)}">${options}</select></label>`
      );
    })
    .join("");
  const provisional = suggestValue(
    task.subtasks.map((s) => currentLevels[s.id] ?? "I"),
  );
  const overrideValue = pending?.body.override ?? cell.override;
  const overrideOptions = ["", "0.1", "0.3", "0.5", "0.7", "0.9"]
    .map((v) => {
      const selected = v === (overrideValue?.toFixed(1) ?? "") ? " selected" : "";
      return `<option value="${v}"${selected}>${v || "(none)"}</option>`;
    })
    .join("");
  const deviation =
    overrideValue != null && stepGap(overrideValue, provisional) > 1
      ? `<p class="warn">Override is ${stepGap(overrideValue, provisional)} scale steps from the suggestion.</p>`
      : "";
  return (
    `<div class="editor"><h3>${escapeHtml(task.name)}</h3>` +
    `<div class="level-grid">${selects}</div>` +
    `<p>Provisional suggestion: <strong data-provisional>${provisional.toFixed(1)}</strong> ` +
    `(${valueLabel(provisional)}) &mdash; the server-confirmed value wins.</p>` +
    `<label>Override <select data-field="override">${overrideOptions}</select></label>` +
    deviation +
    `<label>Rationale <textarea data-field="rationale">${escapeHtml(cell.rationale)}</textarea></label>` +
    `<button data-action="apply">Apply</button> ` +
    `<button data-action="discard">Discard</button></div>`
  );
}

export function renderConflict(state: ViewState): string {
  if (!state.conflict) {
    return "";
  }
  return (
    `<div class="conflict-dialog" role="dialog">` +
    `<h3>Plan changed on the server</h3>` +
    `<p>Another tab saved revision ${state.conflict.serverRevision} while you were editing. ` +
    `The grid has been reloaded; your edit is kept for review.</p>` +
    `<button data-action="conflict-dismiss">Review my edit</button></div>`
  );
}

export function renderDiagnostics(diagnostics: Diagnostic[]): string {
  if (diagnostics.length === 0) {
    return "";
  }
  const items = diagnostics
    .map(
      (d) =>
        `<li class="diag-${d.severity}">[${escapeHtml(d.code)}] ${escapeHtml(d.message)}</li>`,
    )
    .join("");
  return `<ul class="diagnostics">${items}</ul>`;
}

export function renderSowPane(markdown: string, stale: boolean): string {
  const staleBanner = stale ? `<div class="stale">refreshing&hellip;</div>` : "";
  return `<div class="sow-pane">${staleBanner}<pre>${escapeHtml(markdown)}</pre></div>`;
}

export function renderDeltaDetail(delta: CellDelta): string {
  if (!delta.changed) {
    return `<p>unchanged</p>`;
  }
  const levels = delta.levels
    .map(
      (change) =>
        `<li>${escapeHtml(change.subtask)}: ${change.before ?? "-"} &rarr; ${change.after ?? "-"}</li>`,
    )
    .join("");
  const effective = delta.effective
    ? `<p>${delta.effective[0]?.toFixed(1) ?? "N/A"} &rarr; ${delta.effective[1]?.toFixed(1) ?? "N/A"}</p>`
    : "";
  return `${effective}<ul>${levels}</ul>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="error-banner">${escapeHtml(message)}</div>`;
}
