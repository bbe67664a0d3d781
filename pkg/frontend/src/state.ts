// View state and its pure transitions. Rendering is a function of this
// state plus the fetched models; all mutation flows through these helpers so
// the PATCH/conflict protocol stays in one place.

import type { CellEditBody, CellView, Diagnostic, ModelView } from "./types.js";

export interface PendingEdit {
  category: string;
  task: string;
  body: CellEditBody;
}

export interface ConflictInfo {
  serverRevision: number;
  key: string;
}

export interface ViewState {
  activeModel: string;
  selected: { category: string; task: string } | null;
  pending: Record<string, PendingEdit>;
  revision: number;
  compareWith: string | null;
  conflict: ConflictInfo | null;
  diagnostics: Diagnostic[];
  sowStale: boolean;
}

export function cellKey(category: string, task: string): string {
  return `${category}:${task}`;
}

export function initialState(activeModel: string, revision: number): ViewState {
  return {
    activeModel,
    selected: null,
    pending: {},
    revision,
    compareWith: null,
    conflict: null,
    diagnostics: [],
    sowStale: false,
  };
}

export function selectCell(state: ViewState, category: string, task: string): ViewState {
  return { ...state, selected: { category, task } };
}

export function clearSelection(state: ViewState): ViewState {
  return { ...state, selected: null };
}

export function switchModel(state: ViewState, modelId: string): ViewState {
  // Pending edits belong to the model they were staged on; discard on switch.
  return { ...state, activeModel: modelId, pending: {}, selected: null, conflict: null };
}

export function setCompare(state: ViewState, modelId: string | null): ViewState {
  return { ...state, compareWith: modelId };
}

export function stageEdit(state: ViewState, edit: PendingEdit): ViewState {
  const key = cellKey(edit.category, edit.task);
  return { ...state, pending: { ...state.pending, [key]: edit }, diagnostics: [] };
}

export function discardPending(state: ViewState, key: string): ViewState {
  const pending = { ...state.pending };
  delete pending[key];
  return { ...state, pending, conflict: null, diagnostics: [] };
}

// Successful PATCH: the server confirmed the edit, so the pending entry is
// consumed and the revision advances to the server's.
export function patchSucceeded(
  state: ViewState,
  key: string,
  revision: number,
  diagnostics: Diagnostic[],
): ViewState {
  const pending = { ...state.pending };
  delete pending[key];
  return { ...state, pending, revision, diagnostics, conflict: null, sowStale: true };
}

// 409: keep the user's edit for review, remember the server revision so the
// grid can be refetched; nothing is lost and nothing was applied.
export function patchConflicted(state: ViewState, key: string, serverRevision: number): ViewState {
  return { ...state, conflict: { serverRevision, key } };
}

// 422: the edit stays pending and the server's diagnostics are surfaced.
export function patchRejected(state: ViewState, key: string, diagnostics: Diagnostic[]): ViewState {
  return { ...state, diagnostics };
}

// After the grid was refetched at the server's revision, the conflict is
// resolved; the pending edit stays staged for the user to re-apply or drop.
export function conflictReloaded(state: ViewState, revision: number): ViewState {
  return { ...state, revision, conflict: null };
}

export function sowRefreshed(state: ViewState): ViewState {
  return { ...state, sowStale: false };
}

export function findCell(model: ModelView, category: string, task: string): CellView | undefined {
  return model.cells.find((c) => c.category === category && c.task === task);
}

// True when an edit would change nothing on the server; such edits are not
// sent at all.
export function isNoopEdit(cell: CellView, body: CellEditBody): boolean {
  for (const [subtask, level] of Object.entries(body.levels ?? {})) {
    if (cell.levels?.[subtask] !== level) {
      return false;
    }
  }
  if (body.override !== undefined && body.override !== cell.override) {
    return false;
  }
  if (body.clear_override && cell.override !== null) {
    return false;
  }
  if (body.rationale !== undefined && body.rationale !== cell.rationale) {
    return false;
  }
  return true;
}
