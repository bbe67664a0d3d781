// Bootstrap and event wiring. The server is the single source of truth:
// edits are staged locally, sent as PATCH with the last-known revision, and
// reconciled from the response (or rolled back on 409/422).

import { ApiClient, ApiError } from "./api.js";
import {
  cellKey,
  clearSelection,
  conflictReloaded,
  discardPending,
  findCell,
  initialState,
  isNoopEdit,
  patchConflicted,
  patchRejected,
  patchSucceeded,
  selectCell,
  setCompare,
  sowRefreshed,
  stageEdit,
  switchModel,
  type ViewState,
} from "./state.js";
import {
  renderConflict,
  renderDeltaDetail,
  renderDiagnostics,
  renderEditor,
  renderErrorBanner,
  renderMatrix,
  renderSowPane,
} from "./render.js";
import type { CellEditBody, DiffView, Level, ModelView, PlanInfo } from "./types.js";

export class WorkshopApp {
  state: ViewState;
  model: ModelView | null = null;
  compareModel: ModelView | null = null;
  diff: DiffView | null = null;
  sowMarkdown = "";
  error = "";

  constructor(
    private api: ApiClient,
    private plan: PlanInfo,
    private root: HTMLElement,
  ) {
    const first = plan.modelIds[0]?.id ?? "";
    this.state = initialState(first, plan.revision);
  }

  static async boot(root: HTMLElement, baseUrl = ""): Promise<WorkshopApp> {
    const api = new ApiClient(baseUrl);
    const plan = await api.getPlanInfo();
    const app = new WorkshopApp(api, plan, root);
    await app.reloadModel();
    await app.refreshSow();
    app.wire();
    app.render();
    return app;
  }

  async reloadModel(): Promise<void> {
    try {
      this.model = await this.api.getModel(this.state.activeModel);
      this.state = { ...this.state, revision: this.model.revision };
      if (this.state.compareWith && this.state.compareWith !== this.state.activeModel) {
        this.compareModel = await this.api.getModel(this.state.compareWith);
        this.diff = await this.api.getDiff(this.state.compareWith, this.state.activeModel);
      } else {
        this.compareModel = null;
        this.diff = null;
      }
      this.error = "";
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    }
  }

  async refreshSow(): Promise<void> {
    try {
      const sow = await this.api.getSow(this.state.activeModel);
      this.sowMarkdown = sow.markdown;
      this.state = sowRefreshed(this.state);
    } catch (err) {
      this.error = err instanceof Error ? err.message : String(err);
    }
  }

  collectEdit(editor: HTMLElement): CellEditBody {
    const body: CellEditBody = {};
    const levels: Record<string, Level> = {};
    editor.querySelectorAll<HTMLSelectElement>("select[data-subtask]").forEach((select) => {
      levels[select.dataset.subtask as string] = select.value as Level;
    });
    if (Object.keys(levels).length > 0) {
      body.levels = levels;
    }
    const override = editor.querySelector<HTMLSelectElement>("select[data-field=override]");
    if (override) {
      if (override.value === "") {
        body.clear_override = true;
      } else {
        body.override = Number(override.value);
      }
    }
    const rationale = editor.querySelector<HTMLTextAreaElement>("textarea[data-field=rationale]");
    if (rationale) {
      body.rationale = rationale.value;
    }
    return body;
  }

  async applyEdit(category: string, task: string, body: CellEditBody): Promise<void> {
    const key = cellKey(category, task);
    const current = this.model ? findCell(this.model, category, task) : undefined;
    if (current && isNoopEdit(current, body)) {
      this.state = clearSelection(this.state);
      this.render();
      return;
    }
    this.state = stageEdit(this.state, { category, task, body });
    this.render(); // optimistic: the pending marker shows immediately
    try {
      const response = await this.api.patchCell(
        this.state.activeModel,
        category,
        task,
        body,
        this.state.revision,
      );
      this.state = patchSucceeded(this.state, key, response.revision, response.diagnostics);
      if (this.model) {
        this.model = {
          ...this.model,
          revision: response.revision,
          cells: this.model.cells.map((c) =>
            c.category === category && c.task === task ? response.cell : c,
          ),
        };
      }
      this.render();
      await this.refreshSow();
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.state = patchConflicted(this.state, key, err.currentRevision ?? this.state.revision);
        await this.reloadModel(); // roll back to the server's state
        this.state = { ...this.state, conflict: this.state.conflict };
      } else if (err instanceof ApiError && err.status === 422) {
        this.state = patchRejected(this.state, key, err.diagnostics);
        await this.reloadModel();
      } else {
        this.error = err instanceof Error ? err.message : String(err);
      }
    }
    this.render();
  }

  wire(): void {
    this.root.addEventListener("click", (event) => {
      const target = event.target as HTMLElement;
      const cell = target.closest<HTMLElement>("[data-cell]");
      if (cell?.dataset.cell) {
        const [category, task] = cell.dataset.cell.split(":");
        this.state = selectCell(this.state, category, task);
        this.render();
        return;
      }
      if (target.dataset.action === "apply" && this.state.selected) {
        const editor = target.closest<HTMLElement>(".editor");
        if (editor) {
          const { category, task } = this.state.selected;
          void this.applyEdit(category, task, this.collectEdit(editor));
        }
        return;
      }
      if (target.dataset.action === "discard" && this.state.selected) {
        const { category, task } = this.state.selected;
        this.state = discardPending(this.state, cellKey(category, task));
        this.state = clearSelection(this.state);
        this.render();
        return;
      }
      if (target.dataset.action === "conflict-dismiss") {
        this.state = conflictReloaded(this.state, this.model?.revision ?? this.state.revision);
        this.render();
      }
    });
    this.root.addEventListener("change", (event) => {
      const target = event.target as HTMLSelectElement;
      if (target.dataset.role === "model-select") {
        this.state = switchModel(this.state, target.value);
        void this.reloadModel().then(() => this.refreshSow().then(() => this.render()));
      }
      if (target.dataset.role === "compare-select") {
        this.state = setCompare(this.state, target.value || null);
        void this.reloadModel().then(() => this.render());
      }
    });
  }

  render(): void {
    if (!this.model) {
      this.root.innerHTML = renderErrorBanner(this.error || "loading…");
      return;
    }
    const modelOptions = this.plan.modelIds
      .map(
        (m) =>
          `<option value="${m.id}"${m.id === this.state.activeModel ? " selected" : ""}>${m.name}</option>`,
      )
      .join("");
    const compareOptions = ["", ...this.plan.modelIds.map((m) => m.id)]
      .map(
        (id) =>
          `<option value="${id}"${id === (this.state.compareWith ?? "") ? " selected" : ""}>${id || "(no comparison)"}</option>`,
      )
      .join("");
    let editor = "";
    if (this.state.selected) {
      const cell = findCell(this.model, this.state.selected.category, this.state.selected.task);
      const task = this.plan.tasks.find((t) => t.id === this.state.selected?.task);
      if (cell && task) {
        editor = renderEditor(cell, task, this.state);
      }
      if (this.diff) {
        const delta = this.diff.deltas.find(
          (d) =>
            d.category === this.state.selected?.category && d.task === this.state.selected?.task,
        );
        if (delta) {
          editor =
            `<div class="delta-detail"><h3>Change vs ${this.state.compareWith}</h3>` +
            renderDeltaDetail(delta) +
            `</div>` +
            editor;
        }
      }
    }
    this.root.innerHTML =
      (this.error ? renderErrorBanner(this.error) : "") +
      `<header><h1>${this.plan.planName}</h1>` +
      `<label>Model <select data-role="model-select">${modelOptions}</select></label> ` +
      `<label>Compare with <select data-role="compare-select">${compareOptions}</select></label> ` +
      `<span class="revision">revision ${this.state.revision}</span></header>` +
      renderConflict(this.state) +
      renderMatrix(this.model, this.plan.categories, this.plan.tasks, this.state, this.compareModel) +
      renderDiagnostics(this.state.diagnostics) +
      editor +
      renderSowPane(this.sowMarkdown, this.state.sowStale);
  }
}

declare global {
  interface Window {
    SOCPLAN_API?: string;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void WorkshopApp.boot(
    document.getElementById("app") as HTMLElement,
    window.SOCPLAN_API ?? "",
  );
}
