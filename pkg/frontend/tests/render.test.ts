import { describe, expect, it } from "vitest";

import { initialState, stageEdit } from "../src/state.js";
import {
  escapeHtml,
  renderConflict,
  renderDiagnostics,
  renderEditor,
  renderMatrix,
  renderSowPane,
  valueBucket,
} from "../src/render.js";
import type { CategoryInfo, CellView, MainTaskInfo, ModelView } from "../src/types.js";

const TASKS: MainTaskInfo[] = [
  {
    id: "siem",
    name: "SIEM",
    subtasks: [
      { id: "Mo", name: "Monitoring" },
      { id: "DC", name: "Data Collection" },
      { id: "S", name: "SEM" },
    ],
  },
  { id: "pentests", name: "Pentests", subtasks: [{ id: "Pl", name: "Planning" }, { id: "Ex", name: "Execution" }] },
];

const CATEGORIES: CategoryInfo[] = [
  { id: "ot", label: "A", name: "Operational Technology", short_name: "OT" },
  { id: "infra", label: "B", name: "Common Infrastructure", short_name: "Infra" },
];

function cell(overrides: Partial<CellView>): CellView {
  return {
    category: "infra",
    task: "siem",
    applicability: "applicable",
    levels: { Mo: "EI", DC: "EI", S: "IE" },
    suggested: 0.5,
    override: 0.7,
    effective: 0.7,
    rationale: "",
    ...overrides,
  };
}

const MODEL: ModelView = {
  revision: 1,
  id: "plan-target",
  name: "Plan target",
  description: "",
  cells: [
    cell({}),
    cell({ category: "infra", task: "pentests", levels: { Pl: "IE", Ex: "E" }, suggested: 0.7, override: null, effective: 0.7 }),
    cell({ category: "ot", task: "siem", levels: { Mo: "I", DC: "I", S: "I" }, suggested: 0.1, override: null, effective: 0.1 }),
    cell({
      category: "ot",
      task: "pentests",
      applicability: "not_applicable",
      levels: null,
      suggested: null,
      override: null,
      effective: null,
      rationale: "physical access needed",
    }),
  ],
};

describe("matrix rendering", () => {
  it("shows value, level pattern, and override badge for an overridden cell", () => {
    const html = renderMatrix(MODEL, CATEGORIES, TASKS, initialState("plan-target", 1));
    expect(html).toContain("0.7");
    expect(html).toContain("EI/EI/IE");
    expect(html).toContain('title="manual override"');
    expect(html).toContain("v-07");
  });

  it("renders N/A cells with styling and no value", () => {
    const html = renderMatrix(MODEL, CATEGORIES, TASKS, initialState("plan-target", 1));
    expect(html).toContain("cell-na");
    expect(html).toContain(">N/A<");
  });

  it("orders level abbreviations by the taxonomy subtask order", () => {
    const shuffled: ModelView = {
      ...MODEL,
      cells: [cell({ levels: { S: "IE", Mo: "EI", DC: "EI" } })],
    };
    const html = renderMatrix(shuffled, CATEGORIES.slice(1), TASKS, initialState("plan-target", 1));
    expect(html).toContain("EI/EI/IE");
  });

  it("gives an all-internal model uniform lightest shading", () => {
    const allI: ModelView = {
      ...MODEL,
      cells: MODEL.cells.map((c) =>
        c.applicability === "applicable"
          ? {
              ...c,
              levels: Object.fromEntries(Object.keys(c.levels ?? {}).map((k) => [k, "I" as const])),
              suggested: 0.1,
              override: null,
              effective: 0.1,
            }
          : c,
      ),
    };
    const html = renderMatrix(allI, CATEGORIES, TASKS, initialState("plan-target", 1));
    expect(html.match(/v-01/g)?.length).toBe(3);
    expect(html).not.toContain("v-07");
  });

  it("marks pending cells and compare deltas", () => {
    let state = initialState("plan-target", 1);
    state = stageEdit(state, { category: "infra", task: "siem", body: { override: 0.9 } });
    const compare: ModelView = {
      ...MODEL,
      cells: MODEL.cells.map((c) =>
        c.category === "infra" && c.task === "siem" ? { ...c, effective: 0.3, override: null } : c,
      ),
    };
    const html = renderMatrix(MODEL, CATEGORIES, TASKS, state, compare);
    expect(html).toContain("cell-pending");
    expect(html).toContain("delta-up-2");
    expect(html).toContain("0.3 &rarr;");
  });
});

describe("editor rendering", () => {
  it("shows the provisional suggestion for the current level pattern", () => {
    const html = renderEditor(cell({}), TASKS[0], initialState("plan-target", 1));
    expect(html).toContain("data-provisional");
    expect(html).toContain("0.5");
    expect(html).toContain("server-confirmed value wins");
  });

  it("warns when the override deviates by more than one step", () => {
    const html = renderEditor(
      cell({ override: 0.9, suggested: 0.3, levels: { Mo: "IE", DC: "IE", S: "I" } }),
      TASKS[0],
      initialState("plan-target", 1),
    );
    expect(html).toContain("scale steps from the suggestion");
  });

  it("restricts N/A cells to rationale edits", () => {
    const html = renderEditor(
      cell({ applicability: "not_applicable", levels: null, rationale: "excluded" }),
      TASKS[1],
      initialState("plan-target", 1),
    );
    expect(html).toContain("not applicable");
    expect(html).not.toContain("data-subtask");
    expect(html).toContain("excluded");
  });
});

describe("panels", () => {
  it("renders the conflict dialog only when a conflict exists", () => {
    const state = initialState("plan-target", 1);
    expect(renderConflict(state)).toBe("");
    const conflicted = { ...state, conflict: { serverRevision: 4, key: "infra:siem" } };
    const html = renderConflict(conflicted);
    expect(html).toContain("conflict-dialog");
    expect(html).toContain("revision 4");
  });

  it("surfaces every diagnostic", () => {
    const html = renderDiagnostics([
      { severity: "warning", code: "override-deviation", path: "p", message: "too far" },
      { severity: "info", code: "override", path: "p", message: "noted" },
    ]);
    expect(html).toContain("override-deviation");
    expect(html).toContain("noted");
  });

  it("shows the stale marker while the SoW refreshes", () => {
    expect(renderSowPane("# Statement of Work", true)).toContain("stale");
    expect(renderSowPane("# Statement of Work", false)).not.toContain("stale");
  });

  it("escapes markup in documents", () => {
    expect(escapeHtml("<b>&</b>")).toBe("&lt;b&gt;&amp;&lt;/b&gt;");
    expect(renderSowPane("<script>alert(1)</script>", false)).not.toContain("<script>");
  });
});

describe("value buckets", () => {
  it("buckets each scale point", () => {
    expect(valueBucket(0.1)).toBe("v-01");
    expect(valueBucket(0.9)).toBe("v-09");
    expect(valueBucket(null)).toBe("v-na");
  });
});
