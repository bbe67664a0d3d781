// Typed client for the plan service. The UI talks to the server exclusively
// through these calls; it never reads plan files itself.

import type {
  CellEditBody,
  DiffView,
  Diagnostic,
  ModelView,
  PatchResponse,
  PlanInfo,
  SowView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
    public diagnostics: Diagnostic[] = [],
    public currentRevision: number | null = null,
  ) {
    super(message);
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let detail = response.statusText;
  let diagnostics: Diagnostic[] = [];
  let currentRevision: number | null = null;
  try {
    const body = await response.json();
    if (typeof body.detail === "string") {
      detail = body.detail;
    } else if (body.detail?.diagnostics) {
      diagnostics = body.detail.diagnostics;
      detail = diagnostics.map((d) => d.message).join("; ") || detail;
    }
    if (typeof body.current_revision === "number") {
      currentRevision = body.current_revision;
    }
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(response.status, detail, diagnostics, currentRevision);
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  if (!response.ok) {
    throw await parseError(response);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(public baseUrl: string = "") {}

  async getPlanInfo(): Promise<PlanInfo> {
    const payload = await request<{ revision: number; plan: any }>(`${this.baseUrl}/api/plan`);
    const plan = payload.plan;
    return {
      revision: payload.revision,
      planName: plan.meta.name,
      modelIds: plan.models.map((m: any) => ({ id: m.id, name: m.name })),
      categories: plan.landscape.categories.map((c: any) => ({
        id: c.id,
        label: c.label,
        name: c.name,
        short_name: c.short_name || c.name,
      })),
      tasks: plan.taxonomy.main_tasks,
    };
  }

  getModel(modelId: string): Promise<ModelView> {
    return request<ModelView>(`${this.baseUrl}/api/models/${encodeURIComponent(modelId)}`);
  }

  patchCell(
    modelId: string,
    category: string,
    task: string,
    edit: CellEditBody,
    revision: number,
  ): Promise<PatchResponse> {
    return request<PatchResponse>(
      `${this.baseUrl}/api/models/${encodeURIComponent(modelId)}/cells/` +
        `${encodeURIComponent(category)}/${encodeURIComponent(task)}`,
      {
        method: "PATCH",
        headers: {
          "Content-Type": "application/json",
          "X-Plan-Revision": String(revision),
        },
        body: JSON.stringify(edit),
      },
    );
  }

  getDiff(a: string, b: string): Promise<DiffView> {
    const params = new URLSearchParams({ a, b });
    return request<DiffView>(`${this.baseUrl}/api/models/diff?${params}`);
  }

  getSow(modelId: string): Promise<SowView> {
    return request<SowView>(`${this.baseUrl}/api/models/${encodeURIComponent(modelId)}/sow`);
  }

  save(): Promise<{ revision: number; path: string }> {
    return request(`${this.baseUrl}/api/plan/save`, { method: "POST" });
  }
}
