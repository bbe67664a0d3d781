// Wire types mirroring the socplan service JSON API.

export type Level = "I" | "IE" | "EI" | "E";

export type Applicability = "applicable" | "not_applicable";

export interface Diagnostic {
  severity: "error" | "warning" | "info";
  code: string;
  path: string;
  message: string;
}

export interface CellView {
  category: string;
  task: string;
  applicability: Applicability;
  levels: Record<string, Level> | null;
  suggested: number | null;
  override: number | null;
  effective: number | null;
  rationale: string;
}

export interface ModelView {
  revision: number;
  id: string;
  name: string;
  description: string;
  cells: CellView[];
}

export interface SubtaskInfo {
  id: string;
  name: string;
}

export interface MainTaskInfo {
  id: string;
  name: string;
  subtasks: SubtaskInfo[];
}

export interface CategoryInfo {
  id: string;
  label: string;
  name: string;
  short_name: string;
}

export interface PlanInfo {
  revision: number;
  modelIds: { id: string; name: string }[];
  categories: CategoryInfo[];
  tasks: MainTaskInfo[];
  planName: string;
}

export interface PatchResponse {
  revision: number;
  cell: CellView;
  diagnostics: Diagnostic[];
}

export interface LevelChange {
  subtask: string;
  before: Level | null;
  after: Level | null;
}

export interface CellDelta {
  category: string;
  task: string;
  changed: boolean;
  applicability: [Applicability, Applicability] | null;
  levels: LevelChange[];
  effective: [number | null, number | null] | null;
}

export interface DiffView {
  revision: number;
  a: string;
  b: string;
  deltas: CellDelta[];
}

export interface SowView {
  revision: number;
  model: string;
  markdown: string;
}

export interface CellEditBody {
  levels?: Record<string, Level>;
  override?: number;
  clear_override?: boolean;
  rationale?: string;
}
