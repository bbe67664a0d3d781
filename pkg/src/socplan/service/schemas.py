"""Pydantic request/response models for the plan service API."""

from __future__ import annotations

from pydantic import BaseModel, Field


class DiagnosticView(BaseModel):
    severity: str
    code: str
    path: str
    message: str


class CellView(BaseModel):
    category: str
    task: str
    applicability: str
    levels: dict[str, str] | None = None
    suggested: float | None = None
    override: float | None = None
    effective: float | None = None
    rationale: str = ""


class CellEdit(BaseModel):
    """A partial edit: only the supplied fields change."""

    levels: dict[str, str] | None = None
    override: float | None = None
    clear_override: bool = False
    rationale: str | None = None


class WhatIfEdit(CellEdit):
    category: str
    task: str


class WhatIfRequest(BaseModel):
    edits: list[WhatIfEdit] = Field(default_factory=list)


class PatchResponse(BaseModel):
    revision: int
    cell: CellView
    diagnostics: list[DiagnosticView] = Field(default_factory=list)


class WhatIfResponse(BaseModel):
    revision: int
    cells: list[CellView]


class PlanResponse(BaseModel):
    revision: int
    plan: dict


class ScoreEntry(BaseModel):
    display: str
    exact: str


class MatrixRowView(BaseModel):
    category: str
    display: str
    scores: dict[str, ScoreEntry]


class FlaggedPair(BaseModel):
    categories: tuple[str, str]
    distance: str


class DiscernibilityView(BaseModel):
    epsilon: float
    flagged: list[FlaggedPair]


class AnnotationView(BaseModel):
    id: str
    path: str
    text: str


class MatrixResponse(BaseModel):
    revision: int
    columns: list[str]
    column_names: list[str]
    rows: list[MatrixRowView]
    discernibility: DiscernibilityView
    annotations: list[AnnotationView]


class ModelResponse(BaseModel):
    revision: int
    id: str
    name: str
    description: str
    cells: list[CellView]


class LevelChange(BaseModel):
    subtask: str
    before: str | None
    after: str | None


class CellDeltaView(BaseModel):
    category: str
    task: str
    changed: bool
    applicability: tuple[str, str] | None = None
    levels: list[LevelChange] = Field(default_factory=list)
    effective: tuple[float | None, float | None] | None = None


class DiffResponse(BaseModel):
    revision: int
    a: str
    b: str
    deltas: list[CellDeltaView]


class SowResponse(BaseModel):
    revision: int
    model: str
    markdown: str


class SaveResponse(BaseModel):
    revision: int
    path: str
