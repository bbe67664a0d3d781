"""Local HTTP API serving a loaded plan to the workshop UI.

Reads never block; every mutation validates the whole model, then
compare-and-swaps the in-memory plan against the revision the client read
(header ``X-Plan-Revision``). Stale revisions get 409 and change nothing.
Persistence is explicit via POST /api/plan/save.
"""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from fastapi import FastAPI, Header, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from socplan.diagnostics import Diagnostic, Severity
from socplan.errors import SocPlanError
from socplan.involvement import (
    Applicability,
    CellAssignment,
    ContributionLevel,
    InvolvementModel,
    InvolvementValue,
    diff_models,
    effective_value,
    suggested_value,
    validate_model,
)
from socplan.planio import PlanDocument, parse_plan, to_jsonable
from socplan.scoring import discernibility, display_score, score_matrix
from socplan.service.schemas import (
    AnnotationView,
    CellDeltaView,
    CellEdit,
    CellView,
    DiagnosticView,
    DiffResponse,
    DiscernibilityView,
    FlaggedPair,
    LevelChange,
    MatrixResponse,
    MatrixRowView,
    ModelResponse,
    PatchResponse,
    PlanResponse,
    SaveResponse,
    ScoreEntry,
    SowResponse,
    WhatIfRequest,
    WhatIfResponse,
)
from socplan.service.state import PlanSession, StaleRevisionError
from socplan.sow import generate_sow

LOOPBACK_ORIGINS = r"https?://(localhost|127\.0\.0\.1)(:\d+)?"


def _diagnostic_views(diagnostics: list[Diagnostic]) -> list[DiagnosticView]:
    return [
        DiagnosticView(severity=d.severity.value, code=d.code, path=d.path, message=d.message)
        for d in diagnostics
    ]


def _cell_view(cell: CellAssignment) -> CellView:
    applicable = cell.applicability is Applicability.APPLICABLE
    suggestion = suggested_value(cell)
    effective = effective_value(cell) if applicable and (cell.subtask_levels or cell.override_value) else None
    return CellView(
        category=cell.category_id,
        task=cell.main_task_id,
        applicability=cell.applicability.value,
        levels={k: v.value for k, v in sorted(cell.subtask_levels.items())} if cell.subtask_levels else None,
        suggested=float(suggestion) if suggestion is not None else None,
        override=float(cell.override_value) if cell.override_value is not None else None,
        effective=float(effective) if effective is not None else None,
        rationale=cell.rationale,
    )


def _validation_failure(diagnostics: list[Diagnostic]) -> HTTPException:
    return HTTPException(
        status_code=422,
        detail={"diagnostics": [d.__dict__ | {"severity": d.severity.value} for d in diagnostics]},
    )


def _apply_edit(cell: CellAssignment, edit: CellEdit, path: str) -> CellAssignment:
    """Merge an edit into a cell; malformed values raise 422."""
    problems: list[Diagnostic] = []
    if cell.applicability is Applicability.NOT_APPLICABLE and (
        edit.levels or edit.override is not None or edit.clear_override
    ):
        problems.append(
            Diagnostic(Severity.ERROR, "cell-not-applicable", path, "N/A cells only accept rationale edits")
        )
    levels = dict(cell.subtask_levels or {})
    for subtask_id, raw in (edit.levels or {}).items():
        try:
            levels[subtask_id] = ContributionLevel(raw)
        except ValueError:
            problems.append(
                Diagnostic(
                    Severity.ERROR,
                    "invalid-value",
                    f"{path}.levels.{subtask_id}",
                    f"level must be one of I/IE/EI/E, got {raw!r}",
                )
            )
    override = cell.override_value
    if edit.override is not None and edit.clear_override:
        problems.append(
            Diagnostic(Severity.ERROR, "invalid-edit", path, "cannot both set and clear the override")
        )
    elif edit.clear_override:
        override = None
    elif edit.override is not None:
        try:
            override = InvolvementValue(edit.override)
        except ValueError:
            problems.append(
                Diagnostic(
                    Severity.ERROR,
                    "invalid-value",
                    f"{path}.override",
                    f"override must be one of 0.1/0.3/0.5/0.7/0.9, got {edit.override!r}",
                )
            )
    if problems:
        raise _validation_failure(problems)
    return replace(
        cell,
        subtask_levels=levels if levels else cell.subtask_levels,
        override_value=override,
        rationale=cell.rationale if edit.rationale is None else edit.rationale,
    )


def create_app(plan_path: Path, ui_dir: Path | None = None) -> FastAPI:
    """Build the service around the plan stored at ``plan_path``."""
    document, diagnostics = parse_plan(plan_path.read_bytes())
    if document is None:
        details = "; ".join(d.format() for d in diagnostics)
        raise SocPlanError(f"plan failed validation: {details}")
    session = PlanSession(document, plan_path)

    app = FastAPI(title="socplan service", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origin_regex=LOOPBACK_ORIGINS,
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-Plan-Revision"],
    )

    @app.exception_handler(StaleRevisionError)
    async def stale_revision(_, exc: StaleRevisionError) -> JSONResponse:
        return JSONResponse(
            status_code=409,
            content={"detail": "stale revision", "current_revision": exc.current_revision},
        )

    @app.exception_handler(SocPlanError)
    async def domain_error(_, exc: SocPlanError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"detail": exc.message, "code": exc.code})

    def _model_or_404(doc: PlanDocument, model_id: str) -> InvolvementModel:
        model = doc.model(model_id)
        if model is None:
            raise HTTPException(status_code=404, detail=f"no model with id {model_id!r}")
        return model

    @app.get("/api/plan", response_model=PlanResponse)
    def get_plan() -> PlanResponse:
        doc, revision = session.snapshot
        return PlanResponse(revision=revision, plan=to_jsonable(doc))

    @app.get("/api/matrix", response_model=MatrixResponse)
    def get_matrix(epsilon: float = 0.5) -> MatrixResponse:
        doc, revision = session.snapshot
        matrix = score_matrix(doc.landscape, doc.taxonomy)
        flagged = discernibility(matrix, Fraction(epsilon).limit_denominator(10**6))
        rows = []
        for row in matrix.rows:
            scores = {}
            for task in matrix.columns:
                cell = matrix.cell(row.category_id, task)
                if cell is not None:
                    scores[task] = ScoreEntry(display=display_score(cell.score), exact=str(cell.score))
            rows.append(MatrixRowView(category=row.category_id, display=row.display_name, scores=scores))
        return MatrixResponse(
            revision=revision,
            columns=list(matrix.columns),
            column_names=list(matrix.column_names),
            rows=rows,
            discernibility=DiscernibilityView(
                epsilon=epsilon,
                flagged=[
                    FlaggedPair(
                        categories=(pair.category_a, pair.category_b),
                        distance=display_score(pair.distance),
                    )
                    for pair in flagged
                ],
            ),
            annotations=[
                AnnotationView(id=a.id, path=a.path, text=a.text) for a in doc.meta.annotations
            ],
        )

    @app.get("/api/models/diff", response_model=DiffResponse)
    def get_diff(a: str, b: str) -> DiffResponse:
        doc, revision = session.snapshot
        diff = diff_models(_model_or_404(doc, a), _model_or_404(doc, b))
        deltas = [
            CellDeltaView(
                category=delta.category_id,
                task=delta.main_task_id,
                changed=delta.changed,
                applicability=(
                    (delta.applicability_change[0].value, delta.applicability_change[1].value)
                    if delta.applicability_change
                    else None
                ),
                levels=[
                    LevelChange(
                        subtask=subtask,
                        before=old.value if old else None,
                        after=new.value if new else None,
                    )
                    for subtask, (old, new) in sorted(delta.level_changes.items())
                ],
                effective=(
                    (
                        float(delta.effective_change[0]) if delta.effective_change[0] is not None else None,
                        float(delta.effective_change[1]) if delta.effective_change[1] is not None else None,
                    )
                    if delta.effective_change
                    else None
                ),
            )
            for delta in diff.deltas
        ]
        return DiffResponse(revision=revision, a=a, b=b, deltas=deltas)

    @app.get("/api/models/{model_id}", response_model=ModelResponse)
    def get_model(model_id: str) -> ModelResponse:
        doc, revision = session.snapshot
        model = _model_or_404(doc, model_id)
        return ModelResponse(
            revision=revision,
            id=model.id,
            name=model.name,
            description=model.description,
            cells=[_cell_view(cell) for cell in model.cells],
        )

    @app.patch("/api/models/{model_id}/cells/{category}/{task}", response_model=PatchResponse)
    def patch_cell(
        model_id: str,
        category: str,
        task: str,
        edit: CellEdit,
        x_plan_revision: int = Header(alias="X-Plan-Revision"),
    ) -> PatchResponse:
        doc, revision = session.snapshot
        if x_plan_revision != revision:
            raise StaleRevisionError(revision)
        model = _model_or_404(doc, model_id)
        index = next(
            (
                i
                for i, cell in enumerate(model.cells)
                if cell.category_id == category and cell.main_task_id == task
            ),
            None,
        )
        if index is None:
            raise HTTPException(status_code=404, detail=f"no cell ({category}, {task})")
        model_index = doc.models.index(model)
        base_path = f"models[{model_index}].cells[{index}]"
        new_cell = _apply_edit(model.cells[index], edit, base_path)
        new_model = replace(
            model, cells=model.cells[:index] + (new_cell,) + model.cells[index + 1 :]
        )
        check = validate_model(new_model, doc.landscape, doc.taxonomy, path=f"models[{model_index}]")
        errors = [d for d in check if d.severity is Severity.ERROR]
        if errors:
            raise _validation_failure(errors)
        new_doc = replace(
            doc, models=doc.models[:model_index] + (new_model,) + doc.models[model_index + 1 :]
        )
        new_revision = session.replace(revision, new_doc)
        cell_notes = [d for d in check if d.path.startswith(base_path)]
        return PatchResponse(
            revision=new_revision,
            cell=_cell_view(new_cell),
            diagnostics=_diagnostic_views(cell_notes),
        )

    @app.post("/api/models/{model_id}/whatif", response_model=WhatIfResponse)
    def whatif(model_id: str, request: WhatIfRequest) -> WhatIfResponse:
        doc, revision = session.snapshot
        model = _model_or_404(doc, model_id)
        cells = list(model.cells)
        model_index = doc.models.index(model)
        for edit in request.edits:
            index = next(
                (
                    i
                    for i, cell in enumerate(cells)
                    if cell.category_id == edit.category and cell.main_task_id == edit.task
                ),
                None,
            )
            if index is None:
                raise HTTPException(status_code=404, detail=f"no cell ({edit.category}, {edit.task})")
            cells[index] = _apply_edit(
                cells[index], edit, f"models[{model_index}].cells[{index}]"
            )
        hypothetical = replace(model, cells=tuple(cells))
        check = validate_model(hypothetical, doc.landscape, doc.taxonomy, path=f"models[{model_index}]")
        errors = [d for d in check if d.severity is Severity.ERROR]
        if errors:
            raise _validation_failure(errors)
        return WhatIfResponse(revision=revision, cells=[_cell_view(cell) for cell in hypothetical.cells])

    @app.get("/api/models/{model_id}/sow", response_model=SowResponse)
    def get_sow(model_id: str) -> SowResponse:
        doc, revision = session.snapshot
        model = _model_or_404(doc, model_id)
        rendered = generate_sow(model, doc.landscape, doc.template_set(), doc.taxonomy)
        return SowResponse(revision=revision, model=model_id, markdown=rendered.to_markdown())

    @app.post("/api/plan/save", response_model=SaveResponse)
    def save_plan() -> SaveResponse:
        path, revision = session.save()
        return SaveResponse(revision=revision, path=str(path))

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
