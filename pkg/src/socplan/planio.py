"""Plan document parsing, canonical serialization, and tabular exports.

The interchange format is UTF-8 JSON with top-level keys ``meta``,
``landscape``, ``taxonomy``, ``models``, ``templates``. Parsing is strict:
unknown keys are errors, so a typo in a control token can never silently
corrupt scores. Every problem is reported as a located diagnostic; malformed
input never raises. Serialization is canonical (sorted keys, two-space
indent, trailing newline) so plan files diff cleanly under version control.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any

from socplan.diagnostics import Diagnostic, error, has_errors
from socplan.errors import UnknownFormatError
from socplan.involvement import (
    Applicability,
    CellAssignment,
    ContributionLevel,
    InvolvementModel,
    InvolvementValue,
    MainTask,
    SocTaskTaxonomy,
    Subtask,
    default_taxonomy,
    effective_value,
    suggested_value,
    validate_model,
)
from socplan.landscape import (
    Category,
    ControlAssignment,
    FunctionGroup,
    Landscape,
    RelevanceLevel,
    validate_landscape,
)
from socplan.scoring import RelationshipMatrix, display_score
from socplan.sow import ClauseTemplate, default_templates

SCHEMA_VERSION = 1

EXPORT_FORMATS = ("csv", "md", "json-lines")


@dataclass(frozen=True)
class Annotation:
    """A curator note shipped with the plan, e.g. on a known data discrepancy."""

    id: str
    text: str
    path: str = ""


@dataclass(frozen=True)
class PlanMeta:
    name: str
    schema_version: int = SCHEMA_VERSION
    description: str = ""
    created: str | None = None
    updated: str | None = None
    annotations: tuple[Annotation, ...] = ()


@dataclass(frozen=True)
class PlanDocument:
    meta: PlanMeta
    landscape: Landscape
    taxonomy: SocTaskTaxonomy
    models: tuple[InvolvementModel, ...] = ()
    templates: tuple[ClauseTemplate, ...] = ()

    def model(self, model_id: str) -> InvolvementModel | None:
        for m in self.models:
            if m.id == model_id:
                return m
        return None

    def template_set(self) -> dict[tuple[str, ContributionLevel], ClauseTemplate]:
        """Built-in templates with the plan's overrides applied."""
        templates = default_templates(self.taxonomy)
        for template in self.templates:
            templates[(template.subtask_id, template.level)] = template
        return templates


class _Parser:
    def __init__(self) -> None:
        self.diags: list[Diagnostic] = []

    def fail(self, code: str, path: str, message: str) -> None:
        self.diags.append(error(code, path, message))

    def check_keys(self, obj: dict, path: str, allowed: set[str], required: set[str]) -> bool:
        ok = True
        for key in obj:
            if key not in allowed:
                self.fail("unknown-key", f"{path}.{key}", f"unknown key {key!r}")
                ok = False
        for key in required:
            if key not in obj:
                self.fail("missing-key", path, f"missing required key {key!r}")
                ok = False
        return ok

    def string(self, obj: dict, key: str, path: str, default: str | None = None) -> str:
        if key not in obj:
            return default if default is not None else ""
        value = obj[key]
        if not isinstance(value, str):
            self.fail("invalid-type", f"{path}.{key}", f"{key} must be a string")
            return default if default is not None else ""
        return value


def _parse_group(parser: _Parser, obj: Any, path: str) -> FunctionGroup | None:
    if not isinstance(obj, dict):
        parser.fail("invalid-type", path, "group must be an object")
        return None
    parser.check_keys(
        obj,
        path,
        allowed={
            "id",
            "name",
            "description",
            "primary_control",
            "secondary_controls",
            "relevance",
            "rationale",
        },
        required={"id", "name", "description", "primary_control", "secondary_controls", "relevance"},
    )
    secondary: list[str] = []
    raw_secondary = obj.get("secondary_controls", [])
    if not isinstance(raw_secondary, list):
        parser.fail("invalid-type", f"{path}.secondary_controls", "secondary_controls must be a list")
    else:
        for j, token in enumerate(raw_secondary):
            if not isinstance(token, str):
                parser.fail(
                    "invalid-type", f"{path}.secondary_controls[{j}]", "control token must be a string"
                )
            else:
                secondary.append(token)
    relevance_raw = parser.string(obj, "relevance", path, default="")
    try:
        relevance = RelevanceLevel(relevance_raw)
    except ValueError:
        parser.fail(
            "invalid-value",
            f"{path}.relevance",
            f"relevance must be one of Low/Medium/High, got {relevance_raw!r}",
        )
        return None
    return FunctionGroup(
        id=parser.string(obj, "id", path),
        name=parser.string(obj, "name", path),
        description=parser.string(obj, "description", path),
        assignment=ControlAssignment(
            primary=parser.string(obj, "primary_control", path),
            secondary=tuple(secondary),
        ),
        relevance=relevance,
        rationale=parser.string(obj, "rationale", path, default=""),
    )


def _parse_category(parser: _Parser, obj: Any, path: str) -> Category | None:
    if not isinstance(obj, dict):
        parser.fail("invalid-type", path, "category must be an object")
        return None
    parser.check_keys(
        obj,
        path,
        allowed={"id", "label", "name", "short_name", "description", "members"},
        required={"id", "label", "name", "description", "members"},
    )
    members: list[str] = []
    raw_members = obj.get("members", [])
    if not isinstance(raw_members, list):
        parser.fail("invalid-type", f"{path}.members", "members must be a list")
    else:
        for j, member in enumerate(raw_members):
            if not isinstance(member, str):
                parser.fail("invalid-type", f"{path}.members[{j}]", "member id must be a string")
            else:
                members.append(member)
    return Category(
        id=parser.string(obj, "id", path),
        label=parser.string(obj, "label", path),
        name=parser.string(obj, "name", path),
        short_name=parser.string(obj, "short_name", path, default=""),
        description=parser.string(obj, "description", path),
        members=tuple(members),
    )


def _parse_taxonomy(parser: _Parser, obj: Any, path: str) -> SocTaskTaxonomy | None:
    if not isinstance(obj, dict):
        parser.fail("invalid-type", path, "taxonomy must be an object")
        return None
    parser.check_keys(obj, path, allowed={"main_tasks"}, required={"main_tasks"})
    raw_tasks = obj.get("main_tasks", [])
    if not isinstance(raw_tasks, list):
        parser.fail("invalid-type", f"{path}.main_tasks", "main_tasks must be a list")
        return None
    tasks: list[MainTask] = []
    for i, raw_task in enumerate(raw_tasks):
        tpath = f"{path}.main_tasks[{i}]"
        if not isinstance(raw_task, dict):
            parser.fail("invalid-type", tpath, "main task must be an object")
            continue
        parser.check_keys(raw_task, tpath, allowed={"id", "name", "subtasks"}, required={"id", "name", "subtasks"})
        subtasks: list[Subtask] = []
        raw_subtasks = raw_task.get("subtasks", [])
        if not isinstance(raw_subtasks, list):
            parser.fail("invalid-type", f"{tpath}.subtasks", "subtasks must be a list")
            raw_subtasks = []
        for j, raw_subtask in enumerate(raw_subtasks):
            spath = f"{tpath}.subtasks[{j}]"
            if not isinstance(raw_subtask, dict):
                parser.fail("invalid-type", spath, "subtask must be an object")
                continue
            parser.check_keys(raw_subtask, spath, allowed={"id", "name"}, required={"id", "name"})
            subtasks.append(
                Subtask(id=parser.string(raw_subtask, "id", spath), name=parser.string(raw_subtask, "name", spath))
            )
        if not subtasks:
            parser.fail("invalid-value", f"{tpath}.subtasks", "each main task needs at least one subtask")
        seen_subtasks = [s.id for s in subtasks]
        if len(set(seen_subtasks)) != len(seen_subtasks):
            parser.fail("invalid-value", f"{tpath}.subtasks", "subtask ids must be unique within a task")
        tasks.append(
            MainTask(
                id=parser.string(raw_task, "id", tpath),
                name=parser.string(raw_task, "name", tpath),
                subtasks=tuple(subtasks),
            )
        )
    return SocTaskTaxonomy(main_tasks=tuple(tasks))


def _parse_cell(parser: _Parser, obj: Any, path: str) -> CellAssignment | None:
    if not isinstance(obj, dict):
        parser.fail("invalid-type", path, "cell must be an object")
        return None
    parser.check_keys(
        obj,
        path,
        allowed={"category", "task", "applicability", "levels", "override", "rationale"},
        required={"category", "task"},
    )
    applicability_raw = parser.string(obj, "applicability", path, default="applicable")
    try:
        applicability = Applicability(applicability_raw)
    except ValueError:
        parser.fail(
            "invalid-value",
            f"{path}.applicability",
            f"applicability must be applicable/not_applicable, got {applicability_raw!r}",
        )
        return None

    levels: dict[str, ContributionLevel] | None = None
    raw_levels = obj.get("levels")
    if raw_levels is not None:
        if not isinstance(raw_levels, dict):
            parser.fail("invalid-type", f"{path}.levels", "levels must be an object")
        else:
            levels = {}
            for subtask_id, raw_level in raw_levels.items():
                lpath = f"{path}.levels.{subtask_id}"
                try:
                    levels[subtask_id] = ContributionLevel(raw_level)
                except ValueError:
                    parser.fail(
                        "invalid-value", lpath, f"level must be one of I/IE/EI/E, got {raw_level!r}"
                    )

    override: InvolvementValue | None = None
    raw_override = obj.get("override")
    if raw_override is not None:
        if not isinstance(raw_override, (int, float)) or isinstance(raw_override, bool):
            parser.fail("invalid-type", f"{path}.override", "override must be a number")
        else:
            try:
                override = InvolvementValue(float(raw_override))
            except ValueError:
                parser.fail(
                    "invalid-value",
                    f"{path}.override",
                    f"override must be one of 0.1/0.3/0.5/0.7/0.9, got {raw_override!r}",
                )
    return CellAssignment(
        category_id=parser.string(obj, "category", path),
        main_task_id=parser.string(obj, "task", path),
        applicability=applicability,
        subtask_levels=levels,
        override_value=override,
        rationale=parser.string(obj, "rationale", path, default=""),
    )


def _parse_model(parser: _Parser, obj: Any, path: str) -> InvolvementModel | None:
    if not isinstance(obj, dict):
        parser.fail("invalid-type", path, "model must be an object")
        return None
    parser.check_keys(
        obj, path, allowed={"id", "name", "description", "cells"}, required={"id", "name", "cells"}
    )
    cells: list[CellAssignment] = []
    raw_cells = obj.get("cells", [])
    if not isinstance(raw_cells, list):
        parser.fail("invalid-type", f"{path}.cells", "cells must be a list")
    else:
        for i, raw_cell in enumerate(raw_cells):
            cell = _parse_cell(parser, raw_cell, f"{path}.cells[{i}]")
            if cell is not None:
                cells.append(cell)
    return InvolvementModel(
        id=parser.string(obj, "id", path),
        name=parser.string(obj, "name", path),
        description=parser.string(obj, "description", path, default=""),
        cells=tuple(cells),
    )


def _parse_template(parser: _Parser, obj: Any, path: str) -> ClauseTemplate | None:
    if not isinstance(obj, dict):
        parser.fail("invalid-type", path, "template must be an object")
        return None
    parser.check_keys(obj, path, allowed={"subtask", "level", "text"}, required={"subtask", "level", "text"})
    level_raw = parser.string(obj, "level", path)
    try:
        level = ContributionLevel(level_raw)
    except ValueError:
        parser.fail("invalid-value", f"{path}.level", f"level must be one of I/IE/EI/E, got {level_raw!r}")
        return None
    return ClauseTemplate(
        subtask_id=parser.string(obj, "subtask", path),
        level=level,
        text=parser.string(obj, "text", path),
    )


def parse_plan(data: bytes | str) -> tuple[PlanDocument | None, list[Diagnostic]]:
    """Parse and fully validate a plan document.

    Returns the document and all diagnostics; the document is None whenever
    any error-severity diagnostic was produced. Info and warning diagnostics
    (e.g. override annotations) accompany successful parses.
    """
    parser = _Parser()
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            parser.fail("syntax", "$", f"input is not valid UTF-8: {exc}")
            return None, parser.diags
    try:
        raw = json.loads(data)
    except json.JSONDecodeError as exc:
        parser.fail("syntax", "$", f"invalid JSON: {exc}")
        return None, parser.diags
    if not isinstance(raw, dict):
        parser.fail("invalid-type", "$", "top level must be an object")
        return None, parser.diags

    parser.check_keys(
        raw,
        "$",
        allowed={"meta", "landscape", "taxonomy", "models", "templates"},
        required={"meta", "landscape"},
    )

    meta = PlanMeta(name="")
    raw_meta = raw.get("meta")
    if isinstance(raw_meta, dict):
        parser.check_keys(
            raw_meta,
            "meta",
            allowed={"name", "schema_version", "description", "created", "updated", "annotations"},
            required={"name", "schema_version"},
        )
        version = raw_meta.get("schema_version")
        if version != SCHEMA_VERSION:
            parser.fail(
                "unsupported-schema-version",
                "meta.schema_version",
                f"expected schema_version {SCHEMA_VERSION}, got {version!r}",
            )
        annotations: list[Annotation] = []
        raw_annotations = raw_meta.get("annotations", [])
        if not isinstance(raw_annotations, list):
            parser.fail("invalid-type", "meta.annotations", "annotations must be a list")
        else:
            for i, raw_annotation in enumerate(raw_annotations):
                apath = f"meta.annotations[{i}]"
                if not isinstance(raw_annotation, dict):
                    parser.fail("invalid-type", apath, "annotation must be an object")
                    continue
                parser.check_keys(
                    raw_annotation, apath, allowed={"id", "path", "text"}, required={"id", "text"}
                )
                annotations.append(
                    Annotation(
                        id=parser.string(raw_annotation, "id", apath),
                        text=parser.string(raw_annotation, "text", apath),
                        path=parser.string(raw_annotation, "path", apath, default=""),
                    )
                )
        created = raw_meta.get("created")
        updated = raw_meta.get("updated")
        if created is not None and not isinstance(created, str):
            parser.fail("invalid-type", "meta.created", "created must be a string timestamp")
            created = None
        if updated is not None and not isinstance(updated, str):
            parser.fail("invalid-type", "meta.updated", "updated must be a string timestamp")
            updated = None
        meta = PlanMeta(
            name=parser.string(raw_meta, "name", "meta"),
            schema_version=SCHEMA_VERSION,
            description=parser.string(raw_meta, "description", "meta", default=""),
            created=created,
            updated=updated,
            annotations=tuple(annotations),
        )
    elif raw_meta is not None:
        parser.fail("invalid-type", "meta", "meta must be an object")

    groups: list[FunctionGroup] = []
    categories: list[Category] = []
    raw_landscape = raw.get("landscape")
    if isinstance(raw_landscape, dict):
        parser.check_keys(
            raw_landscape, "landscape", allowed={"groups", "categories"}, required={"groups"}
        )
        raw_groups = raw_landscape.get("groups", [])
        if not isinstance(raw_groups, list):
            parser.fail("invalid-type", "landscape.groups", "groups must be a list")
        else:
            for i, raw_group in enumerate(raw_groups):
                group = _parse_group(parser, raw_group, f"landscape.groups[{i}]")
                if group is not None:
                    groups.append(group)
        raw_categories = raw_landscape.get("categories", [])
        if not isinstance(raw_categories, list):
            parser.fail("invalid-type", "landscape.categories", "categories must be a list")
        else:
            for i, raw_category in enumerate(raw_categories):
                category = _parse_category(parser, raw_category, f"landscape.categories[{i}]")
                if category is not None:
                    categories.append(category)
    elif raw_landscape is not None:
        parser.fail("invalid-type", "landscape", "landscape must be an object")
    landscape = Landscape(groups=tuple(groups), categories=tuple(categories))

    taxonomy = default_taxonomy()
    if "taxonomy" in raw and raw["taxonomy"] is not None:
        parsed_taxonomy = _parse_taxonomy(parser, raw["taxonomy"], "taxonomy")
        if parsed_taxonomy is not None:
            taxonomy = parsed_taxonomy

    models: list[InvolvementModel] = []
    raw_models = raw.get("models", [])
    if not isinstance(raw_models, list):
        parser.fail("invalid-type", "models", "models must be a list")
    else:
        for i, raw_model in enumerate(raw_models):
            model = _parse_model(parser, raw_model, f"models[{i}]")
            if model is not None:
                models.append(model)
    model_ids = [m.id for m in models]
    if len(set(model_ids)) != len(model_ids):
        parser.fail("invalid-value", "models", "model ids must be unique")

    templates: list[ClauseTemplate] = []
    raw_templates = raw.get("templates", [])
    if not isinstance(raw_templates, list):
        parser.fail("invalid-type", "templates", "templates must be a list")
    else:
        for i, raw_template in enumerate(raw_templates):
            template = _parse_template(parser, raw_template, f"templates[{i}]")
            if template is not None:
                templates.append(template)

    if has_errors(parser.diags):
        return None, parser.diags

    # Structural parse succeeded; now enforce the domain invariants.
    parser.diags.extend(validate_landscape(landscape, path="landscape"))
    known_subtasks = {s.id for t in taxonomy.main_tasks for s in t.subtasks}
    for i, template in enumerate(templates):
        if template.subtask_id not in known_subtasks:
            parser.fail(
                "unknown-subtask",
                f"templates[{i}].subtask",
                f"taxonomy has no subtask {template.subtask_id!r}",
            )
    for i, model in enumerate(models):
        parser.diags.extend(validate_model(model, landscape, taxonomy, path=f"models[{i}]"))

    if has_errors(parser.diags):
        return None, parser.diags
    document = PlanDocument(
        meta=meta,
        landscape=landscape,
        taxonomy=taxonomy,
        models=tuple(models),
        templates=tuple(templates),
    )
    return document, parser.diags


def to_jsonable(doc: PlanDocument) -> dict:
    """Plain-data form of a document, matching the plan file schema."""
    return {
        "meta": {
            "name": doc.meta.name,
            "schema_version": doc.meta.schema_version,
            "description": doc.meta.description,
            "created": doc.meta.created,
            "updated": doc.meta.updated,
            "annotations": [
                {"id": a.id, "path": a.path, "text": a.text} for a in doc.meta.annotations
            ],
        },
        "landscape": {
            "groups": [
                {
                    "id": g.id,
                    "name": g.name,
                    "description": g.description,
                    "primary_control": g.assignment.primary,
                    "secondary_controls": list(g.assignment.secondary),
                    "relevance": g.relevance.value,
                    "rationale": g.rationale,
                }
                for g in doc.landscape.groups
            ],
            "categories": [
                {
                    "id": c.id,
                    "label": c.label,
                    "name": c.name,
                    "short_name": c.short_name,
                    "description": c.description,
                    "members": list(c.members),
                }
                for c in doc.landscape.categories
            ],
        },
        "taxonomy": {
            "main_tasks": [
                {
                    "id": t.id,
                    "name": t.name,
                    "subtasks": [{"id": s.id, "name": s.name} for s in t.subtasks],
                }
                for t in doc.taxonomy.main_tasks
            ]
        },
        "models": [
            {
                "id": m.id,
                "name": m.name,
                "description": m.description,
                "cells": [
                    {
                        "category": cell.category_id,
                        "task": cell.main_task_id,
                        "applicability": cell.applicability.value,
                        "levels": (
                            {k: v.value for k, v in sorted(cell.subtask_levels.items())}
                            if cell.subtask_levels is not None
                            else None
                        ),
                        "override": (
                            float(cell.override_value) if cell.override_value is not None else None
                        ),
                        "rationale": cell.rationale,
                    }
                    for cell in m.cells
                ],
            }
            for m in doc.models
        ],
        "templates": [
            {"subtask": t.subtask_id, "level": t.level.value, "text": t.text}
            for t in doc.templates
        ],
    }


def serialize_plan(doc: PlanDocument) -> bytes:
    """Canonical byte form: sorted keys, two-space indent, trailing newline."""
    return (json.dumps(to_jsonable(doc), ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode(
        "utf-8"
    )


def _csv_render(rows: list[list[str]]) -> bytes:
    buffer = io.StringIO()
    csv.writer(buffer, lineterminator="\r\n").writerows(rows)
    return buffer.getvalue().encode("utf-8")


def _md_table(header: list[str], rows: list[list[str]]) -> bytes:
    lines = [
        "| " + " | ".join(header) + " |",
        "| " + " | ".join("---" for _ in header) + " |",
    ]
    lines += ["| " + " | ".join(row) + " |" for row in rows]
    return ("\n".join(lines) + "\n").encode("utf-8")


def _jsonl(records: list[dict]) -> bytes:
    return ("\n".join(json.dumps(r, ensure_ascii=False, sort_keys=True) for r in records) + "\n").encode(
        "utf-8"
    )


def export_matrix(matrix: RelationshipMatrix, fmt: str) -> bytes:
    """Render the relationship matrix as csv, md, or json-lines.

    Unscored columns stay empty (csv/md); json-lines carries both the
    one-decimal display value and the exact rational per scored cell.
    """
    if fmt not in EXPORT_FORMATS:
        raise UnknownFormatError(f"unknown export format {fmt!r}")
    header = ["Category", *matrix.column_names]
    if fmt == "json-lines":
        records = []
        for row in matrix.rows:
            scores = {}
            for task in matrix.columns:
                cell = matrix.cell(row.category_id, task)
                if cell is not None:
                    scores[task] = {"display": display_score(cell.score), "exact": str(cell.score)}
            records.append(
                {
                    "type": "row",
                    "category": row.category_id,
                    "display": row.display_name,
                    "scores": scores,
                }
            )
        return _jsonl(records)

    rows = []
    for row in matrix.rows:
        rendered = [row.display_name]
        for task in matrix.columns:
            cell = matrix.cell(row.category_id, task)
            rendered.append("" if cell is None else display_score(cell.score))
        rows.append(rendered)
    return _csv_render([header, *rows]) if fmt == "csv" else _md_table(header, rows)


def _cell_text(cell: CellAssignment, taxonomy: SocTaskTaxonomy, labeled: bool) -> str:
    if cell.applicability is Applicability.NOT_APPLICABLE:
        return "N/A" if labeled else ""
    task = taxonomy.task(cell.main_task_id)
    order = [s.id for s in task.subtasks] if task else sorted(cell.subtask_levels or {})
    levels = cell.subtask_levels or {}
    pattern = "/".join(levels[s].value for s in order if s in levels)
    value = effective_value(cell)
    assert value is not None
    text = f"{value.value:.1f} ({value.label}) {pattern}" if labeled else f"{value.value:.1f} {pattern}"
    if cell.override_value is not None and labeled:
        text += " *"
    return text


def export_model_grid(
    model: InvolvementModel,
    landscape: Landscape,
    taxonomy: SocTaskTaxonomy,
    fmt: str,
) -> bytes:
    """Render an involvement model grid as csv, md, or json-lines.

    The md form carries the scale label per cell and marks overrides with
    ``*``; N/A cells render empty in csv and as "N/A" in md.
    """
    if fmt not in EXPORT_FORMATS:
        raise UnknownFormatError(f"unknown export format {fmt!r}")
    task_ids = [t.id for t in taxonomy.main_tasks]
    if fmt == "json-lines":
        records = []
        for category in landscape.categories:
            for task_id in task_ids:
                cell = model.cell(category.id, task_id)
                if cell is None:
                    continue
                suggestion = suggested_value(cell)
                effective = effective_value(cell) if (
                    cell.applicability is Applicability.APPLICABLE
                ) else None
                records.append(
                    {
                        "type": "cell",
                        "model": model.id,
                        "category": category.id,
                        "task": task_id,
                        "applicability": cell.applicability.value,
                        "levels": (
                            {k: v.value for k, v in sorted(cell.subtask_levels.items())}
                            if cell.subtask_levels is not None
                            else None
                        ),
                        "suggested": float(suggestion) if suggestion is not None else None,
                        "override": (
                            float(cell.override_value) if cell.override_value is not None else None
                        ),
                        "effective": float(effective) if effective is not None else None,
                        "rationale": cell.rationale,
                    }
                )
        return _jsonl(records)

    header = ["Category", *(t.name for t in taxonomy.main_tasks)]
    rows = []
    for category in landscape.categories:
        rendered = [category.display_name]
        for task_id in task_ids:
            cell = model.cell(category.id, task_id)
            rendered.append("" if cell is None else _cell_text(cell, taxonomy, labeled=fmt == "md"))
        rows.append(rendered)
    body = _csv_render([header, *rows]) if fmt == "csv" else _md_table(header, rows)
    if fmt == "md" and any(cell.override_value is not None for cell in model.cells):
        body += b"\n`*` marks a manual override of the suggested value.\n"
    return body
