"""SOC task taxonomy and external-involvement modeling.

Each (category, main task) cell of an involvement model assigns every subtask
one of four contribution levels — I, IE, EI, E, ordered by growing external
share, with no middle level so responsibility never diffuses. A cell's
aggregate involvement value on the 5-point scale (0.1 marginal, 0.3 low,
0.5 equivalent, 0.7 predominant, 0.9 central) is suggested from the levels
but may be overridden by the planning group; overrides are first-class and
carry their own rationale.

The suggestion maps I/IE/EI/E to 0.1/0.3/0.7/0.9, takes the arithmetic mean,
and snaps to the nearest scale point, exact midpoints rounding toward the
more external value. This reproduces every applicable cell of the bundled
status-quo model; the bundled target models carry seven overrides where the
committee judged otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from socplan.diagnostics import Diagnostic, error, info, warning
from socplan.errors import GridMismatchError, IncompleteCellError
from socplan.landscape import BASELINE_TASK, SIEM_TASK, Landscape


class ContributionLevel(str, Enum):
    """Who carries a subtask, ordered by external involvement."""

    I = "I"  # noqa: E741 - domain abbreviation for "internal"
    IE = "IE"
    EI = "EI"
    E = "E"

    @property
    def rank(self) -> int:
        return ("I", "IE", "EI", "E").index(self.value)

    @property
    def weight(self) -> Fraction:
        """Numeric weight used by the aggregate suggestion; no 0.5 middle."""
        return (Fraction(1, 10), Fraction(3, 10), Fraction(7, 10), Fraction(9, 10))[self.rank]


class InvolvementValue(float, Enum):
    """Aggregate external-provider involvement of a cell, 5-point scale."""

    MARGINAL = 0.1
    LOW = 0.3
    EQUIVALENT = 0.5
    PREDOMINANT = 0.7
    CENTRAL = 0.9

    @property
    def label(self) -> str:
        return self.name.lower()

    @property
    def rank(self) -> int:
        return (0.1, 0.3, 0.5, 0.7, 0.9).index(self.value)


_SCALE = (
    Fraction(1, 10),
    Fraction(3, 10),
    Fraction(5, 10),
    Fraction(7, 10),
    Fraction(9, 10),
)


def suggest_value(levels: Sequence[ContributionLevel]) -> InvolvementValue:
    """Aggregate subtask levels into a suggested involvement value.

    Mean of the level weights, snapped to the nearest scale point; exact
    midpoints round toward the larger (more external) value.
    """
    if not levels:
        raise ValueError("cannot aggregate an empty level list")
    mean = Fraction(sum(level.weight for level in levels), len(levels))
    best = _SCALE[0]
    for candidate in _SCALE[1:]:
        if abs(mean - candidate) <= abs(mean - best):
            best = candidate
    return InvolvementValue(float(best))


class Applicability(str, Enum):
    APPLICABLE = "applicable"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class Subtask:
    id: str
    name: str


@dataclass(frozen=True)
class MainTask:
    id: str
    name: str
    subtasks: tuple[Subtask, ...]


@dataclass(frozen=True)
class SocTaskTaxonomy:
    """The five SOC main tasks and their ordered subtasks."""

    main_tasks: tuple[MainTask, ...]

    def task(self, task_id: str) -> MainTask | None:
        for t in self.main_tasks:
            if t.id == task_id:
                return t
        return None


def default_taxonomy() -> SocTaskTaxonomy:
    """Built-in task structure of a modern SOC."""
    return SocTaskTaxonomy(
        main_tasks=(
            MainTask(
                "intelligence",
                "Intelligence",
                (Subtask("KM", "Knowledge Management"), Subtask("RA", "Risk Analysis")),
            ),
            MainTask(
                SIEM_TASK,
                "SIEM",
                (
                    Subtask("Mo", "Monitoring"),
                    Subtask("DC", "Data Collection"),
                    Subtask("S", "SEM"),
                ),
            ),
            MainTask(
                BASELINE_TASK,
                "Baseline Security",
                (Subtask("Vu", "Vulnerability Management"), Subtask("CS", "Compliance Scans")),
            ),
            MainTask(
                "forensics",
                "Forensics",
                (
                    Subtask("DA", "Data Analysis"),
                    Subtask("In", "Investigation"),
                    Subtask("CR", "Compliance Reports"),
                ),
            ),
            MainTask(
                "pentests",
                "Pentests",
                (Subtask("Pl", "Planning"), Subtask("Ex", "Execution")),
            ),
        )
    )


@dataclass(frozen=True)
class CellAssignment:
    """Contribution levels and optional override for one (category, task) cell."""

    category_id: str
    main_task_id: str
    applicability: Applicability = Applicability.APPLICABLE
    subtask_levels: Mapping[str, ContributionLevel] | None = None
    override_value: InvolvementValue | None = None
    rationale: str = ""


@dataclass(frozen=True)
class InvolvementModel:
    """A complete grid of cell assignments over all categories and main tasks."""

    id: str
    name: str
    cells: tuple[CellAssignment, ...]
    description: str = ""

    def cell(self, category_id: str, task_id: str) -> CellAssignment | None:
        for c in self.cells:
            if c.category_id == category_id and c.main_task_id == task_id:
                return c
        return None


def effective_value(cell: CellAssignment) -> InvolvementValue | None:
    """Override if present, else the suggestion; None for N/A cells."""
    if cell.applicability is Applicability.NOT_APPLICABLE:
        return None
    if cell.override_value is not None:
        return cell.override_value
    if not cell.subtask_levels:
        raise IncompleteCellError(
            f"cell ({cell.category_id}, {cell.main_task_id}) has neither levels nor override"
        )
    return suggest_value(list(cell.subtask_levels.values()))


def suggested_value(cell: CellAssignment) -> InvolvementValue | None:
    """The pure level-based suggestion, ignoring any override; None for N/A."""
    if cell.applicability is Applicability.NOT_APPLICABLE or not cell.subtask_levels:
        return None
    return suggest_value(list(cell.subtask_levels.values()))


def validate_model(
    model: InvolvementModel,
    landscape: Landscape,
    taxonomy: SocTaskTaxonomy,
    path: str = "model",
) -> list[Diagnostic]:
    """Check grid completeness, references, levels, and N/A rationales.

    Every stored override yields an info diagnostic (code ``override``); an
    override more than one scale step away from the suggestion escalates to a
    warning (code ``override-deviation``).
    """
    diags: list[Diagnostic] = []
    category_ids = [c.id for c in landscape.categories]
    task_ids = [t.id for t in taxonomy.main_tasks]

    seen: set[tuple[str, str]] = set()
    for i, cell in enumerate(model.cells):
        cpath = f"{path}.cells[{i}]"
        key = (cell.category_id, cell.main_task_id)
        if key in seen:
            diags.append(
                error("duplicate-cell", cpath, f"cell ({key[0]}, {key[1]}) appears twice")
            )
            continue
        seen.add(key)

        if cell.category_id not in category_ids:
            diags.append(
                error("unknown-category", f"{cpath}.category", f"unknown category {cell.category_id!r}")
            )
            continue
        task = taxonomy.task(cell.main_task_id)
        if task is None:
            diags.append(
                error("unknown-task", f"{cpath}.task", f"unknown main task {cell.main_task_id!r}")
            )
            continue

        if cell.applicability is Applicability.NOT_APPLICABLE:
            if not cell.rationale.strip():
                diags.append(
                    error(
                        "na-missing-rationale",
                        f"{cpath}.rationale",
                        f"cell ({key[0]}, {key[1]}) is N/A and needs a rationale",
                    )
                )
            continue

        levels = cell.subtask_levels or {}
        expected = {s.id for s in task.subtasks}
        for subtask_id in levels:
            if subtask_id not in expected:
                diags.append(
                    error(
                        "unknown-subtask",
                        f"{cpath}.levels.{subtask_id}",
                        f"task {task.id!r} has no subtask {subtask_id!r}",
                    )
                )
        missing = sorted(expected - set(levels))
        if levels and missing:
            diags.append(
                error(
                    "missing-subtask-level",
                    f"{cpath}.levels",
                    f"no level assigned for subtask(s): {', '.join(missing)}",
                )
            )
        if not levels and cell.override_value is None:
            diags.append(
                error(
                    "incomplete-cell",
                    cpath,
                    f"cell ({key[0]}, {key[1]}) has neither levels nor override",
                )
            )
            continue

        if cell.override_value is not None:
            suggestion = suggested_value(cell)
            if suggestion is None:
                diags.append(
                    info(
                        "override",
                        cpath,
                        f"override {cell.override_value:.1f} with no levels to compare against",
                    )
                )
            else:
                step_gap = abs(cell.override_value.rank - suggestion.rank)
                diags.append(
                    info(
                        "override",
                        cpath,
                        f"override {cell.override_value:.1f} replaces suggested {suggestion:.1f}",
                    )
                )
                if step_gap > 1:
                    diags.append(
                        warning(
                            "override-deviation",
                            cpath,
                            f"override {cell.override_value:.1f} deviates from suggested "
                            f"{suggestion:.1f} by {step_gap} scale steps",
                        )
                    )

    for category_id in category_ids:
        for task_id in task_ids:
            if (category_id, task_id) not in seen:
                diags.append(
                    error(
                        "incomplete-grid",
                        f"{path}.cells",
                        f"missing cell for ({category_id}, {task_id})",
                    )
                )
    return diags


@dataclass(frozen=True)
class CellDelta:
    category_id: str
    main_task_id: str
    applicability_change: tuple[Applicability, Applicability] | None
    level_changes: Mapping[str, tuple[ContributionLevel | None, ContributionLevel | None]]
    effective_change: tuple[InvolvementValue | None, InvolvementValue | None] | None

    @property
    def changed(self) -> bool:
        return bool(self.applicability_change or self.level_changes or self.effective_change)


@dataclass(frozen=True)
class ModelDiff:
    model_a: str
    model_b: str
    deltas: tuple[CellDelta, ...]


def diff_models(a: InvolvementModel, b: InvolvementModel) -> ModelDiff:
    """Complete per-cell delta grid between two models of the same shape."""
    keys_a = {(c.category_id, c.main_task_id) for c in a.cells}
    keys_b = {(c.category_id, c.main_task_id) for c in b.cells}
    if keys_a != keys_b:
        raise GridMismatchError(
            f"models {a.id!r} and {b.id!r} cover different (category, task) grids"
        )

    deltas: list[CellDelta] = []
    for cell_a in a.cells:
        cell_b = b.cell(cell_a.category_id, cell_a.main_task_id)
        assert cell_b is not None
        applicability_change = None
        if cell_a.applicability is not cell_b.applicability:
            applicability_change = (cell_a.applicability, cell_b.applicability)

        levels_a = cell_a.subtask_levels or {}
        levels_b = cell_b.subtask_levels or {}
        level_changes = {
            subtask: (levels_a.get(subtask), levels_b.get(subtask))
            for subtask in sorted(set(levels_a) | set(levels_b))
            if levels_a.get(subtask) != levels_b.get(subtask)
        }

        effective_a = effective_value(cell_a)
        effective_b = effective_value(cell_b)
        effective_change = None if effective_a == effective_b else (effective_a, effective_b)
        deltas.append(
            CellDelta(
                category_id=cell_a.category_id,
                main_task_id=cell_a.main_task_id,
                applicability_change=applicability_change,
                level_changes=level_changes,
                effective_change=effective_change,
            )
        )
    return ModelDiff(model_a=a.id, model_b=b.id, deltas=tuple(deltas))
