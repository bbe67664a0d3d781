"""Relationship-matrix scoring and the category discernibility check.

Score per group and SOC task: 2 points for a primary control on that task,
1 point per secondary control on it, the sum multiplied by the group's
relevance factor. A category's cell is the mean over its member groups.
Only the SIEM and baseline-security columns are scored; the other three main
tasks have no control assignments to score. Scores stay exact rationals;
one-decimal rounding happens only at display time.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from itertools import combinations

from socplan.errors import NoPartitionError
from socplan.involvement import SocTaskTaxonomy, default_taxonomy
from socplan.landscape import BASELINE_TASK, SIEM_TASK, FunctionGroup, Landscape, control_task

SCORED_TASKS = (SIEM_TASK, BASELINE_TASK)


def group_points(group: FunctionGroup, task: str) -> int:
    """Relevance-weighted control points of one group for one scored task."""
    points = 2 if control_task(group.assignment.primary) == task else 0
    points += sum(1 for token in group.assignment.secondary if control_task(token) == task)
    return points * group.relevance.factor


@dataclass(frozen=True)
class ScoreCell:
    category_id: str
    task: str
    raw_sum: Fraction
    member_count: int

    @property
    def score(self) -> Fraction:
        return self.raw_sum / self.member_count


@dataclass(frozen=True)
class MatrixRow:
    category_id: str
    display_name: str


@dataclass(frozen=True)
class RelationshipMatrix:
    """Categories x SOC main tasks; cells only on the two scored columns."""

    rows: tuple[MatrixRow, ...]
    columns: tuple[str, ...]
    column_names: tuple[str, ...]
    cells: dict[tuple[str, str], ScoreCell]

    def cell(self, category_id: str, task: str) -> ScoreCell | None:
        return self.cells.get((category_id, task))


def score_matrix(landscape: Landscape, taxonomy: SocTaskTaxonomy | None = None) -> RelationshipMatrix:
    """Score every category against SIEM and baseline security.

    Requires a category partition; raises NoPartitionError without one.
    """
    if not landscape.categories:
        raise NoPartitionError("landscape has no category partition to score")
    taxonomy = taxonomy or default_taxonomy()

    cells: dict[tuple[str, str], ScoreCell] = {}
    rows: list[MatrixRow] = []
    for category in landscape.categories:
        rows.append(MatrixRow(category.id, category.display_name))
        members = [landscape.group(m) for m in category.members]
        for task in SCORED_TASKS:
            raw = Fraction(sum(group_points(g, task) for g in members if g is not None))
            cells[(category.id, task)] = ScoreCell(
                category_id=category.id,
                task=task,
                raw_sum=raw,
                member_count=len(category.members),
            )
    return RelationshipMatrix(
        rows=tuple(rows),
        columns=tuple(t.id for t in taxonomy.main_tasks),
        column_names=tuple(t.name for t in taxonomy.main_tasks),
        cells=cells,
    )


def display_score(value: Fraction) -> str:
    """One-decimal display rounding, half away from zero (14/3 -> "4.7")."""
    dec = Decimal(value.numerator) / Decimal(value.denominator)
    return str(dec.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


@dataclass(frozen=True)
class PairDistance:
    category_a: str
    category_b: str
    distance: Fraction


def row_distance(matrix: RelationshipMatrix, a: str, b: str) -> Fraction:
    """Max absolute score difference between two category rows over the scored columns."""
    return max(
        abs(matrix.cells[(a, task)].score - matrix.cells[(b, task)].score)
        for task in SCORED_TASKS
    )


def discernibility(matrix: RelationshipMatrix, epsilon: Fraction | float) -> list[PairDistance]:
    """All category pairs closer than epsilon; empty means all discernible."""
    flagged = []
    for row_a, row_b in combinations(matrix.rows, 2):
        distance = row_distance(matrix, row_a.category_id, row_b.category_id)
        if distance < epsilon:
            flagged.append(PairDistance(row_a.category_id, row_b.category_id, distance))
    return flagged
