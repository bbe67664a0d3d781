"""Strategic planning toolkit for distributed security operations centers.

The package models an IT landscape as function groups with security-control
assignments, abstracts them into categories, scores the category/SOC-task
relationship matrix, supports internal/external work-division models, and
derives provider statements of work from those models.
"""

from socplan.landscape import (
    CONTROLS,
    Category,
    ControlAssignment,
    ControlKind,
    FunctionGroup,
    Landscape,
    RelevanceLevel,
    control_task,
    validate_landscape,
)

__version__ = "0.1.0"

__all__ = [
    "CONTROLS",
    "Category",
    "ControlAssignment",
    "ControlKind",
    "FunctionGroup",
    "Landscape",
    "RelevanceLevel",
    "control_task",
    "validate_landscape",
]
