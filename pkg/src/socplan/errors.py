"""Domain errors with stable machine-readable codes."""

from __future__ import annotations


class SocPlanError(Exception):
    """Base class for domain errors; ``code`` is stable for machine use."""

    code = "error"

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class UnknownControlError(SocPlanError):
    code = "unknown-control"


class InvalidKError(SocPlanError):
    code = "invalid-k"


class UnresolvedMemberError(SocPlanError):
    code = "unresolved-member"


class NoPartitionError(SocPlanError):
    code = "no-partition"


class IncompleteCellError(SocPlanError):
    code = "incomplete-cell"


class GridMismatchError(SocPlanError):
    code = "grid-mismatch"


class TemplateGapError(SocPlanError):
    code = "template-gap"


class UnknownFormatError(SocPlanError):
    code = "unknown-format"
