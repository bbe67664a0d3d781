"""Validation diagnostics shared by all modules.

Validators return diagnostics instead of raising so a whole document can be
checked in one pass and every problem reported with its location.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


@dataclass(frozen=True)
class Diagnostic:
    """One finding: a stable code, a document path, and a human message."""

    severity: Severity
    code: str
    path: str
    message: str

    def format(self) -> str:
        return f"{self.severity.value}[{self.code}] {self.path}: {self.message}"


def error(code: str, path: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, path, message)


def warning(code: str, path: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.WARNING, code, path, message)


def info(code: str, path: str, message: str) -> Diagnostic:
    return Diagnostic(Severity.INFO, code, path, message)


def has_errors(diagnostics: Iterable[Diagnostic]) -> bool:
    return any(d.severity is Severity.ERROR for d in diagnostics)
