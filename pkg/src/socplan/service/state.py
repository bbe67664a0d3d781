"""In-memory plan session with optimistic concurrency.

The loaded plan is an immutable value replaced wholesale on every accepted
mutation, so concurrent readers always see a consistent snapshot. Writers
compare-and-swap against the revision they read; a mismatch means another
mutation landed first and the caller gets the current revision back.
"""

from __future__ import annotations

import threading
from pathlib import Path

from socplan.planio import PlanDocument, serialize_plan


class StaleRevisionError(Exception):
    def __init__(self, current_revision: int):
        super().__init__(f"expected revision is stale; current is {current_revision}")
        self.current_revision = current_revision


class PlanSession:
    def __init__(self, document: PlanDocument, plan_path: Path):
        self._lock = threading.Lock()
        self._document = document
        self._revision = 1
        self.plan_path = plan_path

    @property
    def snapshot(self) -> tuple[PlanDocument, int]:
        with self._lock:
            return self._document, self._revision

    def replace(self, expected_revision: int, document: PlanDocument) -> int:
        """Swap in a new document iff the revision still matches."""
        with self._lock:
            if self._revision != expected_revision:
                raise StaleRevisionError(self._revision)
            self._document = document
            self._revision += 1
            return self._revision

    def save(self) -> tuple[Path, int]:
        """Write the current document canonically back to its plan file."""
        with self._lock:
            document, revision = self._document, self._revision
        tmp_path = self.plan_path.with_suffix(self.plan_path.suffix + ".tmp")
        tmp_path.write_bytes(serialize_plan(document))
        tmp_path.replace(self.plan_path)
        return self.plan_path, revision
