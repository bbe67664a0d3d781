from __future__ import annotations

import pytest

from socplan.fixtures import load_sample_plan, sample_plan_bytes
from socplan.planio import PlanDocument, parse_plan


@pytest.fixture(scope="session")
def sample_doc() -> PlanDocument:
    return load_sample_plan()


@pytest.fixture(scope="session")
def sample_diagnostics():
    document, diagnostics = parse_plan(sample_plan_bytes())
    assert document is not None
    return diagnostics


@pytest.fixture(scope="session")
def landscape(sample_doc):
    return sample_doc.landscape
