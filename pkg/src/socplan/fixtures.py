"""Access to the bundled sample plan (a mid-size news publisher's SOC case)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from socplan.planio import PlanDocument, parse_plan

SAMPLE_PLAN = "sample_plan.json"


def sample_plan_path() -> Path:
    return Path(str(resources.files("socplan") / "data" / SAMPLE_PLAN))


def sample_plan_bytes() -> bytes:
    return (resources.files("socplan") / "data" / SAMPLE_PLAN).read_bytes()


def load_sample_plan() -> PlanDocument:
    document, diagnostics = parse_plan(sample_plan_bytes())
    if document is None:
        raise RuntimeError(
            "bundled sample plan failed to parse: "
            + "; ".join(d.format() for d in diagnostics)
        )
    return document
