"""Command-line front door: every operation, scriptable and deterministic.

Data goes to stdout in the selected format; human prose and diagnostics go
to stderr. Exit codes: 0 success, 1 validation or domain errors, 2 usage
errors. ANSI styling on stderr is disabled when SOCPLAN_NO_COLOR is set.
"""

from __future__ import annotations

import json
import os
import sys
from datetime import datetime, timezone
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import click

from socplan.abstraction import suggest_categories
from socplan.diagnostics import Diagnostic, Severity, has_errors
from socplan.errors import SocPlanError
from socplan.involvement import diff_models
from socplan.planio import (
    EXPORT_FORMATS,
    PlanDocument,
    export_matrix,
    export_model_grid,
    parse_plan,
)
from socplan.scoring import discernibility, display_score, score_matrix
from socplan.sow import generate_sow

_SEVERITY_COLORS = {Severity.ERROR: "red", Severity.WARNING: "yellow", Severity.INFO: "cyan"}


def _use_color() -> bool:
    return not os.environ.get("SOCPLAN_NO_COLOR") and sys.stderr.isatty()


def _emit_diagnostic(diag: Diagnostic) -> None:
    if _use_color():
        click.secho(diag.format(), err=True, fg=_SEVERITY_COLORS[diag.severity])
    else:
        click.echo(diag.format(), err=True)


def _load_plan(path: str, show_all: bool = False) -> PlanDocument:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        click.echo(f"cannot read plan file: {exc}", err=True)
        raise SystemExit(1)
    document, diagnostics = parse_plan(data)
    for diag in diagnostics:
        if show_all or diag.severity is Severity.ERROR:
            _emit_diagnostic(diag)
    if document is None:
        raise SystemExit(1)
    return document


def _stamp_line() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@click.group()
def main() -> None:
    """Plan distributed security operations: score, model, and export."""


@main.command()
@click.argument("plan", type=click.Path())
def validate(plan: str) -> None:
    """Check a plan file; print all diagnostics to stderr."""
    try:
        data = Path(plan).read_bytes()
    except OSError as exc:
        click.echo(f"cannot read plan file: {exc}", err=True)
        raise SystemExit(1)
    document, diagnostics = parse_plan(data)
    for diag in diagnostics:
        _emit_diagnostic(diag)
    if document is None or has_errors(diagnostics):
        raise SystemExit(1)
    click.echo(
        f"ok: {len(document.landscape.groups)} groups, "
        f"{len(document.landscape.categories)} categories, "
        f"{len(document.models)} models",
        err=True,
    )


@main.command()
@click.argument("plan", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(EXPORT_FORMATS), default="md", show_default=True)
@click.option("--epsilon", type=float, default=0.5, show_default=True, help="Discernibility threshold.")
@click.option("--stamp", is_flag=True, help="Include a generation timestamp in the output.")
def score(plan: str, fmt: str, epsilon: float, stamp: bool) -> None:
    """Score the relationship matrix and report category discernibility."""
    document = _load_plan(plan)
    matrix = score_matrix(document.landscape, document.taxonomy)
    flagged = discernibility(matrix, Fraction(epsilon).limit_denominator(10**6))
    names = {row.category_id: row.display_name for row in matrix.rows}

    if fmt == "json-lines":
        sys.stdout.buffer.write(export_matrix(matrix, fmt))
        records = [
            {
                "type": "discernibility",
                "epsilon": epsilon,
                "flagged": [
                    {
                        "categories": [pair.category_a, pair.category_b],
                        "distance": display_score(pair.distance),
                    }
                    for pair in flagged
                ],
            }
        ]
        records += [
            {"type": "annotation", "id": a.id, "path": a.path, "text": a.text}
            for a in document.meta.annotations
        ]
        if stamp:
            records.append({"type": "stamp", "generated": _stamp_line()})
        for record in records:
            click.echo(json.dumps(record, ensure_ascii=False, sort_keys=True))
        return

    sys.stdout.buffer.write(export_matrix(matrix, fmt))
    if fmt == "md":
        lines = ["", f"Discernibility at epsilon {epsilon}:"]
        if flagged:
            lines += [
                f"- {names[p.category_a]} vs {names[p.category_b]}: "
                f"distance {display_score(p.distance)}"
                for p in flagged
            ]
        else:
            lines.append("- all category pairs discernible")
        for annotation in document.meta.annotations:
            lines.append(f"- note [{annotation.id}]: {annotation.text}")
        if stamp:
            lines.append(f"- generated: {_stamp_line()}")
        click.echo("\n".join(lines))
    else:
        if flagged:
            for pair in flagged:
                click.echo(
                    f"discernibility: {names[pair.category_a]} vs {names[pair.category_b]} "
                    f"closer than {epsilon} (distance {display_score(pair.distance)})",
                    err=True,
                )
        else:
            click.echo(f"discernibility: all category pairs discernible at {epsilon}", err=True)
        for annotation in document.meta.annotations:
            click.echo(f"note [{annotation.id}]: {annotation.text}", err=True)


def _rand_index(parts_a: list[set[str]], parts_b: list[set[str]], ids: list[str]) -> tuple[int, int]:
    def together(parts: list[set[str]], x: str, y: str) -> bool:
        return any(x in part and y in part for part in parts)

    agreeing = sum(
        1
        for x, y in combinations(sorted(ids), 2)
        if together(parts_a, x, y) == together(parts_b, x, y)
    )
    total = len(ids) * (len(ids) - 1) // 2
    return agreeing, total


@main.command("suggest-categories")
@click.argument("plan", type=click.Path())
@click.option("--k", type=int, required=True, help="Number of categories to suggest.")
def suggest_categories_cmd(plan: str, k: int) -> None:
    """Suggest an advisory partition and compare it to the stored one."""
    document = _load_plan(plan)
    suggestion = suggest_categories(document.landscape, k)
    for part in suggestion.parts:
        click.echo(
            json.dumps(
                {
                    "type": "part",
                    "members": list(part.members),
                    "trace": [
                        {
                            "left": list(step.left),
                            "right": list(step.right),
                            "average_similarity": str(step.average_similarity),
                        }
                        for step in part.trace
                    ],
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    if document.landscape.categories:
        stored = [set(c.members) for c in document.landscape.categories]
        suggested = [set(p.members) for p in suggestion.parts]
        ids = [g.id for g in document.landscape.groups]
        agreeing, total = _rand_index(stored, suggested, ids)
        click.echo(
            json.dumps(
                {
                    "type": "agreement",
                    "agreeing_pairs": agreeing,
                    "total_pairs": total,
                    "rand_index": f"{agreeing / total:.4f}" if total else "1.0000",
                },
                sort_keys=True,
            )
        )


@main.group()
def model() -> None:
    """Inspect and compare involvement models."""


@model.command("show")
@click.argument("plan", type=click.Path())
@click.option("--model", "model_id", required=True)
@click.option("--format", "fmt", type=click.Choice(EXPORT_FORMATS), default="md", show_default=True)
def model_show(plan: str, model_id: str, fmt: str) -> None:
    """Render one model's grid."""
    document = _load_plan(plan)
    chosen = document.model(model_id)
    if chosen is None:
        click.echo(f"no model with id {model_id!r}", err=True)
        raise SystemExit(1)
    sys.stdout.buffer.write(export_model_grid(chosen, document.landscape, document.taxonomy, fmt))


@model.command("diff")
@click.argument("plan", type=click.Path())
@click.option("--a", "model_a", required=True)
@click.option("--b", "model_b", required=True)
def model_diff(plan: str, model_a: str, model_b: str) -> None:
    """Per-cell delta report between two models (json-lines)."""
    document = _load_plan(plan)
    first, second = document.model(model_a), document.model(model_b)
    if first is None or second is None:
        missing = model_a if first is None else model_b
        click.echo(f"no model with id {missing!r}", err=True)
        raise SystemExit(1)
    delta = diff_models(first, second)
    changed = 0
    for cell in delta.deltas:
        changed += cell.changed
        click.echo(
            json.dumps(
                {
                    "type": "delta",
                    "category": cell.category_id,
                    "task": cell.main_task_id,
                    "changed": cell.changed,
                    "applicability": (
                        [cell.applicability_change[0].value, cell.applicability_change[1].value]
                        if cell.applicability_change
                        else None
                    ),
                    "levels": {
                        subtask: [old.value if old else None, new.value if new else None]
                        for subtask, (old, new) in sorted(cell.level_changes.items())
                    },
                    "effective": (
                        [
                            float(cell.effective_change[0]) if cell.effective_change[0] is not None else None,
                            float(cell.effective_change[1]) if cell.effective_change[1] is not None else None,
                        ]
                        if cell.effective_change
                        else None
                    ),
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    click.echo(f"{changed} of {len(delta.deltas)} cells changed", err=True)


@main.command()
@click.argument("plan", type=click.Path())
@click.option("--model", "model_id", required=True)
@click.option("--out", type=click.Path(), required=True)
@click.option("--stamp", is_flag=True, help="Append a generation timestamp to the document.")
def sow(plan: str, model_id: str, out: str, stamp: bool) -> None:
    """Generate the statement of work for a model and write it to a file."""
    document = _load_plan(plan)
    chosen = document.model(model_id)
    if chosen is None:
        click.echo(f"no model with id {model_id!r}", err=True)
        raise SystemExit(1)
    rendered = generate_sow(
        chosen, document.landscape, document.template_set(), document.taxonomy
    ).to_markdown()
    if stamp:
        rendered += f"\nGenerated: {_stamp_line()}\n"
    Path(out).write_text(rendered, encoding="utf-8")
    click.echo(f"wrote statement of work for {model_id!r} to {out}", err=True)


@main.command()
@click.argument("plan", type=click.Path())
@click.option("--port", type=int, default=8700, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--ui", "ui_dir", type=click.Path(), default=None, help="Static UI directory to serve at /.")
def serve(plan: str, port: int, host: str, ui_dir: str | None) -> None:
    """Serve the plan over HTTP for the workshop UI."""
    import uvicorn

    from socplan.service import create_app

    _load_plan(plan)  # fail fast with diagnostics before binding the port
    app = create_app(Path(plan), ui_dir=Path(ui_dir) if ui_dir else None)
    uvicorn.run(app, host=host, port=port, log_level="info")


def run(argv: list[str] | None = None) -> int:
    """Invoke the CLI programmatically; returns the exit code."""
    try:
        main.main(args=argv, standalone_mode=False)
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 2
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return exc.exit_code
    except click.exceptions.Abort:
        return 1
    except SystemExit as exc:
        return int(exc.code or 0)
    except SocPlanError as exc:
        click.echo(f"error[{exc.code}]: {exc.message}", err=True)
        return 1
    return 0


def entry() -> None:
    sys.exit(run())


if __name__ == "__main__":
    entry()
