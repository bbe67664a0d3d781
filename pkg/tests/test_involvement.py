from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from socplan.diagnostics import Severity
from socplan.errors import GridMismatchError, IncompleteCellError
from socplan.involvement import (
    Applicability,
    CellAssignment,
    ContributionLevel,
    InvolvementValue,
    default_taxonomy,
    diff_models,
    effective_value,
    suggest_value,
    validate_model,
)

from .strategies import landscapes, models, taxonomies

I, IE, EI, E = ContributionLevel  # noqa: E741


def test_default_taxonomy_shape():
    taxonomy = default_taxonomy()
    assert [t.id for t in taxonomy.main_tasks] == [
        "intelligence",
        "siem",
        "baseline-security",
        "forensics",
        "pentests",
    ]
    subtasks = {t.id: [s.id for s in t.subtasks] for t in taxonomy.main_tasks}
    assert subtasks == {
        "intelligence": ["KM", "RA"],
        "siem": ["Mo", "DC", "S"],
        "baseline-security": ["Vu", "CS"],
        "forensics": ["DA", "In", "CR"],
        "pentests": ["Pl", "Ex"],
    }


def test_value_scale_bijection():
    assert {v.value: v.label for v in InvolvementValue} == {
        0.1: "marginal",
        0.3: "low",
        0.5: "equivalent",
        0.7: "predominant",
        0.9: "central",
    }


@pytest.mark.parametrize(
    "pattern, expected",
    [
        ([I, I], 0.1),
        ([IE, E], 0.7),  # mean 0.6, midpoint rounds toward external
        ([E, E, EI], 0.9),  # mean ~0.833
        ([EI, EI, IE], 0.5),  # mean ~0.567
        ([IE, I], 0.3),  # mean 0.2, midpoint rounds up
        ([IE, I, I], 0.1),  # mean ~0.167
        ([I, IE, IE], 0.3),
        ([IE, EI, EI], 0.5),
        ([E, EI], 0.9),  # mean 0.8, midpoint rounds up
        ([EI, E, EI], 0.7),
        ([EI, IE], 0.5),
        ([IE, EI, IE], 0.5),
        ([IE, IE, EI], 0.5),
        ([EI, IE, EI], 0.5),
        ([E, EI, EI], 0.7),
    ],
)
def test_suggest_value_calibration(pattern, expected):
    assert suggest_value(pattern) == InvolvementValue(expected)


def test_suggest_value_rejects_empty_list():
    with pytest.raises(ValueError):
        suggest_value([])


@given(st.lists(st.sampled_from(list(ContributionLevel)), min_size=1, max_size=6), st.randoms(use_true_random=False))
def test_suggest_value_permutation_invariant(levels, rng):
    shuffled = list(levels)
    rng.shuffle(shuffled)
    assert suggest_value(levels) == suggest_value(shuffled)


@given(st.lists(st.sampled_from(list(ContributionLevel)), min_size=1, max_size=6), st.data())
def test_suggest_value_monotone(levels, data):
    index = data.draw(st.integers(min_value=0, max_value=len(levels) - 1))
    current = levels[index]
    if current is ContributionLevel.E:
        return
    raised = list(levels)
    raised[index] = list(ContributionLevel)[current.rank + 1]
    assert suggest_value(raised).value >= suggest_value(levels).value


@pytest.mark.parametrize(
    "level, expected", [(I, 0.1), (IE, 0.3), (EI, 0.7), (E, 0.9)]
)
@pytest.mark.parametrize("length", [1, 2, 3, 5])
def test_suggest_value_constant_lists(level, expected, length):
    assert suggest_value([level] * length) == InvolvementValue(expected)


def _cell(levels=None, override=None, applicability=Applicability.APPLICABLE, rationale=""):
    return CellAssignment(
        category_id="c",
        main_task_id="siem",
        applicability=applicability,
        subtask_levels=levels,
        override_value=override,
        rationale=rationale,
    )


def test_effective_value_prefers_override():
    cell = _cell(levels={"Mo": E, "DC": EI}, override=InvolvementValue.PREDOMINANT)
    assert effective_value(cell) == InvolvementValue.PREDOMINANT


def test_effective_value_suggests_without_override():
    assert effective_value(_cell(levels={"Mo": I, "DC": I})) == InvolvementValue.MARGINAL


def test_effective_value_passes_through_not_applicable():
    cell = _cell(applicability=Applicability.NOT_APPLICABLE, rationale="excluded")
    assert effective_value(cell) is None


def test_effective_value_incomplete_cell_errors():
    with pytest.raises(IncompleteCellError):
        effective_value(_cell())


def test_fixture_status_quo_validates_clean(sample_doc):
    model = sample_doc.model("status-quo")
    assert validate_model(model, sample_doc.landscape, sample_doc.taxonomy) == []


def test_fixture_max_external_has_three_override_notes(sample_doc):
    diags = validate_model(
        sample_doc.model("max-external"), sample_doc.landscape, sample_doc.taxonomy
    )
    overrides = [d for d in diags if d.code == "override"]
    assert len(overrides) == 3
    assert all(d.severity is Severity.INFO for d in overrides)
    assert not any(d.code == "override-deviation" for d in diags)


def test_fixture_plan_target_has_four_override_notes(sample_doc):
    diags = validate_model(
        sample_doc.model("plan-target"), sample_doc.landscape, sample_doc.taxonomy
    )
    assert len([d for d in diags if d.code == "override"]) == 4
    assert not any(d.severity is Severity.ERROR for d in diags)


def test_missing_cell_is_incomplete_grid(sample_doc):
    model = sample_doc.model("status-quo")
    trimmed = type(model)(
        id=model.id, name=model.name, description=model.description, cells=model.cells[:-1]
    )
    diags = validate_model(trimmed, sample_doc.landscape, sample_doc.taxonomy)
    assert [d.code for d in diags] == ["incomplete-grid"]


def test_na_without_rationale_flagged(sample_doc):
    model = sample_doc.model("status-quo")
    cells = tuple(
        CellAssignment(c.category_id, c.main_task_id, c.applicability, c.subtask_levels, c.override_value, "")
        if c.applicability is Applicability.NOT_APPLICABLE
        else c
        for c in model.cells
    )
    bad = type(model)(id=model.id, name=model.name, description="", cells=cells)
    diags = validate_model(bad, sample_doc.landscape, sample_doc.taxonomy)
    assert [d.code for d in diags] == ["na-missing-rationale"]


def test_large_override_deviation_warns(sample_doc):
    model = sample_doc.model("status-quo")
    cells = list(model.cells)
    target = next(
        i
        for i, c in enumerate(cells)
        if c.category_id == "ot" and c.main_task_id == "siem"
    )
    cells[target] = CellAssignment(
        "ot", "siem", Applicability.APPLICABLE, {"Mo": I, "DC": I, "S": I}, InvolvementValue.CENTRAL, "big jump"
    )
    doctored = type(model)(id=model.id, name=model.name, description="", cells=tuple(cells))
    diags = validate_model(doctored, sample_doc.landscape, sample_doc.taxonomy)
    assert {d.code for d in diags} == {"override", "override-deviation"}
    assert any(d.severity is Severity.WARNING for d in diags)


def test_unknown_subtask_level_flagged(sample_doc):
    model = sample_doc.model("status-quo")
    cells = list(model.cells)
    cells[0] = CellAssignment(
        cells[0].category_id,
        cells[0].main_task_id,
        Applicability.APPLICABLE,
        dict(cells[0].subtask_levels) | {"Zz": I},
        None,
        "",
    )
    diags = validate_model(
        type(model)(id=model.id, name=model.name, description="", cells=tuple(cells)),
        sample_doc.landscape,
        sample_doc.taxonomy,
    )
    assert [d.code for d in diags] == ["unknown-subtask"]


def test_diff_with_self_is_all_unchanged(sample_doc):
    model = sample_doc.model("status-quo")
    diff = diff_models(model, model)
    assert all(not delta.changed for delta in diff.deltas)
    assert len(diff.deltas) == len(model.cells)


def test_diff_status_quo_to_plan_target_infra_siem(sample_doc):
    diff = diff_models(sample_doc.model("status-quo"), sample_doc.model("plan-target"))
    delta = next(
        d for d in diff.deltas if d.category_id == "infra" and d.main_task_id == "siem"
    )
    assert delta.changed
    assert delta.level_changes == {"Mo": (IE, EI), "DC": (IE, EI), "S": (I, IE)}
    assert delta.effective_change == (InvolvementValue.LOW, InvolvementValue.PREDOMINANT)


def test_diff_ot_pentests_stays_not_applicable(sample_doc):
    diff = diff_models(sample_doc.model("status-quo"), sample_doc.model("max-external"))
    delta = next(
        d for d in diff.deltas if d.category_id == "ot" and d.main_task_id == "pentests"
    )
    assert not delta.changed
    assert delta.applicability_change is None


def test_diff_grid_mismatch_errors(sample_doc):
    model = sample_doc.model("status-quo")
    trimmed = type(model)(id="t", name="t", description="", cells=model.cells[:-1])
    with pytest.raises(GridMismatchError):
        diff_models(model, trimmed)


@given(st.data())
def test_diff_is_sign_symmetric(data):
    scene = data.draw(landscapes(min_groups=1, max_groups=4))
    taxonomy = data.draw(taxonomies())
    model_a = data.draw(models(scene, taxonomy, model_id="a"))
    model_b = data.draw(models(scene, taxonomy, model_id="b"))
    forward = diff_models(model_a, model_b)
    backward = diff_models(model_b, model_a)
    back = {(d.category_id, d.main_task_id): d for d in backward.deltas}
    for delta in forward.deltas:
        mirror = back[(delta.category_id, delta.main_task_id)]
        assert delta.changed == mirror.changed
        if delta.effective_change:
            assert mirror.effective_change == tuple(reversed(delta.effective_change))
        assert {k: (b, a) for k, (a, b) in delta.level_changes.items()} == dict(mirror.level_changes)
