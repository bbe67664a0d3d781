"""Statement-of-work generation: reversing the category abstraction.

Cells of an involvement model that share the same subtask level pattern and
the same effective value within a main task are merged into one section, so
equal duties are described once. Each section opens with a scope preamble
expanded from the member categories' stored descriptions, followed by one
clause per subtask chosen by its contribution level. N/A cells become
exclusion notes carrying their rationale.

Clause texts are data: a built-in template set covers every (subtask, level)
pair of the active taxonomy and can be replaced per pair through the plan
file. Templates may use the placeholders {category_names},
{system_descriptions}, and {subtask_name}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from socplan.abstraction import expand
from socplan.errors import TemplateGapError
from socplan.involvement import (
    Applicability,
    ContributionLevel,
    InvolvementModel,
    InvolvementValue,
    SocTaskTaxonomy,
    default_taxonomy,
    effective_value,
)
from socplan.landscape import Category, Landscape


@dataclass(frozen=True)
class ClauseTemplate:
    subtask_id: str
    level: ContributionLevel
    text: str


TemplateSet = Mapping[tuple[str, ContributionLevel], ClauseTemplate]

# Generic clause stems per contribution level; {duty} is a noun phrase.
_LEVEL_STEMS = {
    ContributionLevel.E: "The contractor independently carries out {duty}.",
    ContributionLevel.EI: (
        "The contractor leads {duty}; the client's staff supports and "
        "collaborates where internal access or system knowledge is required."
    ),
    ContributionLevel.IE: (
        "The client's internal staff leads {duty}; the contractor supports "
        "and collaborates with methods, tooling, and specialist expertise."
    ),
    ContributionLevel.I: (
        "The client's internal staff carries out {duty}; no contractor "
        "duties arise for this subtask."
    ),
}

_DUTIES = {
    "KM": (
        "the continuous development of security know-how for the covered "
        "systems, spanning state-of-the-art security knowledge and the "
        "specifics of the client's IT landscape"
    ),
    "RA": (
        "attack and risk analyses informing technical and organizational "
        "security planning for the covered systems"
    ),
    "Vu": (
        "vulnerability management for the covered systems, including the "
        "continuous tracking of public and vendor advisories and the "
        "remediation of findings through updates or reconfiguration"
    ),
    "CS": (
        "regular compliance scans of the covered systems against current "
        "security standards, including reporting on findings"
    ),
    "DA": "the forensic analysis of data collected on security incidents in the covered systems",
    "In": (
        "the investigation of security incidents affecting the covered "
        "systems, including the collection and preservation of digital evidence"
    ),
    "CR": "compliance reports on security incidents and on the security status of the covered systems",
    "Pl": (
        "the planning of penetration tests for the covered systems, "
        "including their type, scope, and timing"
    ),
    "Ex": "the execution of penetration tests against the agreed targets",
}

_ACCESS_SENTENCE = (
    "The client enables the data and/or physical access to the covered "
    "systems (protocols, ports, access authorizations) necessary to fulfil "
    "these tasks."
)

_INCIDENT_REPORT = (
    "In the event of a recognized security incident the contractor "
    "immediately provides the client with an incident report in a "
    "standardized form containing at least: i) type of incident, "
    "ii) affected systems, iii) criticality and risk assessment, "
    "iv) allowable reaction time, v) available information about the attacker."
)

# The operative-technical SIEM subtasks get fully authored texts per level.
_SIEM_TEXTS = {
    ("Mo", ContributionLevel.E): (
        "The contractor independently monitors the systems of "
        "{category_names} via all accessible standardized or proprietary "
        "interfaces, using its own monitoring technology. Monitoring covers "
        "at least i) the operational readiness of the monitored systems, "
        "ii) data traffic, and iii) access to their resources, from internal "
        "and external sources wherever possible and applicable. "
        + _ACCESS_SENTENCE
    ),
    ("Mo", ContributionLevel.EI): (
        "The contractor monitors the systems of {category_names} via all "
        "accessible standardized or proprietary interfaces, using its own "
        "monitoring technology. Monitoring covers at least i) the "
        "operational readiness of the monitored systems, ii) data traffic, "
        "and iii) access to their resources, from internal and external "
        "sources wherever possible and applicable. " + _ACCESS_SENTENCE + " "
        "The client's staff additionally supports the contractor with "
        "internal system knowledge."
    ),
    ("Mo", ContributionLevel.IE): (
        "The client's internal staff leads the monitoring of the systems of "
        "{category_names}; the contractor supplements it with its own "
        "sensors and monitoring data where systems are reachable without "
        "additional integration effort."
    ),
    ("Mo", ContributionLevel.I): (
        "Monitoring of the systems of {category_names} is carried out by "
        "the client's internal staff; no contractor duties arise for this subtask."
    ),
    ("DC", ContributionLevel.E): (
        "The contractor independently collects all accessible "
        "security-relevant data from the covered systems, such as logs, "
        "status messages actively queried as part of the monitoring, and "
        "error reports. The contractor structures the collected data and "
        "makes it available to the client in digital form on request."
    ),
    ("DC", ContributionLevel.EI): (
        "The contractor collects all accessible security-relevant data from "
        "the covered systems, such as logs, status messages actively "
        "queried as part of the monitoring, and error reports. The "
        "contractor structures the collected data and makes it available to "
        "the client in digital form on request; the client's staff supports "
        "the collection where internal access is required."
    ),
    ("DC", ContributionLevel.IE): (
        "The client's internal staff leads the systematic collection of "
        "security data from the covered systems; the contractor contributes "
        "automated feeds and reports from systems it already manages or can "
        "reach without additional effort."
    ),
    ("DC", ContributionLevel.I): (
        "Collection of security data from the covered systems is carried "
        "out by the client's internal staff; no contractor duties arise for "
        "this subtask."
    ),
    ("S", ContributionLevel.E): (
        "The contractor operates a state-of-the-art SEM system to identify "
        "current security threats and possible attacks on the monitored "
        "systems, and autonomously specifies and, as far as possible, "
        "implements the reaction to recognized incidents. " + _INCIDENT_REPORT
    ),
    ("S", ContributionLevel.EI): (
        "The contractor operates a state-of-the-art SEM system to identify "
        "current security threats and possible attacks on the monitored "
        "systems, alerts the client, and specifies the reaction to "
        "recognized incidents; the client's staff implements reactions "
        "where internal access limits the contractor. " + _INCIDENT_REPORT
    ),
    ("S", ContributionLevel.IE): (
        "The contractor operates a state-of-the-art SEM system to identify "
        "current security threats and possible attacks on the monitored "
        "systems. " + _INCIDENT_REPORT + " The client's internal staff "
        "leads the response to security incidents; the contractor supports "
        "the mitigation of identified incidents by proposing methods and "
        "step-by-step measures in a form that the client's staff can "
        "readily understand and implement. Highly available and responsive "
        "support by the contractor is expected."
    ),
    ("S", ContributionLevel.I): (
        "Detection of and reaction to security events for the covered "
        "systems are carried out by the client's internal staff; no "
        "contractor duties arise for this subtask."
    ),
}


def default_templates(taxonomy: SocTaskTaxonomy | None = None) -> dict[tuple[str, ContributionLevel], ClauseTemplate]:
    """Built-in clause templates covering every (subtask, level) pair."""
    taxonomy = taxonomy or default_taxonomy()
    templates: dict[tuple[str, ContributionLevel], ClauseTemplate] = {}
    for task in taxonomy.main_tasks:
        for subtask in task.subtasks:
            for level in ContributionLevel:
                key = (subtask.id, level)
                if key in _SIEM_TEXTS:
                    text = _SIEM_TEXTS[key]
                elif subtask.id in _DUTIES:
                    text = _LEVEL_STEMS[level].format(duty=_DUTIES[subtask.id])
                else:
                    text = _LEVEL_STEMS[level].format(duty="the subtask {subtask_name}")
                templates[key] = ClauseTemplate(subtask.id, level, text)
    return templates


@dataclass(frozen=True)
class MergedCell:
    """Categories of one main task sharing a level pattern and effective value."""

    category_ids: tuple[str, ...]
    levels: Mapping[str, ContributionLevel]
    effective: InvolvementValue


@dataclass(frozen=True)
class MergedTask:
    task_id: str
    parts: tuple[MergedCell, ...]
    excluded: tuple[tuple[str, str], ...]  # (category_id, rationale)


def merge_cells(model: InvolvementModel, task_id: str) -> MergedTask:
    """Partition a task's applicable categories by identical duty profile.

    Merging requires both the same per-subtask levels and the same effective
    value, so an override splits otherwise equal patterns. N/A categories are
    excluded and reported separately with their rationale.
    """
    parts: dict[tuple, list[str]] = {}
    patterns: dict[tuple, tuple[Mapping[str, ContributionLevel], InvolvementValue]] = {}
    excluded: list[tuple[str, str]] = []
    for cell in model.cells:
        if cell.main_task_id != task_id:
            continue
        if cell.applicability is Applicability.NOT_APPLICABLE:
            excluded.append((cell.category_id, cell.rationale))
            continue
        levels = dict(cell.subtask_levels or {})
        effective = effective_value(cell)
        assert effective is not None
        key = (tuple(sorted(levels.items())), effective)
        parts.setdefault(key, []).append(cell.category_id)
        patterns[key] = (levels, effective)
    return MergedTask(
        task_id=task_id,
        parts=tuple(
            MergedCell(tuple(members), patterns[key][0], patterns[key][1])
            for key, members in parts.items()
        ),
        excluded=tuple(excluded),
    )


@dataclass(frozen=True)
class SowClause:
    subtask_id: str
    subtask_name: str
    level: ContributionLevel
    text: str

    @property
    def contractor_duty(self) -> bool:
        """Clauses above level I place duties on the contractor."""
        return self.level is not ContributionLevel.I


@dataclass(frozen=True)
class SowBlock:
    category_ids: tuple[str, ...]
    heading: str
    effective: InvolvementValue
    scope_lines: tuple[str, ...]
    clauses: tuple[SowClause, ...]


@dataclass(frozen=True)
class SowExclusion:
    category_id: str
    category_name: str
    rationale: str


@dataclass(frozen=True)
class SowSection:
    task_id: str
    task_name: str
    blocks: tuple[SowBlock, ...]
    exclusions: tuple[SowExclusion, ...]


@dataclass(frozen=True)
class SowDocument:
    model_id: str
    model_name: str
    sections: tuple[SowSection, ...]

    def to_markdown(self) -> str:
        lines: list[str] = [f"# Statement of Work: {self.model_name}", ""]
        for section in self.sections:
            lines += [f"## {section.task_name}", ""]
            for block in section.blocks:
                lines += [f"### {block.heading}", ""]
                lines.append(
                    f"External involvement: {block.effective.value:.1f} ({block.effective.label})"
                )
                lines += ["", "Scope:"]
                lines.extend(block.scope_lines)
                lines += ["", "Provisions:"]
                for i, clause in enumerate(block.clauses, start=1):
                    lines.append(f"{i}. [{clause.subtask_name}, {clause.level.value}] {clause.text}")
                lines.append("")
            if section.exclusions:
                lines.append("Excluded from this task:")
                for exclusion in section.exclusions:
                    lines.append(f"- {exclusion.category_name}: {exclusion.rationale}")
                lines.append("")
        return "\n".join(lines)


class _LenientFormat(dict):
    """Leave unknown placeholders literal instead of raising."""

    def __missing__(self, key: str) -> str:
        return "{" + key + "}"


def _category_heading(category: Category) -> str:
    if category.short_name and category.short_name != category.name:
        return f"{category.name} ({category.short_name})"
    return category.name


def generate_sow(
    model: InvolvementModel,
    landscape: Landscape,
    templates: TemplateSet | None = None,
    taxonomy: SocTaskTaxonomy | None = None,
) -> SowDocument:
    """Derive a statement of work from an involvement model.

    Deterministic: main tasks in taxonomy order, merged category sets in
    category label order, clauses in subtask order. Raises TemplateGapError
    if the template set misses any (subtask, level) pair of the taxonomy.
    """
    taxonomy = taxonomy or default_taxonomy()
    templates = default_templates(taxonomy) if templates is None else templates

    for task in taxonomy.main_tasks:
        for subtask in task.subtasks:
            for level in ContributionLevel:
                if (subtask.id, level) not in templates:
                    raise TemplateGapError(
                        f"no clause template for subtask {subtask.id!r} at level {level.value}"
                    )

    labels = {c.id: c.label for c in landscape.categories}
    sections: list[SowSection] = []
    for task in taxonomy.main_tasks:
        merged = merge_cells(model, task.id)
        blocks: list[SowBlock] = []
        for part in sorted(merged.parts, key=lambda p: min(labels[c] for c in p.category_ids)):
            member_ids = sorted(part.category_ids, key=lambda c: labels[c])
            categories = [landscape.category(c) for c in member_ids]
            names = [_category_heading(c) for c in categories if c is not None]
            scope_lines: list[str] = []
            group_names: list[str] = []
            for category in categories:
                if category is None:
                    continue
                scope_lines.append(f"- {_category_heading(category)}: {category.description}")
                for detail in expand(category, landscape):
                    scope_lines.append(f"  - {detail.name}: {detail.description}")
                    group_names.append(detail.name)
            context = _LenientFormat(
                category_names=" and ".join(names),
                system_descriptions="; ".join(group_names),
            )
            clauses: list[SowClause] = []
            for subtask in task.subtasks:
                level = part.levels.get(subtask.id)
                if level is None:
                    continue
                template = templates[(subtask.id, level)]
                context["subtask_name"] = subtask.name
                clauses.append(
                    SowClause(
                        subtask_id=subtask.id,
                        subtask_name=subtask.name,
                        level=level,
                        text=template.text.format_map(context),
                    )
                )
            blocks.append(
                SowBlock(
                    category_ids=tuple(member_ids),
                    heading=" + ".join(names),
                    effective=part.effective,
                    scope_lines=tuple(scope_lines),
                    clauses=tuple(clauses),
                )
            )
        exclusions = tuple(
            SowExclusion(
                category_id=category_id,
                category_name=_category_heading(landscape.category(category_id))
                if landscape.category(category_id)
                else category_id,
                rationale=rationale,
            )
            for category_id, rationale in sorted(
                merged.excluded, key=lambda pair: labels.get(pair[0], pair[0])
            )
        )
        sections.append(
            SowSection(task_id=task.id, task_name=task.name, blocks=tuple(blocks), exclusions=exclusions)
        )
    return SowDocument(model_id=model.id, model_name=model.name, sections=tuple(sections))
