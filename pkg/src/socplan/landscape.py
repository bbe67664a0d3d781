"""Core domain types for the security-centric view of an IT landscape.

A landscape is a set of *function groups* (strategic clusters of IT elements,
not live inventories), each carrying a primary security control, up to two
secondary controls, and a relevance rating. Groups may be partitioned into
*categories*, the abstraction level on which the SOC relationship matrix and
all sourcing models operate.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from socplan.diagnostics import Diagnostic, error
from socplan.errors import UnknownControlError

# Main-task ids of the two SOC tasks that security controls feed into.
SIEM_TASK = "siem"
BASELINE_TASK = "baseline-security"


class RelevanceLevel(str, Enum):
    """Relevance of a function group to security operations."""

    LOW = "Low"
    MEDIUM = "Medium"
    HIGH = "High"

    @property
    def factor(self) -> int:
        """Multiplier used by the relationship-matrix score."""
        return {"Low": 1, "Medium": 2, "High": 3}[self.value]


@dataclass(frozen=True)
class ControlKind:
    """One of the seven built-in security controls.

    ``soc_task`` names the SOC main task the control belongs to: the S.*
    controls feed SIEM, the B.* controls feed baseline security.
    """

    token: str
    display_name: str
    description: str
    soc_task: str


CONTROLS: dict[str, ControlKind] = {
    c.token: c
    for c in (
        ControlKind(
            "S.Com",
            "Communication Monitoring",
            "Intercepts and inspects traffic between network nodes for "
            "anomalies, from volume logging down to per-packet inspection.",
            SIEM_TASK,
        ),
        ControlKind(
            "S.Acc",
            "Access Monitoring",
            "Observes requests that trigger functions on a node, checking "
            "protocol-level access attempts for plausibility and anomalies.",
            SIEM_TASK,
        ),
        ControlKind(
            "S.App",
            "Application Monitoring",
            "Collects security-relevant events from business applications, "
            "mainly through application process logs and built-in scanners.",
            SIEM_TASK,
        ),
        ControlKind(
            "S.ID",
            "Intrusion Detection",
            "Combines communication, access, and endpoint data to detect "
            "breaches of system security.",
            SIEM_TASK,
        ),
        ControlKind(
            "B.Ept",
            "Endpoint Security",
            "Restricts user rights, hardens system and software "
            "configuration, and monitors clients during operation.",
            BASELINE_TASK,
        ),
        ControlKind(
            "B.Vuln",
            "Vulnerability Management",
            "Detects and eliminates security deficiencies via updates or "
            "reconfiguration, tracking external vulnerability sources.",
            BASELINE_TASK,
        ),
        ControlKind(
            "B.Peri",
            "Perimeter Security",
            "Restricts communication between network segments and filters "
            "unauthorized traffic, e.g. with firewalls and VPNs.",
            BASELINE_TASK,
        ),
    )
}


def control_task(token: str) -> str:
    """Return the SOC main-task id a control contributes to.

    Raises UnknownControlError for tokens outside the seven built-ins.
    """
    kind = CONTROLS.get(token)
    if kind is None:
        raise UnknownControlError(f"unknown security control {token!r}")
    return kind.soc_task


@dataclass(frozen=True)
class ControlAssignment:
    """Primary control plus an ordered list of at most two secondaries."""

    primary: str
    secondary: tuple[str, ...] = ()


@dataclass(frozen=True)
class FunctionGroup:
    """A security-coherent cluster of IT elements, e.g. network infrastructure."""

    id: str
    name: str
    description: str
    assignment: ControlAssignment
    relevance: RelevanceLevel
    rationale: str = ""


@dataclass(frozen=True)
class Category:
    """An abstraction of several function groups (one part of the partition)."""

    id: str
    label: str
    name: str
    description: str
    members: tuple[str, ...]
    short_name: str = ""

    @property
    def display_name(self) -> str:
        """Row header used in exports, e.g. "B Infra"."""
        return f"{self.label} {self.short_name or self.name}"


@dataclass(frozen=True)
class Landscape:
    """Function groups plus an optional category partition over them."""

    groups: tuple[FunctionGroup, ...]
    categories: tuple[Category, ...] = ()

    def group(self, group_id: str) -> FunctionGroup | None:
        for g in self.groups:
            if g.id == group_id:
                return g
        return None

    def category(self, category_id: str) -> Category | None:
        for c in self.categories:
            if c.id == category_id:
                return c
        return None


def validate_landscape(landscape: Landscape, path: str = "landscape") -> list[Diagnostic]:
    """Check every landscape invariant; one diagnostic per violation.

    An empty result means the landscape is valid. Codes are stable:
    duplicate-group-id, empty-group-id, unknown-control, primary-in-secondary,
    duplicate-secondary, secondary-overflow, duplicate-category-id,
    empty-category, unknown-member, partition-violation, partition-incomplete.
    """
    diags: list[Diagnostic] = []
    seen_groups: set[str] = set()

    for i, group in enumerate(landscape.groups):
        gpath = f"{path}.groups[{i}]"
        if not group.id:
            diags.append(error("empty-group-id", f"{gpath}.id", "group id must be nonempty"))
        elif group.id in seen_groups:
            diags.append(
                error("duplicate-group-id", f"{gpath}.id", f"group id {group.id!r} appears twice")
            )
        seen_groups.add(group.id)

        assignment = group.assignment
        if assignment.primary not in CONTROLS:
            diags.append(
                error(
                    "unknown-control",
                    f"{gpath}.assignment.primary",
                    f"unknown security control {assignment.primary!r}",
                )
            )
        for j, token in enumerate(assignment.secondary):
            if token not in CONTROLS:
                diags.append(
                    error(
                        "unknown-control",
                        f"{gpath}.assignment.secondary[{j}]",
                        f"unknown security control {token!r}",
                    )
                )
        if assignment.primary in assignment.secondary:
            diags.append(
                error(
                    "primary-in-secondary",
                    f"{gpath}.assignment",
                    f"primary control {assignment.primary!r} repeated as secondary",
                )
            )
        if len(set(assignment.secondary)) != len(assignment.secondary):
            diags.append(
                error(
                    "duplicate-secondary",
                    f"{gpath}.assignment.secondary",
                    "secondary controls must be pairwise distinct",
                )
            )
        if len(assignment.secondary) > 2:
            diags.append(
                error(
                    "secondary-overflow",
                    f"{gpath}.assignment.secondary",
                    f"at most two secondary controls allowed, got {len(assignment.secondary)}",
                )
            )

    assigned: dict[str, str] = {}
    seen_categories: set[str] = set()
    for i, category in enumerate(landscape.categories):
        cpath = f"{path}.categories[{i}]"
        if category.id in seen_categories:
            diags.append(
                error(
                    "duplicate-category-id", f"{cpath}.id", f"category id {category.id!r} appears twice"
                )
            )
        seen_categories.add(category.id)
        if not category.members:
            diags.append(error("empty-category", f"{cpath}.members", "category has no members"))
        for j, member in enumerate(category.members):
            mpath = f"{cpath}.members[{j}]"
            if member not in seen_groups:
                diags.append(
                    error("unknown-member", mpath, f"member {member!r} is not a known group id")
                )
            elif member in assigned:
                diags.append(
                    error(
                        "partition-violation",
                        mpath,
                        f"group {member!r} already belongs to category {assigned[member]!r}",
                    )
                )
            else:
                assigned[member] = category.id

    if landscape.categories:
        missing = sorted(seen_groups - set(assigned))
        if missing:
            diags.append(
                error(
                    "partition-incomplete",
                    f"{path}.categories",
                    f"groups not covered by any category: {', '.join(missing)}",
                )
            )
    return diags
