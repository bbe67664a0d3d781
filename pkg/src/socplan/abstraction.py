"""Similarity between function groups and advisory clustering into categories.

Similarity is the size of the intersection of two groups' feature sets, where
a feature set is the group's controls (primary and secondary, position
ignored) plus its relevance token. Clustering is deterministic agglomerative
merging with average linkage; it only *suggests* a partition — the partition
stored in the plan remains authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from socplan.errors import InvalidKError, UnresolvedMemberError
from socplan.landscape import Category, ControlAssignment, FunctionGroup, Landscape, RelevanceLevel


def feature_set(group: FunctionGroup) -> frozenset[str]:
    """Control tokens plus the relevance token of a group."""
    return frozenset(
        {group.assignment.primary, *group.assignment.secondary, group.relevance.value}
    )


def similarity(a: FunctionGroup, b: FunctionGroup) -> int:
    """Number of features two groups share; symmetric, at most 4."""
    return len(feature_set(a) & feature_set(b))


@dataclass(frozen=True)
class MergeStep:
    """One merge in the clustering trace: the two clusters and their linkage."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    average_similarity: Fraction


@dataclass(frozen=True)
class ClusterPart:
    members: tuple[str, ...]
    trace: tuple[MergeStep, ...]


@dataclass(frozen=True)
class CategorySuggestion:
    parts: tuple[ClusterPart, ...]


def suggest_categories(landscape: Landscape, k: int) -> CategorySuggestion:
    """Deterministic agglomerative clustering of the groups into k parts.

    Starts from singletons and repeatedly merges the cluster pair with the
    highest average pairwise similarity, breaking ties by the
    lexicographically smallest pair of sorted member-id lists, until k
    clusters remain. Purely advisory; never mutates the landscape.
    """
    groups = landscape.groups
    if not 1 <= k <= len(groups):
        raise InvalidKError(f"k must be between 1 and {len(groups)}, got {k}")

    by_id = {g.id: g for g in groups}
    sim: dict[tuple[str, str], int] = {}
    for a, b in combinations(sorted(by_id), 2):
        sim[(a, b)] = similarity(by_id[a], by_id[b])

    def pair_sim(a: str, b: str) -> int:
        return sim[(a, b) if a < b else (b, a)]

    clusters: list[tuple[str, ...]] = [(g.id,) for g in sorted(groups, key=lambda g: g.id)]
    traces: dict[tuple[str, ...], tuple[MergeStep, ...]] = {c: () for c in clusters}

    while len(clusters) > k:
        best: tuple[Fraction, tuple[str, ...], tuple[str, ...]] | None = None
        for left, right in combinations(clusters, 2):
            if right < left:
                left, right = right, left
            total = sum(pair_sim(a, b) for a in left for b in right)
            avg = Fraction(total, len(left) * len(right))
            if best is None or avg > best[0] or (avg == best[0] and (left, right) < best[1:]):
                best = (avg, left, right)
        assert best is not None
        avg, left, right = best
        merged = tuple(sorted(left + right))
        traces[merged] = traces.pop(left) + traces.pop(right) + (MergeStep(left, right, avg),)
        clusters = sorted(c for c in clusters if c not in (left, right))
        clusters.append(merged)
        clusters.sort()

    return CategorySuggestion(
        parts=tuple(ClusterPart(members=c, trace=traces[c]) for c in sorted(clusters))
    )


@dataclass(frozen=True)
class MemberDetail:
    """Full stored detail of one category member, for abstraction reversal."""

    name: str
    description: str
    assignment: ControlAssignment
    relevance: RelevanceLevel


def expand(category: Category, landscape: Landscape) -> list[MemberDetail]:
    """Resolve a category back to its member groups' full detail, in member order."""
    details: list[MemberDetail] = []
    for member in category.members:
        group = landscape.group(member)
        if group is None:
            raise UnresolvedMemberError(
                f"category {category.id!r} references unknown group {member!r}"
            )
        details.append(
            MemberDetail(
                name=group.name,
                description=group.description,
                assignment=group.assignment,
                relevance=group.relevance,
            )
        )
    return details
