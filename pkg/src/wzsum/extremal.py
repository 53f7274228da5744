"""Extremal sequences and their classes under the symmetry relations.

Two sequences are *equivalent* when one is a permutation of a unit multiple of
the other, and *order-equivalent* when one is a unit multiple of the other
term by term.  The ``TRANSLATE_*`` relations also allow adding a constant to
every term.  Canonical forms are lexicographic minima over the whole orbit;
the orbits involved are tiny next to the enumeration cost.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from sympy.utilities.iterables import multiset_permutations

from .constants import DEFAULT_BUDGET, Kind, compute_constant, search_group, survivors_at
from .engine import Sequence
from .residues import ModulusMismatch, resolve_weight_set, units

log = logging.getLogger(__name__)


class SymmetryRelation(enum.Enum):
    IDENTITY = "identity"
    EQUIVALENCE = "equivalent"
    ORDER_EQUIVALENCE = "order-equivalent"
    TRANSLATE_OF_EQUIVALENT = "translate-equivalent"
    TRANSLATE_OF_ORDER_EQUIVALENT = "translate-order-equivalent"
    TRANSLATION_ONLY = "translation"

    @classmethod
    def parse(cls, text) -> "SymmetryRelation":
        if isinstance(text, SymmetryRelation):
            return text
        key = str(text).strip().lower().replace("_", "-")
        for rel in cls:
            if key in (rel.value, rel.name.lower().replace("_", "-")):
                return rel
        names = ", ".join(r.value for r in cls)
        raise ValueError(f"unknown relation {text!r} (expected one of {names})")

    @property
    def permutes(self) -> bool:
        return self in (SymmetryRelation.EQUIVALENCE, SymmetryRelation.TRANSLATE_OF_EQUIVALENT)

    @property
    def scales(self) -> bool:
        return self not in (SymmetryRelation.IDENTITY, SymmetryRelation.TRANSLATION_ONLY)

    @property
    def translates(self) -> bool:
        return self in (
            SymmetryRelation.TRANSLATE_OF_EQUIVALENT,
            SymmetryRelation.TRANSLATE_OF_ORDER_EQUIVALENT,
            SymmetryRelation.TRANSLATION_ONLY,
        )


def _maps(n: int, rel: SymmetryRelation) -> list[tuple[int, int]]:
    us = units(n) if rel.scales else (1,)
    cs = range(n) if rel.translates else (0,)
    return [(u, c) for u in us for c in cs]


def canonicalize(S: Sequence, rel) -> Sequence:
    rel = SymmetryRelation.parse(rel)
    n = S.n
    best = None
    for u, c in _maps(n, rel):
        image = tuple((u * (x + c)) % n for x in S.terms)
        if rel.permutes:
            image = tuple(sorted(image))
        if best is None or image < best:
            best = image
    return Sequence(n, best)


def are_related(S: Sequence, T: Sequence, rel) -> bool:
    if S.n != T.n:
        raise ModulusMismatch(f"sequences mod {S.n} and mod {T.n} cannot be related")
    if len(S) != len(T):
        raise ValueError(f"sequences of lengths {len(S)} and {len(T)} cannot be related")
    return canonicalize(S, rel) == canonicalize(T, rel)


def distinct_permutations(terms: Iterable[int]) -> Iterator[tuple[int, ...]]:
    for p in multiset_permutations(sorted(terms)):
        yield tuple(p)


def orbit(S: Sequence, rel) -> set[tuple[int, ...]]:
    """Every sequence related to ``S`` (as term tuples)."""
    rel = SymmetryRelation.parse(rel)
    n = S.n
    out = set()
    for u, c in _maps(n, rel):
        image = tuple((u * (x + c)) % n for x in S.terms)
        if rel.permutes:
            out.update(distinct_permutations(image))
        else:
            out.add(image)
    return out


@dataclass
class ExtremalClass:
    canonical: Sequence
    relation: SymmetryRelation
    orbit_size: int
    members: list[Sequence] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "canonical": list(self.canonical.terms),
            "relation": self.relation.value,
            "orbit_size": self.orbit_size,
        }


def extremal_members(kind, n: int, A, B, value: Optional[int] = None, budget: int = DEFAULT_BUDGET,
                     workers: int = 1) -> set[tuple[int, ...]]:
    """All ordered extremal sequences (term tuples) for the constant.

    ``value`` may be injected when the constant is already known; otherwise it
    is computed first.
    """
    kind = Kind.parse(kind)
    A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
    if value is None:
        value = compute_constant(kind, n, A, B, budget=budget, workers=workers).value
    reps = survivors_at(kind, n, A, B, value - 1, budget=budget, workers=workers)
    members: set[tuple[int, ...]] = set()
    if kind is Kind.C:
        group = search_group(kind, n, B)
        for S in reps:
            for u, c in group:
                members.add(tuple((u * x + c) % n for x in S.terms))
    else:
        for S in reps:
            members.update(distinct_permutations(S.terms))
    return members


def enumerate_extremal(kind, n: int, A, B, rel="translate-equivalent", value: Optional[int] = None,
                       budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[ExtremalClass]:
    """Extremal sequences grouped into classes of ``rel``, sorted by canonical form."""
    kind = Kind.parse(kind)
    rel = SymmetryRelation.parse(rel)
    if kind is not Kind.C and not rel.permutes and rel is not SymmetryRelation.IDENTITY:
        log.warning("%s is order-sensitive; %s-extremal sets are permutation-closed", rel.value, kind.value)
    members = extremal_members(kind, n, A, B, value=value, budget=budget, workers=workers)
    return group_into_classes((Sequence(n, m) for m in members), rel)


def group_into_classes(sequences: Iterable[Sequence], rel) -> list[ExtremalClass]:
    rel = SymmetryRelation.parse(rel)
    buckets: dict[tuple[int, ...], list[Sequence]] = {}
    n = None
    for S in sequences:
        n = S.n
        buckets.setdefault(canonicalize(S, rel).terms, []).append(S)
    return [
        ExtremalClass(Sequence(n, key), rel, len(group), sorted(group, key=lambda s: s.terms))
        for key, group in sorted(buckets.items())
    ]
