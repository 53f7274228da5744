"""Exact values of the constants C_{A,B}(n), D_{A,B}(n) and E_{A,B}(n).

The search walks a prefix tree of candidate sequences depth first.  A prefix
that already contains a qualifying subsequence is pruned, since every
extension contains it too, so a constant equals one more than the depth of the
deepest surviving node.

* D and E only depend on the multiset of terms.  Candidates are generated as
  non-increasing tuples, which makes depth-first order equal to colex order of
  the sorted multisets.
* C is order-sensitive.  Candidates are ordered sequences kept only when they
  are lexicographically minimal in their orbit under ``x -> u*x`` (``u`` a
  unit), extended by ``x -> u*x + c`` when ``B = {1}``.  Minimality is
  prefix-closed, so only the stabiliser of the prefix needs to be tested when a
  term is appended.
"""

from __future__ import annotations

import enum
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .engine import ANY, CONSECUTIVE, Sequence, SubsequenceConstraint, exact_length, has_wzs_subsequence, kernel
from .residues import WeightSet, resolve_weight_set, units

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**9
ENGINE_VERSION = "1"


class Kind(enum.Enum):
    C = "C"
    D = "D"
    E = "E"

    @classmethod
    def parse(cls, text) -> "Kind":
        if isinstance(text, Kind):
            return text
        try:
            return cls(str(text).strip().upper())
        except ValueError:
            raise ValueError(f"unknown constant kind {text!r} (expected C, D or E)") from None


class Method(enum.Enum):
    FULL_ENUMERATION = "full-enumeration"
    MULTISET_ENUMERATION = "multiset-enumeration"
    CAP_CERTIFIED = "cap-certified"


class BudgetExceeded(RuntimeError):
    """The search needed more candidate evaluations than allowed.

    ``lower_bound`` is certified by the longest surviving sequence seen so far;
    ``upper_bound`` is the general cap.
    """

    def __init__(self, kind: Kind, n: int, budget: int, examined: int, lower_bound: int, upper_bound: int,
                 witness: Optional[Sequence] = None):
        self.kind = kind
        self.n = n
        self.budget = budget
        self.examined = examined
        self.lower_bound = lower_bound
        self.upper_bound = upper_bound
        self.witness = witness
        super().__init__(
            f"{kind.value}-search mod {n} exceeded its budget of {budget} candidate evaluations; "
            f"certified {lower_bound} <= value <= {upper_bound}"
        )


class CapViolation(AssertionError):
    pass


def cap(kind: Kind, n: int) -> int:
    """Unconditional upper bound: n^2 for C, 2n-1 for D and E."""
    return n * n if kind is Kind.C else 2 * n - 1


def constraint_for(kind: Kind, n: int) -> SubsequenceConstraint:
    if kind is Kind.C:
        return CONSECUTIVE
    if kind is Kind.D:
        return ANY
    return exact_length(n)


@dataclass
class ConstantResult:
    kind: Kind
    n: int
    A: WeightSet
    B: WeightSet
    value: int
    witness_extremal: Sequence
    method: Method
    checked_lengths: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "A": self.A.spec,
            "B": self.B.spec,
            "value": self.value,
            "witness_extremal": list(self.witness_extremal.terms),
            "method": self.method.value,
            "checked_lengths": [list(p) for p in self.checked_lengths],
            "engine_version": ENGINE_VERSION,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ConstantResult":
        n = d["n"]
        return cls(
            kind=Kind.parse(d["kind"]),
            n=n,
            A=resolve_weight_set(d["A"], n),
            B=resolve_weight_set(d["B"], n),
            value=d["value"],
            witness_extremal=Sequence(n, tuple(d["witness_extremal"])),
            method=Method(d["method"]),
            checked_lengths=[tuple(p) for p in d.get("checked_lengths", [])],
        )


def search_group(kind: Kind, n: int, B: WeightSet) -> list[tuple[int, int]]:
    """Affine maps ``x -> u*x + c`` used to reduce ordered candidates, identity first."""
    shifts = range(n) if B.is_one else (0,)
    group = [(u, c) for u in units(n) for c in shifts]
    group.remove((1, 0))
    return [(1, 0)] + group


class _Tree:
    """Prefix tree of candidates for one constant; nodes carry engine states."""

    def __init__(self, kind: Kind, n: int, A: WeightSet, B: WeightSet):
        self.kind, self.n, self.A, self.B = kind, n, A, B
        K = kernel(n, A, B)
        self.ordered = kind is Kind.C
        if kind is Kind.D:
            self.start, self.step, self.hit = 0, K.step_any, _low_bit
        elif kind is Kind.C:
            self.start, self.step, self.hit = 0, K.step_consecutive, _low_bit
        else:
            self.start = K.start_exact(n)
            self.step = K.step_exact
            self.hit = _top_layer_bit
        self.group = search_group(kind, n, B)[1:] if self.ordered else []

    def output(self, terms: tuple[int, ...]) -> tuple[int, ...]:
        return terms if self.ordered else terms[::-1]

    def children(self, terms, state, stab):
        """Yield ``(x, child_state | None, child_stab)``; ``None`` marks a pruned child."""
        n = self.n
        if self.ordered:
            for x in range(n):
                new_stab = []
                canonical = True
                for u, c in stab:
                    y = (u * x + c) % n
                    if y < x:
                        canonical = False
                        break
                    if y == x:
                        new_stab.append((u, c))
                if not canonical:
                    continue
                child = self.step(state, x)
                yield x, (None if self.hit(child) else child), new_stab
        else:
            top = terms[-1] if terms else n - 1
            for x in range(top + 1):
                child = self.step(state, x)
                yield x, (None if self.hit(child) else child), stab


def _low_bit(state: int) -> int:
    return state & 1


def _top_layer_bit(layers: tuple[int, ...]) -> int:
    return layers[-1] & 1


@dataclass
class _Walk:
    """Accumulated outcome of a depth-first walk over (part of) the tree."""

    examined: dict[int, int] = field(default_factory=dict)
    first: dict[int, tuple[int, ...]] = field(default_factory=dict)
    collected: list[tuple[int, ...]] = field(default_factory=list)
    deepest: int = 0
    calls: int = 0
    stopped: bool = False

    def merge(self, other: "_Walk") -> None:
        for k, v in other.examined.items():
            self.examined[k] = self.examined.get(k, 0) + v
        for k, v in other.first.items():
            self.first.setdefault(k, v)
        self.collected.extend(other.collected)
        self.deepest = max(self.deepest, other.deepest)
        self.calls += other.calls


class _BudgetHit(Exception):
    def __init__(self, partial: "_Walk"):
        super().__init__("budget")
        self.partial = partial


def _walk(tree: _Tree, roots, limit: int, budget: int, collect_depth: Optional[int], stop_at: Optional[int]) -> _Walk:
    """Depth-first walk below ``roots`` (each ``(terms, state, stab)``) down to ``limit``."""
    out = _Walk()
    examined, first = out.examined, out.first

    def visit(terms, state, stab):
        depth = len(terms) + 1
        for x, child, cstab in tree.children(terms, state, stab):
            out.calls += 1
            if out.calls > budget:
                raise _BudgetHit(out)
            examined[depth] = examined.get(depth, 0) + 1
            if child is None:
                continue
            t2 = terms + (x,)
            if depth not in first:
                first[depth] = tree.output(t2)
            if depth > out.deepest:
                out.deepest = depth
            if collect_depth == depth:
                out.collected.append(tree.output(t2))
            if stop_at == depth:
                out.stopped = True
                return True
            if depth < limit and visit(t2, child, cstab):
                return True
        return False

    for terms, state, stab in roots:
        if terms:
            out.deepest = max(out.deepest, len(terms))
            first.setdefault(len(terms), tree.output(terms))
            if collect_depth == len(terms):
                out.collected.append(tree.output(terms))
        if len(terms) < limit and visit(terms, state, stab):
            break
    return out


def _walk_chunk(args):
    kind, n, A, B, roots, limit, budget, collect_depth, stop_at = args
    tree = _Tree(kind, n, A, B)
    try:
        return _walk(tree, roots, limit, budget, collect_depth, stop_at)
    except _BudgetHit as hit:
        hit.partial.stopped = True
        hit.partial.calls = budget + 1
        return hit.partial


def _split_roots(tree: _Tree, limit: int) -> tuple[list, _Walk]:
    """Expand the tree one level to get independent subtrees for workers."""
    head = _Walk()
    roots = []
    for x, child, stab in tree.children((), tree.start, tree.group):
        head.calls += 1
        head.examined[1] = head.examined.get(1, 0) + 1
        if child is not None:
            roots.append(((x,), child, stab))
    return roots, head


def _search(kind: Kind, n: int, A: WeightSet, B: WeightSet, limit: int, budget: int, workers: int,
            collect_depth: Optional[int] = None, stop_at: Optional[int] = None) -> _Walk:
    tree = _Tree(kind, n, A, B)
    if workers <= 1 or limit < 2:
        return _walk(tree, [((), tree.start, tree.group)], limit, budget, collect_depth, stop_at)
    roots, total = _split_roots(tree, limit)
    if stop_at == 1 and roots:
        total.first[1] = tree.output(roots[0][0])
        total.deepest = 1
        total.stopped = True
        return total
    if collect_depth == 1:
        total.collected.extend(tree.output(r[0]) for r in roots)
    if roots:
        total.first[1] = tree.output(roots[0][0])
        total.deepest = 1
    chunks = [[r] for r in roots]
    jobs = [(kind, n, A, B, c, limit, budget, collect_depth, stop_at) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map() preserves chunk order, which is canonical order
        for part in pool.map(_walk_chunk, jobs):
            total.merge(part)
            if total.calls > budget:
                raise _BudgetHit(total)
            if part.stopped:
                total.stopped = True
                break
    return total


def _as_sequence(n: int, terms: tuple[int, ...], ordered: bool) -> Sequence:
    return Sequence(n, terms if ordered else tuple(sorted(terms)))


def check_all_length_k(kind, n: int, A, B, k: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> Optional[Sequence]:
    """Return the canonically first length-``k`` sequence with no qualifying
    subsequence, or ``None`` when every length-``k`` sequence has one.
    """
    kind = Kind.parse(kind)
    A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
    if k < 1:
        raise ValueError("k must be positive")
    try:
        walk = _search(kind, n, A, B, limit=k, budget=budget, workers=workers, stop_at=k)
    except _BudgetHit as hit:
        raise _budget_error(kind, n, budget, hit.partial) from None
    if k in walk.first:
        return _as_sequence(n, walk.first[k], kind is Kind.C)
    return None


def compute_constant(kind, n: int, A, B, budget: int = DEFAULT_BUDGET, workers: int = 1,
                     trust_cap: bool = False) -> ConstantResult:
    """Smallest ``k`` such that every length-``k`` sequence has a qualifying subsequence.

    With ``trust_cap`` the level at the cap itself is not enumerated when
    survivors exist just below it; the value is then certified by the cap.
    """
    kind = Kind.parse(kind)
    A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
    top = cap(kind, n)
    limit = top - 1 if trust_cap else top
    try:
        walk = _search(kind, n, A, B, limit=limit, budget=budget, workers=workers)
    except _BudgetHit as hit:
        raise _budget_error(kind, n, budget, hit.partial) from None
    value = walk.deepest + 1
    if value > top:
        raise CapViolation(f"{kind.value}_{{{A},{B}}}({n}) exceeds the cap {top}: {walk.first[walk.deepest]}")
    ordered = kind is Kind.C
    extremal = _as_sequence(n, walk.first[walk.deepest], ordered) if walk.deepest else Sequence(n, ())
    if ordered:
        method = Method.FULL_ENUMERATION
    else:
        method = Method.MULTISET_ENUMERATION
    if trust_cap and value == top:
        method = Method.CAP_CERTIFIED
    checked = sorted(walk.examined.items())
    log.debug("%s_{%s,%s}(%d) = %d after %d evaluations", kind.value, A, B, n, value, walk.calls)
    return ConstantResult(kind, n, A, B, value, extremal, method, checked)


def _budget_error(kind: Kind, n: int, budget: int, partial: _Walk) -> BudgetExceeded:
    deepest = partial.deepest
    witness = None
    if deepest:
        witness = _as_sequence(n, partial.first[deepest], kind is Kind.C)
    return BudgetExceeded(kind, n, budget, partial.calls, deepest + 1, cap(kind, n), witness)


def survivors_at(kind, n: int, A, B, length: int, budget: int = DEFAULT_BUDGET, workers: int = 1) -> list[Sequence]:
    """All canonical candidates of ``length`` without a qualifying subsequence.

    Multisets (as sorted sequences) for D/E; orbit-minimal ordered sequences
    for C.  Listed in canonical order.
    """
    kind = Kind.parse(kind)
    A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
    if length == 0:
        return [Sequence(n, ())]
    try:
        walk = _search(kind, n, A, B, limit=length, budget=budget, workers=workers, collect_depth=length)
    except _BudgetHit as hit:
        raise _budget_error(kind, n, budget, hit.partial) from None
    ordered = kind is Kind.C
    return [_as_sequence(n, t, ordered) for t in walk.collected]


def constant_lower_bound_check(kind, n: int, A, B, S: Sequence) -> bool:
    """True iff ``S`` has no qualifying subsequence, certifying value >= len(S) + 1."""
    kind = Kind.parse(kind)
    A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
    return not has_wzs_subsequence(S, A, B, constraint_for(kind, n))


def iter_candidates(kind, n: int, k: int, B=None) -> Iterator[Sequence]:
    """Unpruned canonical candidates of length ``k`` (for cross-checking the search)."""
    kind = Kind.parse(kind)
    if kind is Kind.C:
        Bs = resolve_weight_set(B if B is not None else "one", n)
        group = search_group(kind, n, Bs)
        for terms in itertools.product(range(n), repeat=k):
            if all(tuple((u * x + c) % n for x in terms) >= terms for u, c in group):
                yield Sequence(n, terms)
    else:
        for terms in itertools.combinations_with_replacement(range(n), k):
            yield Sequence(n, terms)
