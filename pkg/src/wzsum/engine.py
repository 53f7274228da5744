"""Deciding (A,B)-weighted zero-sum membership and finding witnesses.

A sequence ``(x_1..x_k)`` over Z_n is an (A,B)-weighted zero-sum sequence when
there are ``a_i in A`` and ``b_i in B`` with ``sum a_i x_i == 0`` and
``sum b_i a_i == 0``.  Every search below is a reachability question over the
pair ``(sum a_i x_i, sum b_i a_i)`` in ``Z_n x Z_n``.

Two independent routes are provided.  The fast route (:class:`Kernel`) packs the
set of reachable pairs into the bits of a Python ``int`` and answers yes/no.
The witness route keeps explicit state sets, computes backward feasibility and
walks forward greedily, so the witness it returns is the lexicographically
smallest one.  Tests cross-check both against :func:`brute_force_is_pair_wzs`.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence as Seq

from .residues import ModulusMismatch, Preset, Residue, WeightSet, check_modulus

ORACLE_BUDGET = 10**8


class OracleBudgetExceeded(RuntimeError):
    pass


class MalformedWitness(ValueError):
    pass


@dataclass(frozen=True)
class Sequence:
    """An ordered, possibly empty list of residues mod ``n``."""

    n: int
    terms: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        check_modulus(self.n)
        object.__setattr__(self, "terms", tuple(int(x) % self.n for x in self.terms))

    @classmethod
    def of(cls, n: int, terms: Iterable[int | Residue]) -> "Sequence":
        values = []
        for x in terms:
            if isinstance(x, Residue):
                if x.n != n:
                    raise ModulusMismatch(f"residue mod {x.n} in a sequence mod {n}")
                x = x.value
            values.append(int(x))
        return cls(n, tuple(values))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.terms)) + ")"

    def scaled(self, u: int) -> "Sequence":
        return Sequence(self.n, tuple(u * x for x in self.terms))


def translate(S: Sequence, x: int) -> Sequence:
    """``S + x``: add ``x`` to every term."""
    return Sequence(S.n, tuple(t + x for t in S.terms))


def concat(S: Sequence, T: Sequence) -> Sequence:
    """``S + T``: ``S`` followed by ``T``."""
    if S.n != T.n:
        raise ModulusMismatch(f"cannot concatenate sequences mod {S.n} and mod {T.n}")
    return Sequence(S.n, S.terms + T.terms)


def remove(S: Sequence, positions: Iterable[int]) -> Sequence:
    """``S - T`` where ``T`` is given by its 0-based positions in ``S``.

    Survivors keep their relative order.
    """
    drop = set(positions)
    if len(drop) and (min(drop) < 0 or max(drop) >= len(S)):
        raise IndexError(f"positions {sorted(drop)} out of range for length {len(S)}")
    return Sequence(S.n, tuple(x for i, x in enumerate(S.terms) if i not in drop))


class ConstraintKind(enum.Enum):
    ANY = "any"
    CONSECUTIVE = "consecutive"
    EXACT_LENGTH = "exact"


@dataclass(frozen=True)
class SubsequenceConstraint:
    kind: ConstraintKind
    length: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind is ConstraintKind.EXACT_LENGTH:
            if self.length is None or self.length < 1:
                raise ValueError("EXACT_LENGTH needs a length >= 1")
        elif self.length is not None:
            raise ValueError(f"{self.kind.value} takes no length")

    @classmethod
    def parse(cls, text: str) -> "SubsequenceConstraint":
        text = text.strip().lower()
        if text == "any":
            return ANY
        if text == "consecutive":
            return CONSECUTIVE
        if text.startswith("exact:"):
            return exact_length(int(text.split(":", 1)[1]))
        raise ValueError(f"unknown subsequence mode {text!r} (expected any|consecutive|exact:L)")

    def __str__(self) -> str:
        if self.kind is ConstraintKind.EXACT_LENGTH:
            return f"exact:{self.length}"
        return self.kind.value


ANY = SubsequenceConstraint(ConstraintKind.ANY)
CONSECUTIVE = SubsequenceConstraint(ConstraintKind.CONSECUTIVE)


def exact_length(L: int) -> SubsequenceConstraint:
    return SubsequenceConstraint(ConstraintKind.EXACT_LENGTH, L)


@dataclass(frozen=True)
class Witness:
    """Chosen 0-based positions with their A- and B-coefficients.

    ``b_coeffs`` is empty for plain A-weighted witnesses.
    """

    indices: tuple[int, ...]
    a_coeffs: tuple[int, ...]
    b_coeffs: tuple[int, ...] = ()

    def to_dict(self, one_based: bool = True) -> dict:
        shift = 1 if one_based else 0
        return {
            "indices": [i + shift for i in self.indices],
            "a": list(self.a_coeffs),
            "b": list(self.b_coeffs),
        }


class WitnessProblem(enum.Enum):
    INVALID_MEMBER = "invalid-member"
    WEIGHTED_SUM_NONZERO = "weighted-sum-nonzero"
    COEFFICIENT_SUM_NONZERO = "coefficient-sum-nonzero"
    EMPTY = "empty"


def witness_problem(S: Sequence, A: WeightSet, B: Optional[WeightSet], w: Witness) -> Optional[WitnessProblem]:
    """Return what is wrong with ``w``, or ``None`` if it certifies a zero-sum.

    ``B=None`` checks only the A-weighted condition.  Structurally broken
    witnesses raise :class:`MalformedWitness`.
    """
    k = len(w.indices)
    if len(w.a_coeffs) != k or (B is not None and len(w.b_coeffs) != k):
        raise MalformedWitness("coefficient lists must match the number of indices")
    if any(j <= i for i, j in zip(w.indices, w.indices[1:])):
        raise MalformedWitness("indices must be strictly increasing")
    if k and (w.indices[0] < 0 or w.indices[-1] >= len(S)):
        raise MalformedWitness("index out of range")
    if k == 0:
        return WitnessProblem.EMPTY
    n = S.n
    if any(a % n not in A.members for a in w.a_coeffs):
        return WitnessProblem.INVALID_MEMBER
    if B is not None and any(b % n not in B.members for b in w.b_coeffs):
        return WitnessProblem.INVALID_MEMBER
    if sum(a * S.terms[i] for a, i in zip(w.a_coeffs, w.indices)) % n:
        return WitnessProblem.WEIGHTED_SUM_NONZERO
    if B is not None and sum(a * b for a, b in zip(w.a_coeffs, w.b_coeffs)) % n:
        return WitnessProblem.COEFFICIENT_SUM_NONZERO
    return None


def verify_witness(S: Sequence, A: WeightSet, B: Optional[WeightSet], w: Witness) -> bool:
    return witness_problem(S, A, B, w) is None


# -- fast route -------------------------------------------------------------


class Kernel:
    """Bit-packed reachability over ``Z_n x Z_n`` for a fixed weight-set pair.

    The pair ``(s, t)`` lives at bit ``s*n + t``.  Shifting ``s`` by ``ds`` is a
    rotation of the whole word by ``ds*n`` bits; shifting ``t`` by ``dt`` rotates
    inside each row of ``n`` bits.
    """

    def __init__(self, n: int, A: WeightSet, B: WeightSet):
        if A.n != n or B.n != n:
            raise ModulusMismatch("weight sets and kernel must share the modulus")
        self.n = n
        self.A = A
        self.B = B
        nbits = n * n
        self.nbits = nbits
        self.full = (1 << nbits) - 1
        self._lo = [0] * n
        self._hi = [0] * n
        for dt in range(n):
            for s in range(n):
                for t in range(n):
                    if t < n - dt:
                        self._lo[dt] |= 1 << (s * n + t)
                    else:
                        self._hi[dt] |= 1 << (s * n + t)
        # moves[x]: ((dt, (ds, ...)), ...) for the deltas (a*x, b*a)
        self.moves = []
        self.points = []
        for x in range(n):
            deltas = {((a * x) % n, (b * a) % n) for a in A.members for b in B.members}
            by_dt: dict[int, list[int]] = {}
            for ds, dt in sorted(deltas):
                by_dt.setdefault(dt, []).append(ds)
            self.moves.append(tuple((dt, tuple(dss)) for dt, dss in sorted(by_dt.items())))
            pts = 0
            for ds, dt in deltas:
                pts |= 1 << (ds * n + dt)
            self.points.append(pts)

    def shift(self, mask: int, x: int) -> int:
        """Union of ``mask`` translated by every delta available to term ``x``."""
        if not mask:
            return 0
        n, nbits, full = self.n, self.nbits, self.full
        lo, hi = self._lo, self._hi
        out = 0
        for dt, dss in self.moves[x]:
            if dt:
                col = ((mask & lo[dt]) << dt) | ((mask & hi[dt]) >> (n - dt))
            else:
                col = mask
            for ds in dss:
                if ds:
                    k = ds * n
                    out |= ((col << k) | (col >> (nbits - k))) & full
                else:
                    out |= col
        return out

    # whole sequence
    def full_reach(self, terms: Iterable[int]) -> int:
        mask = 1
        for x in terms:
            mask = self.shift(mask, x)
            if not mask:
                break
        return mask

    def is_full(self, terms: Iterable[int]) -> bool:
        return bool(self.full_reach(terms) & 1)

    # incremental states for subsequence searches; bit 0 set means "hit"
    def step_any(self, state: int, x: int) -> int:
        return state | self.points[x] | self.shift(state, x)

    def step_consecutive(self, state: int, x: int) -> int:
        # union over all blocks ending at the current position
        return self.points[x] | self.shift(state, x)

    def start_exact(self, L: int) -> tuple[int, ...]:
        return (1,) + (0,) * L

    def step_exact(self, layers: tuple[int, ...], x: int) -> tuple[int, ...]:
        new = list(layers)
        for c in range(len(layers) - 1, 0, -1):
            if layers[c - 1]:
                new[c] = layers[c] | self.shift(layers[c - 1], x)
        return tuple(new)

    def has_any(self, terms: Iterable[int]) -> bool:
        state = 0
        for x in terms:
            state = self.step_any(state, x)
            if state & 1:
                return True
        return False

    def has_consecutive(self, terms: Iterable[int]) -> bool:
        state = 0
        for x in terms:
            state = self.step_consecutive(state, x)
            if state & 1:
                return True
        return False

    def has_exact(self, terms: Seq[int], L: int) -> bool:
        if L > len(terms):
            return False
        layers = self.start_exact(L)
        for x in terms:
            layers = self.step_exact(layers, x)
            if layers[L] & 1:
                return True
        return False

    def has(self, terms: Seq[int], constraint: SubsequenceConstraint) -> bool:
        if constraint.kind is ConstraintKind.ANY:
            return self.has_any(terms)
        if constraint.kind is ConstraintKind.CONSECUTIVE:
            return self.has_consecutive(terms)
        return self.has_exact(terms, constraint.length)


@lru_cache(maxsize=512)
def kernel(n: int, A: WeightSet, B: WeightSet) -> Kernel:
    return Kernel(n, A, B)


def zero_set(n: int) -> WeightSet:
    return WeightSet.of(Preset.ZERO, n)


# -- witness route ----------------------------------------------------------

_SKIP = None


def _lexmin_witness(
    n: int,
    terms: Seq[int],
    A: WeightSet,
    B: WeightSet,
    allow_skip: bool,
    cap: int,
    target: int,
    saturate: bool,
) -> Optional[tuple[list[int], list[int], list[int]]]:
    """Lexicographically smallest choice vector reaching ``(0, 0, target)``.

    Per position the choices are ordered: skip (when allowed) first, then
    ``(a, b)`` pairs ascending.  ``cap`` bounds the counter of included terms;
    ``saturate`` clamps it at ``cap`` instead of forbidding overflow.
    """
    pairs = [(a, b) for a in A.members for b in B.members]
    k = len(terms)

    def advance(state, x, choice):
        s, t, c = state
        if choice is _SKIP:
            return state
        a, b = choice
        c2 = c + 1
        if c2 > cap:
            if not saturate:
                return None
            c2 = cap
        return ((s + a * x) % n, (t + b * a) % n, c2)

    choices = ([_SKIP] if allow_skip else []) + pairs
    feasible: list[set] = [set() for _ in range(k + 1)]
    feasible[k] = {(0, 0, target)}
    all_states = [(s, t, c) for s in range(n) for t in range(n) for c in range(cap + 1)]
    for i in range(k - 1, -1, -1):
        nxt = feasible[i + 1]
        if not nxt:
            return None
        x = terms[i]
        deltas = {((a * x) % n, (b * a) % n) for a, b in pairs}
        cur = set()
        for state in all_states:
            if allow_skip and state in nxt:
                cur.add(state)
                continue
            s, t, c = state
            c2 = c + 1
            if c2 > cap:
                if not saturate:
                    continue
                c2 = cap
            for ds, dt in deltas:
                if ((s + ds) % n, (t + dt) % n, c2) in nxt:
                    cur.add(state)
                    break
        feasible[i] = cur
    state = (0, 0, 0)
    if state not in feasible[0]:
        return None
    idx, a_out, b_out = [], [], []
    for i, x in enumerate(terms):
        for choice in choices:
            nxt = advance(state, x, choice)
            if nxt is not None and nxt in feasible[i + 1]:
                break
        else:  # pragma: no cover - feasibility guarantees a choice
            raise AssertionError("witness reconstruction lost its way")
        if choice is not _SKIP:
            idx.append(i)
            a_out.append(choice[0])
            b_out.append(choice[1])
        state = nxt
    return idx, a_out, b_out


def _require_nonempty(S: Sequence) -> None:
    if len(S) == 0:
        raise ValueError("empty sequence has no weighted zero-sum status")


def _check_sets(S: Sequence, *sets: WeightSet) -> None:
    for W in sets:
        if W.n != S.n:
            raise ModulusMismatch(f"weight set mod {W.n} used with a sequence mod {S.n}")


def is_pair_wzs(S: Sequence, A: WeightSet, B: WeightSet) -> Optional[Witness]:
    """Witness that the whole of ``S`` is (A,B)-weighted zero-sum, or ``None``."""
    _require_nonempty(S)
    _check_sets(S, A, B)
    if not kernel(S.n, A, B).is_full(S.terms):
        return None
    found = _lexmin_witness(S.n, S.terms, A, B, allow_skip=False, cap=0, target=0, saturate=True)
    assert found is not None
    idx, a, b = found
    return Witness(tuple(idx), tuple(a), tuple(b))


def is_a_wzs(S: Sequence, A: WeightSet) -> Optional[Witness]:
    """Witness that ``S`` is A-weighted zero-sum (B-coefficients left empty)."""
    w = is_pair_wzs(S, A, zero_set(S.n))
    if w is None:
        return None
    return Witness(w.indices, w.a_coeffs, ())


def has_wzs_subsequence(S: Sequence, A: WeightSet, B: WeightSet, constraint: SubsequenceConstraint) -> bool:
    """Yes/no form of :func:`find_wzs_subsequence` (fast route only)."""
    _check_sets(S, A, B)
    return kernel(S.n, A, B).has(S.terms, constraint)


def find_wzs_subsequence(
    S: Sequence, A: WeightSet, B: WeightSet, constraint: SubsequenceConstraint = ANY
) -> Optional[Witness]:
    """Find a non-empty (A,B)-weighted zero-sum subsequence obeying ``constraint``.

    The returned witness carries the selected positions.  For ``CONSECUTIVE``
    blocks are tried by increasing start, then increasing length.
    """
    _check_sets(S, A, B)
    n, terms = S.n, S.terms
    K = kernel(n, A, B)
    if constraint.kind is ConstraintKind.CONSECUTIVE:
        for start in range(len(terms)):
            mask = 1
            for end in range(start, len(terms)):
                mask = K.shift(mask, terms[end])
                if not mask:
                    break
                if mask & 1:
                    found = _lexmin_witness(
                        n, terms[start : end + 1], A, B, allow_skip=False, cap=0, target=0, saturate=True
                    )
                    _, a, b = found
                    return Witness(tuple(range(start, end + 1)), tuple(a), tuple(b))
        return None
    if constraint.kind is ConstraintKind.ANY:
        if not K.has_any(terms):
            return None
        found = _lexmin_witness(n, terms, A, B, allow_skip=True, cap=1, target=1, saturate=True)
    else:
        L = constraint.length
        if not K.has_exact(terms, L):
            return None
        found = _lexmin_witness(n, terms, A, B, allow_skip=True, cap=L, target=L, saturate=False)
    idx, a, b = found
    return Witness(tuple(idx), tuple(a), tuple(b))


# -- oracle -------------------------------------------------------------------


def brute_force_is_pair_wzs(S: Sequence, A: WeightSet, B: WeightSet, budget: int = ORACLE_BUDGET) -> bool:
    """Ground truth by enumerating every coefficient tuple.  Test use only."""
    _require_nonempty(S)
    k, n = len(S), S.n
    if len(A) ** k * len(B) ** k > budget:
        raise OracleBudgetExceeded(f"oracle budget: |A|^k*|B|^k exceeds {budget}")
    for a in itertools.product(A.members, repeat=k):
        if sum(ai * xi for ai, xi in zip(a, S.terms)) % n:
            continue
        for b in itertools.product(B.members, repeat=k):
            if sum(ai * bi for ai, bi in zip(a, b)) % n == 0:
                return True
    return False


def brute_force_has_subsequence(
    S: Sequence, A: WeightSet, B: WeightSet, constraint: SubsequenceConstraint, budget: int = ORACLE_BUDGET
) -> bool:
    """Oracle for :func:`find_wzs_subsequence`: try every admissible position set."""
    k = len(S)
    if constraint.kind is ConstraintKind.CONSECUTIVE:
        blocks = (tuple(range(i, j)) for i in range(k) for j in range(i + 1, k + 1))
    elif constraint.kind is ConstraintKind.ANY:
        blocks = (c for r in range(1, k + 1) for c in itertools.combinations(range(k), r))
    else:
        blocks = itertools.combinations(range(k), constraint.length) if constraint.length <= k else ()
    for pos in blocks:
        if brute_force_is_pair_wzs(Sequence(S.n, tuple(S.terms[i] for i in pos)), A, B, budget):
            return True
    return False
