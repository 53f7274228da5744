"""Deliberately naive reference implementations used only by the tests.

Nothing here imports the package: states are Python sets, subsequences are
enumerated explicitly and constants come from scanning every ordered sequence.
"""

from __future__ import annotations

import itertools
from math import gcd

PRESETS = ("one", "zero", "all-nonzero", "units", "minus-one")


def weight_set(spec, n):
    if isinstance(spec, str) and spec.startswith("{"):
        spec = [int(t) for t in spec.strip("{}").split(",")]
    if isinstance(spec, str):
        return {
            "one": [1],
            "zero": [0],
            "all-nonzero": list(range(1, n)),
            "units": [u for u in range(1, n) if gcd(u, n) == 1],
            "minus-one": [(n - 1) % n],
        }[spec]
    return sorted({x % n for x in spec})


def pair_zero_sum(terms, A, B, n):
    """True when some a_i in A, b_i in B give sum a_i x_i = 0 and sum b_i a_i = 0."""
    if not terms:
        return False
    states = {(0, 0)}
    for x in terms:
        states = {((s + a * x) % n, (t + a * b) % n) for s, t in states for a in A for b in B}
    return (0, 0) in states


def coefficient_zero_sum(terms, A, B, n):
    """Same question by listing every coefficient vector; exponential, tiny inputs only."""
    k = len(terms)
    for a in itertools.product(A, repeat=k):
        if sum(ai * x for ai, x in zip(a, terms)) % n:
            continue
        for b in itertools.product(B, repeat=k):
            if sum(ai * bi for ai, bi in zip(a, b)) % n == 0:
                return True
    return False


def subsequences(terms, mode, n):
    k = len(terms)
    if mode == "consecutive":
        for i in range(k):
            for j in range(i + 1, k + 1):
                yield terms[i:j]
        return
    sizes = range(1, k + 1) if mode == "any" else [int(mode.split(":")[1])]
    for r in sizes:
        if r > k:
            continue
        for pos in itertools.combinations(range(k), r):
            yield tuple(terms[p] for p in pos)


def has_sub(terms, A, B, n, mode):
    return any(pair_zero_sum(t, A, B, n) for t in subsequences(tuple(terms), mode, n))


def mode_for(kind, n):
    return {"C": "consecutive", "D": "any", "E": f"exact:{n}"}[kind]


def survivors(kind, n, A, B, k):
    """Every ordered sequence of length k without a qualifying subsequence."""
    mode = mode_for(kind, n)
    return [t for t in itertools.product(range(n), repeat=k) if not has_sub(t, A, B, n, mode)]


def constant(kind, n, A, B, k_max=12):
    A, B = weight_set(A, n), weight_set(B, n)
    for k in range(1, k_max + 1):
        if not survivors(kind, n, A, B, k):
            return k
    raise RuntimeError("oracle gave up")


def extremal(kind, n, A, B):
    value = constant(kind, n, A, B)
    return set(survivors(kind, n, weight_set(A, n), weight_set(B, n), value - 1))
