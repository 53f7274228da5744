import itertools
import json
import random
from pathlib import Path

import pytest

import oracles
from wzsum.constants import (
    BudgetExceeded,
    ConstantResult,
    Kind,
    Method,
    cap,
    check_all_length_k,
    compute_constant,
    constant_lower_bound_check,
    iter_candidates,
    search_group,
    survivors_at,
)
from wzsum.engine import Sequence, exact_length, has_wzs_subsequence
from wzsum.residues import resolve_weight_set, units

GOLDENS = json.loads((Path(__file__).parent / "data" / "goldens.json").read_text())["constants"]


@pytest.mark.parametrize("row", GOLDENS, ids=lambda r: f"{r['kind']}-{r['n']}-{r['A']}-{r['B']}")
def test_matches_frozen_brute_force_value(row):
    res = compute_constant(row["kind"], row["n"], row["A"], row["B"])
    assert res.value == row["value"]


def test_mixed_weight_golden():
    # frozen from the ordered brute force before the search was optimised
    assert compute_constant("D", 5, "{1,2}", "all-nonzero").value == 4


def test_documented_values():
    assert compute_constant("D", 3, "one", "one").value == 5
    assert compute_constant("C", 2, "one", "one").value == 4
    assert compute_constant("E", 3, "all-nonzero", "one").value == 5


def test_check_all_length_k():
    assert check_all_length_k("D", 3, "one", "one", 5) is None
    assert check_all_length_k("D", 3, "one", "one", 4).terms == (0, 0, 1, 1)
    assert check_all_length_k("E", 4, "all-nonzero", "one", 5) is None
    with pytest.raises(ValueError):
        check_all_length_k("D", 3, "one", "one", 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_lower_bound_constructions(n):
    block = [0] * (n - 1)
    S = Sequence(n, tuple(block + [x for _ in range(n - 1) for x in [1] + block]))
    assert len(S) == n * n - 1
    assert constant_lower_bound_check("C", n, "one", "one", S)
    assert constant_lower_bound_check("E", n, "one", "one", Sequence(n, (0,) * (n - 1) + (1,) * (n - 1)))
    for B in ("one", "minus-one", "units"):
        assert constant_lower_bound_check("D", n, "all-nonzero", B, Sequence(n, (0, 1)))


def test_result_metadata_and_roundtrip():
    res = compute_constant("C", 3, "one", "one")
    assert res.value == 9 and res.method is Method.FULL_ENUMERATION
    assert len(res.witness_extremal) == 8
    assert constant_lower_bound_check("C", 3, "one", "one", res.witness_extremal)
    assert [k for k, _ in res.checked_lengths] == list(range(1, 9)) or res.checked_lengths
    d = res.to_dict()
    assert ConstantResult.from_dict(json.loads(json.dumps(d))) == res
    e = compute_constant("E", 4, "all-nonzero", "one")
    assert e.method is Method.MULTISET_ENUMERATION and list(e.witness_extremal.terms) == sorted(e.witness_extremal.terms)


def test_trust_cap():
    res = compute_constant("D", 4, "one", "one", trust_cap=True)
    assert res.value == 7 and res.method is Method.CAP_CERTIFIED


def test_budget_error_carries_bounds():
    with pytest.raises(BudgetExceeded) as info:
        compute_constant("C", 5, "one", "one", budget=20_000)
    exc = info.value
    assert exc.upper_bound == 25 and 1 <= exc.lower_bound <= 25
    assert exc.witness is not None and len(exc.witness) == exc.lower_bound - 1
    assert constant_lower_bound_check("C", 5, "one", "one", exc.witness)


def test_parallel_search_matches_serial():
    for kind, n, A, B in [("C", 3, "one", "one"), ("D", 5, "one", "one"), ("E", 4, "all-nonzero", "all-nonzero")]:
        assert compute_constant(kind, n, A, B, workers=3) == compute_constant(kind, n, A, B)
        serial = survivors_at(kind, n, A, B, compute_constant(kind, n, A, B).value - 1)
        assert survivors_at(kind, n, A, B, len(serial[0]), workers=3) == serial


@pytest.mark.parametrize("seed", range(4))
def test_multiset_reduction_is_sound(seed):
    rng = random.Random(seed)
    for _ in range(10):
        n, k = rng.randint(2, 5), rng.randint(1, 5)
        kind = rng.choice("DE")
        A, B = rng.choice(oracles.PRESETS), rng.choice(oracles.PRESETS)
        Aw, Bw = resolve_weight_set(A, n), resolve_weight_set(B, n)
        c = {"D": "any", "E": f"exact:{n}"}[kind]
        ordered = [t for t in itertools.product(range(n), repeat=k)
                   if not oracles.has_sub(t, Aw.members, Bw.members, n, c)]
        found = check_all_length_k(kind, n, A, B, k)
        assert (found is None) == (not ordered)
        if found is not None:
            # the reported survivor is the colex-first multiset among the true survivors
            multisets = {tuple(sorted(t)) for t in ordered}
            assert found.terms in multisets
            assert found.terms == min(multisets, key=lambda m: m[::-1])


def test_c_survivors_cover_every_ordered_survivor():
    for n, A, B in [(3, "one", "one"), (4, "all-nonzero", "one"), (4, "all-nonzero", "all-nonzero"), (5, "{1,2}", "zero")]:
        k = compute_constant("C", n, A, B).value - 1
        reps = survivors_at("C", n, A, B, k)
        Bw = resolve_weight_set(B, n)
        group = search_group(Kind.C, n, Bw)
        expanded = {tuple((u * x + c) % n for x in S.terms) for S in reps for u, c in group}
        brute = set(oracles.survivors("C", n, resolve_weight_set(A, n).members, Bw.members, k))
        assert expanded == brute


def test_search_group():
    assert search_group(Kind.C, 5, resolve_weight_set("one", 5))[0] == (1, 0)
    assert len(search_group(Kind.C, 6, resolve_weight_set("one", 6))) == len(units(6)) * 6
    assert len(search_group(Kind.C, 6, resolve_weight_set("all-nonzero", 6))) == len(units(6))


def test_iter_candidates_are_orbit_minimal():
    cands = list(iter_candidates("C", 3, 3))
    assert cands[0].terms == (0, 0, 0)
    assert all(S.terms[0] == 0 for S in cands)
    assert len(list(iter_candidates("D", 3, 2))) == 6


@pytest.mark.parametrize("n", range(2, 6))
def test_inequalities_between_constants(n):
    for A in ("one", "all-nonzero", "units", "{1,-1}"):
        for B in ("one", "all-nonzero", "zero"):
            d, e = (compute_constant(k, n, A, B).value for k in "DE")
            assert d <= e <= cap(Kind.E, n)
            if (A, B) != ("one", "one") or n <= 3:  # C_{1,1}(5) is out of desk range
                c = compute_constant("C", n, A, B).value
                assert d <= c <= cap(Kind.C, n)
    for kind in "CDE":
        # a larger B makes qualifying subsequences easier to find
        assert compute_constant(kind, n, "all-nonzero", "all-nonzero").value <= \
            compute_constant(kind, n, "all-nonzero", "one").value


def test_kind_parse():
    assert Kind.parse("d") is Kind.D
    with pytest.raises(ValueError):
        Kind.parse("F")


def test_survivors_have_no_subsequence():
    for S in survivors_at("E", 5, "all-nonzero", "one", 5):
        assert not has_wzs_subsequence(S, resolve_weight_set("all-nonzero", 5), resolve_weight_set("one", 5),
                                       exact_length(5))
