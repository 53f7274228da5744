"""Executable statements, one per result, each evaluated at a fixed modulus."""

from __future__ import annotations

import itertools
from math import gcd

from ..constants import Kind, check_all_length_k, constant_lower_bound_check
from ..engine import (
    ANY,
    CONSECUTIVE,
    Sequence,
    Witness,
    concat,
    exact_length,
    has_wzs_subsequence,
    kernel,
    remove,
    translate,
    verify_witness,
)
from ..extremal import SymmetryRelation, orbit
from ..residues import Preset, WeightSet, is_unit, resolve_weight_set
from .core import CostClass, register

ONE, ZERO, NZ, UNITS, NEG = "one", "zero", "all-nonzero", "units", "minus-one"
PRESETS = (ONE, ZERO, NZ, UNITS, NEG)


def W(spec, n: int) -> WeightSet:
    return resolve_weight_set(spec, n)


def full(S, n, A, B) -> bool:
    return kernel(n, W(A, n), W(B, n)).is_full(tuple(S))


def sequences(n: int, kmin: int, kmax: int):
    for k in range(kmin, kmax + 1):
        yield from itertools.product(range(n), repeat=k)


def multisets(n: int, k: int):
    return itertools.combinations_with_replacement(range(n), k)


def smallest_prime_factor(n: int) -> int:
    return next(p for p in range(2, n + 1) if n % p == 0)


def composite(n: int) -> bool:
    return smallest_prime_factor(n) != n


def not3(n: int) -> bool:
    return n != 3


def unit_As(n: int) -> list[WeightSet]:
    """Sample weight sets inside U(n): {1} and {1,-1}."""
    out = [W([1], n)]
    if n > 2:
        out.append(W([1, n - 1], n))
    return out


def zd_As(n: int) -> list[WeightSet]:
    """Sample weight sets inside Z_n' containing a zero-divisor."""
    if not composite(n):
        return []
    return [W([1, smallest_prime_factor(n)], n), W(NZ, n)]


def sample_Bs(n: int) -> list[WeightSet]:
    out = {W(ONE, n), W(NEG, n), W(UNITS, n), W(NZ, n)}
    if composite(n):
        out.add(W([smallest_prime_factor(n)], n))
    return sorted(out, key=lambda w: (len(w), w.members))


def unit_Bs(n: int) -> list[WeightSet]:
    out = {W(ONE, n), W(NEG, n), W(UNITS, n)}
    return sorted(out, key=lambda w: (len(w), w.members))


def zeros_ones(n: int) -> Sequence:
    return Sequence(n, (0,) * (n - 1) + (1,) * (n - 1))


def interleave_zeros(terms) -> tuple[int, ...]:
    out = [0]
    for x in terms:
        out += [x, 0]
    return tuple(out)


def c11_construction(n: int, inner=None) -> Sequence:
    """Blocks of n-1 zeros separated by the terms of ``inner`` (default all ones)."""
    inner = inner if inner is not None else (1,) * (n - 1)
    out = [0] * (n - 1)
    for x in inner:
        out += [x] + [0] * (n - 1)
    return Sequence(n, tuple(out))


def translates(members, n: int) -> set[tuple[int, ...]]:
    return {tuple((x + c) % n for x in m) for m in members for c in range(n)}


def set_diff_evidence(actual: set, expected: set) -> dict:
    return {
        "missing": sorted(expected - actual)[:5],
        "unexpected": sorted(actual - expected)[:5],
        "sizes": [len(actual), len(expected)],
    }


def expect_same_set(ctx, label: str, actual: set, expected: set) -> bool:
    return ctx.expect(label, actual == expected, set_diff_evidence(actual, expected), instances=len(actual),
                      note=f"{len(actual)} sequences")


# -- basic definitions and general bounds ------------------------------------


@register("obs-tr", "Observation tr", "translates of (A,1)-weighted zero-sum sequences stay zero-sum",
          "property over short sequences and all multisets of size n")
def obs_tr(n, ctx):
    cases = [*sequences(n, 1, 3), *multisets(n, n)]
    for A in (ONE, NZ, UNITS, [1, -1]):
        K = kernel(n, W(A, n), W(ONE, n))
        ctx.forall(
            f"A={W(A, n)}",
            ((S, c) for S in cases for c in range(1, n)),
            lambda case: K.is_full(tuple((x + case[1]) % n for x in case[0])),
            positive=lambda case: K.is_full(case[0]),
        )


@register("obs-char", "Observation char", "a zero-sum sequence of length n is (A,B)-weighted zero-sum",
          "property over all zero-sum multisets of size n and all preset pairs")
def obs_char(n, ctx):
    zero_sum = [m for m in multisets(n, n) if sum(m) % n == 0]
    for A in PRESETS:
        for B in PRESETS:
            K = kernel(n, W(A, n), W(B, n))
            ctx.forall(f"A={A},B={B}", zero_sum, K.is_full)


@register("thm-upbd", "Theorem upbd", "C_{A,B}(n) <= n^2 and D_{A,B}(n) <= E_{A,B}(n) <= 2n-1",
          "length-(2n-1) and length-n^2 searches find no survivor", cost_class=CostClass.MODERATE,
          expensive_from=4)
def thm_upbd(n, ctx):
    survivor = check_all_length_k(Kind.E, n, ONE, ONE, 2 * n - 1, budget=ctx.budget)
    ctx.expect("E_{1,1} length 2n-1 all have", survivor is None, {"survivor": survivor})
    for A, B in ((NZ, ONE), (NZ, NZ), (UNITS, ZERO), (ONE, ZERO)):
        d, e = ctx.constant(Kind.D, n, A, B), ctx.constant(Kind.E, n, A, B)
        ctx.expect(f"D<=E<=2n-1 for ({A},{B})", d <= e <= 2 * n - 1, {"D": d, "E": e})
        c = ctx.constant(Kind.C, n, A, B)
        ctx.expect(f"D<=C<=n^2 for ({A},{B})", d <= c <= n * n, {"D": d, "C": c})
    # the cheap pairs above never need the n^2 search, (1,1) does
    if ctx.allow_expensive("C_{1,1} length n^2 all have", CostClass.EXPENSIVE if n >= 4 else CostClass.CHEAP):
        survivor = check_all_length_k(Kind.C, n, ONE, ONE, n * n, budget=ctx.budget)
        ctx.expect("C_{1,1} length n^2 all have", survivor is None, {"survivor": survivor})


def _transport(ctx, kind, n, A, B, rel):
    res = ctx.result(kind, n, A, B)
    S = res.witness_extremal
    images = orbit(S, rel)
    ctx.forall(f"{kind.value}-extremal ({A},{B}) under {rel.value}", images,
               lambda t: constant_lower_bound_check(kind, n, A, B, Sequence(n, t)))


@register("rem-eq", "Remark eq", "extremality is preserved by the symmetry relations",
          "orbits of computed extremal sequences stay extremal", cost_class=CostClass.MODERATE)
def rem_eq(n, ctx):
    R = SymmetryRelation
    for kind in (Kind.D, Kind.E):
        _transport(ctx, kind, n, ONE, ONE, R.TRANSLATE_OF_EQUIVALENT)
        _transport(ctx, kind, n, NZ, ONE, R.TRANSLATE_OF_EQUIVALENT)
        _transport(ctx, kind, n, NZ, NZ, R.EQUIVALENCE)
    _transport(ctx, Kind.C, n, NZ, ONE, R.TRANSLATE_OF_ORDER_EQUIVALENT)
    _transport(ctx, Kind.C, n, NZ, NZ, R.ORDER_EQUIVALENCE)
    if n <= 3:
        _transport(ctx, Kind.C, n, ONE, ONE, R.TRANSLATE_OF_ORDER_EQUIVALENT)


# -- (1,1) -------------------------------------------------------------------


@register("obs-star", "Observation star", "(1,1)-weighted zero-sum iff zero-sum of length divisible by n",
          "biconditional on all short sequences and all multisets up to length 2n")
def obs_star(n, ctx):
    K = kernel(n, W(ONE, n), W(ONE, n))

    def agrees(S):
        return K.is_full(S) == (sum(S) % n == 0 and len(S) % n == 0)

    ctx.forall("ordered, length <= 4", sequences(n, 1, 4), agrees)
    ctx.forall("multisets, length <= 2n", (m for k in range(1, 2 * n + 1) for m in multisets(n, k)), agrees)
    ctx.forall("positive side", (m for k in range(1, 2 * n + 1) for m in multisets(n, k)), K.is_full,
               positive=lambda S: sum(S) % n == 0 and len(S) % n == 0)


@register("thm-e1", "Theorem e'1", "D_{1,1}(n) = E_{1,1}(n) = 2n-1", "D = E = 2n-1")
def thm_e1(n, ctx):
    ctx.expect_equal("D_{1,1}", ctx.constant(Kind.D, n, ONE, ONE), 2 * n - 1)
    ctx.expect_equal("E_{1,1}", ctx.constant(Kind.E, n, ONE, ONE), 2 * n - 1)
    S = zeros_ones(n)
    ctx.expect("0^{n-1}1^{n-1} has no length-n zero-sum", constant_lower_bound_check(Kind.E, n, ONE, ONE, S))


@register("thm-11", "Theorem 11",
          "D-extremal (1,1) = E-extremal (1,1) = E-extremal for 1 = translates of sequences equivalent to "
          "0^{n-1}1^{n-1}", "four equal sets", cost_class=CostClass.MODERATE, expensive_from=6)
def thm_11(n, ctx):
    if not ctx.allow_expensive("four-way set equality", CostClass.EXPENSIVE if n >= 6 else CostClass.CHEAP):
        return
    family = orbit(zeros_ones(n), SymmetryRelation.TRANSLATE_OF_EQUIVALENT)
    expect_same_set(ctx, "(a) D-extremal (1,1)", ctx.members(Kind.D, n, ONE, ONE), family)
    expect_same_set(ctx, "(b) E-extremal (1,1)", ctx.members(Kind.E, n, ONE, ONE), family)
    expect_same_set(ctx, "(c) E-extremal for 1", ctx.members(Kind.E, n, [1], ZERO), family)


@register("thm-c1", "Theorem c'1", "C_{1,1}(n) = n^2", "lower bound by construction; upper bound by search",
          cost_class=CostClass.MODERATE, expensive_from=4)
def thm_c1(n, ctx):
    S = c11_construction(n)
    ctx.expect("construction has length n^2-1", len(S) == n * n - 1, {"length": len(S)})
    ctx.expect("construction has no consecutive (1,1)-zero-sum", constant_lower_bound_check(Kind.C, n, ONE, ONE, S),
               {"sequence": S})
    if ctx.allow_expensive("upper bound C_{1,1} <= n^2", CostClass.EXPENSIVE if n >= 4 else CostClass.CHEAP):
        ctx.expect_equal("C_{1,1}", ctx.constant(Kind.C, n, ONE, ONE), n * n)


@register("con-cext", "Construction cext",
          "zeros interleaved with a C-extremal sequence for 1 are C-extremal for (1,1)",
          "every interleaving has length n^2-1 and no qualifying block", cost_class=CostClass.MODERATE)
def con_cext(n, ctx):
    inner = ctx.members(Kind.C, n, [1], ZERO)
    ctx.expect_equal("C_1", ctx.constant(Kind.C, n, [1], ZERO), n)
    ctx.forall("interleavings", sorted(inner),
               lambda t: len(c11_construction(n, t)) == n * n - 1
               and constant_lower_bound_check(Kind.C, n, ONE, ONE, c11_construction(n, t)))
    if n == 2:
        exact = ctx.members(Kind.C, 2, ONE, ONE)
        expect_same_set(ctx, "C-extremal (1,1) in Z_2", exact, {(0, 1, 0), (1, 0, 1)})
        ctx.expect("(1,0,1) is not an interleaving", (1, 0, 1) not in {c11_construction(2, t).terms for t in inner})
    if n == 3:
        for t in ((0, 1, 0, 0, 2, 2, 0, 0), (0, 1, 0, 0, 1, 0, 0, 1)):
            ctx.expect(f"{t} is C-extremal", len(t) == ctx.constant(Kind.C, 3, ONE, ONE) - 1
                       and constant_lower_bound_check(Kind.C, 3, ONE, ONE, Sequence(3, t)))


# -- (Z_n', 1) ---------------------------------------------------------------


@register("obs-2t", "Observation 2t", "a repeated term gives a (Z_n',1)-weighted zero-sum subsequence",
          "property over all sequences of length 2..4 with a repeat")
def obs_2t(n, ctx):
    K = kernel(n, W(NZ, n), W(ONE, n))
    ctx.forall("repeated term", sequences(n, 2, 4), K.has_any, positive=lambda S: len(set(S)) < len(S))


@register("lem-3d", "Lemma 3d", "three distinct terms form a (Z_n',1)-weighted zero-sum sequence",
          "all distinct triples, with the explicit coefficients (y-z, z-x, x-y)", n_min=3)
def lem_3d(n, ctx):
    A, B = W(NZ, n), W(ONE, n)
    K = kernel(n, A, B)
    triples = [t for t in sequences(n, 3, 3) if len(set(t)) == 3]
    ctx.forall("distinct triples", triples, K.is_full)

    def explicit(t):
        x, y, z = t
        w = Witness((0, 1, 2), ((y - z) % n, (z - x) % n, (x - y) % n), (1, 1, 1))
        return verify_witness(Sequence(n, t), A, B, w)

    ctx.forall("explicit coefficients", triples, explicit)


@register("thm-dnz", "Theorem dnz", "D_{Z_n',1} = 3", "D = 3 and (0,1) is a witness of the lower bound")
def thm_dnz(n, ctx):
    ctx.expect_equal("D_{Z_n',1}", ctx.constant(Kind.D, n, NZ, ONE), 3)
    S = Sequence(n, (0, 1))
    subs = {tuple(S.terms[i] for i in pos) for r in (1, 2) for pos in itertools.combinations(range(2), r)
            if full([S.terms[i] for i in pos], n, NZ, ZERO)}
    ctx.expect_equal("Z_n'-weighted zero-sum subsequences of (0,1)", subs, {(0,)})
    ctx.expect("(0) is not (Z_n',1)-weighted zero-sum", not full((0,), n, NZ, ONE))


@register("thm-cnz", "Theorem cnz", "C_{Z_n',1} = 4", "C = 4, (0,1,0) lower bound, (x,y,x,y) witness")
def thm_cnz(n, ctx):
    ctx.expect_equal("C_{Z_n',1}", ctx.constant(Kind.C, n, NZ, ONE), 4)
    ctx.expect("(0,1,0) has no consecutive (Z_n',1)-zero-sum",
               constant_lower_bound_check(Kind.C, n, NZ, ONE, Sequence(n, (0, 1, 0))))
    A, B = W(NZ, n), W(ONE, n)
    ctx.forall("(x,y,x,y) with a=(1,1,-1,-1)", ((x, y) for x in range(n) for y in range(n) if x != y),
               lambda p: verify_witness(Sequence(n, (p[0], p[1], p[0], p[1])), A, B,
                                        Witness((0, 1, 2, 3), (1, 1, n - 1, n - 1), (1, 1, 1, 1))))


@register("def-seqops", "Definitions S-T and S+T", "removal keeps order, concatenation appends",
          "(1,2,3,4,5) - (2,4) = (1,3,5) and algebraic identities")
def def_seqops(n, ctx):
    S = Sequence(n, (1, 2, 3, 4, 5))
    ctx.expect_equal("(1,2,3,4,5)-(2,4)", remove(S, [1, 3]).terms, tuple(x % n for x in (1, 3, 5)))
    ctx.forall("remove then reinsert", ((t, i) for t in sequences(n, 1, 3) for i in range(len(t))),
               lambda c: concat(remove(Sequence(n, c[0]), [c[1]]), Sequence(n, (c[0][c[1]],))).terms
               == c[0][: c[1]] + c[0][c[1] + 1:] + (c[0][c[1]],))
    ctx.forall("translate composes", ((t, a) for t in sequences(n, 1, 2) for a in range(n)),
               lambda c: translate(translate(Sequence(n, c[0]), c[1]), -c[1]).terms == c[0])


@register("lem-znzs", "Lemma znzs", "two unit terms make a sequence Z_n'-weighted zero-sum (n != 2)",
          "property over all sequences of length 2..4", n_min=3)
def lem_znzs(n, ctx):
    K = kernel(n, W(NZ, n), W(ZERO, n))
    ctx.forall("at least two units", sequences(n, 2, 4), K.is_full,
               positive=lambda S: sum(1 for x in S if is_unit(x, n)) >= 2)


@register("rem-znzd", "Remark znzd", "if every nonzero term is a zero-divisor the sequence is Z_n'-weighted zero-sum",
          "property over all sequences of length 1..4")
def rem_znzd(n, ctx):
    K = kernel(n, W(NZ, n), W(ZERO, n))
    ctx.forall("nonzero terms are zero-divisors", sequences(n, 1, 4), K.is_full,
               positive=lambda S: all(x == 0 or gcd(x, n) > 1 for x in S))


@register("lem-z-prime", "Lemma z'", "two nonzero terms make a sequence Z_n'-weighted zero-sum when n >= 3",
          "exhaustive over length <= 5; (1,1,1,0) fails in Z_2", cost_class=CostClass.MODERATE)
def lem_z_prime(n, ctx):
    K = kernel(n, W(NZ, n), W(ZERO, n))
    if n == 2:
        ctx.expect("(1,1,1,0) is not Z_2'-weighted zero-sum", not K.is_full((1, 1, 1, 0)))
        return
    ctx.forall("at least two nonzero terms", sequences(n, 1, 5), K.is_full,
               positive=lambda S: sum(1 for x in S if x) >= 2)


@register("thm-enz", "Theorem enz", "E_{Z_n',1} = n+1 for n != 3", "E = n+1; (0^{n-1},1) lower bound for every n")
def thm_enz(n, ctx):
    S = Sequence(n, (0,) * (n - 1) + (1,))
    ctx.expect("(0^{n-1},1) is not Z_n'-weighted zero-sum", not full(S.terms, n, NZ, ZERO))
    if n != 3:
        ctx.expect_equal("E_{Z_n',1}", ctx.constant(Kind.E, n, NZ, ONE), n + 1)


@register("thm-enz3", "Theorem enz3", "E_{Z_3',1} = 5", "E = 5; (0,0,1,1) has a single candidate triple",
          n_min=3, n_max=3)
def thm_enz3(n, ctx):
    ctx.expect_equal("E_{Z_3',1}", ctx.constant(Kind.E, 3, NZ, ONE), 5)
    S = (0, 0, 1, 1)
    triples = {tuple(S[i] for i in pos) for pos in itertools.combinations(range(4), 3)
               if full([S[i] for i in pos], 3, NZ, ZERO)}
    ctx.expect_equal("Z_3'-weighted zero-sum triples of (0,0,1,1)", triples, {(0, 1, 1)})
    ctx.expect("(0,1,1) is not (Z_3',1)-weighted zero-sum", not full((0, 1, 1), 3, NZ, ONE))


@register("rem-zn2", "Remark zn2", "(x,y) with y-x not a unit is (Z_n',1)-weighted zero-sum",
          "property over all pairs")
def rem_zn2(n, ctx):
    K = kernel(n, W(NZ, n), W(ONE, n))
    ctx.forall("non-unit difference", sequences(n, 2, 2), K.is_full, positive=lambda p: not is_unit(p[1] - p[0], n))


@register("thm-ednz", "Theorem ednz", "D-extremal for (Z_n',1) = translates of sequences equivalent to (0,1)",
          "set equality")
def thm_ednz(n, ctx):
    expect_same_set(ctx, "D-extremal (Z_n',1)", ctx.members(Kind.D, n, NZ, ONE),
                    orbit(Sequence(n, (0, 1)), SymmetryRelation.TRANSLATE_OF_EQUIVALENT))


@register("thm-ecnz", "Theorem ecnz", "C-extremal for (Z_n',1) = translates of sequences order-equivalent to (0,1,0)",
          "set equality")
def thm_ecnz(n, ctx):
    expect_same_set(ctx, "C-extremal (Z_n',1)", ctx.members(Kind.C, n, NZ, ONE),
                    orbit(Sequence(n, (0, 1, 0)), SymmetryRelation.TRANSLATE_OF_ORDER_EQUIVALENT))


@register("ext-amp", "E-extremal for Z_n' (cited)", "E-extremal sequences for Z_n' are equivalent to (0^{n-1},1)",
          "set equality", external=True, cost_class=CostClass.MODERATE, expensive_from=6)
def ext_amp(n, ctx):
    if not ctx.allow_expensive("set equality", CostClass.EXPENSIVE if n >= 6 else CostClass.CHEAP):
        return
    expect_same_set(ctx, "E-extremal for Z_n'", ctx.members(Kind.E, n, NZ, ZERO),
                    orbit(Sequence(n, (0,) * (n - 1) + (1,)), SymmetryRelation.EQUIVALENCE))


@register("thm-eenz", "Theorem eenz", "E-extremal for (Z_n',1) = translates of E-extremal for Z_n' (n != 3)",
          "set equality; a permutation of Z_n is (Z_n',1)-weighted zero-sum", cost_class=CostClass.MODERATE,
          expensive_from=6, applies=not3)
def thm_eenz(n, ctx):
    if n > 2:
        S = Sequence(n, tuple(range(n)))
        ctx.expect("(0,1,...,n-1) with a=(2,...,2)",
                   verify_witness(S, W(NZ, n), W(ONE, n), Witness(tuple(range(n)), (2,) * n, (1,) * n)))
        ctx.expect("(0,1,...,n-1) has a length-n witness",
                   has_wzs_subsequence(S, W(NZ, n), W(ONE, n), exact_length(n)))
    if not ctx.allow_expensive("set equality", CostClass.EXPENSIVE if n >= 6 else CostClass.CHEAP):
        return
    expect_same_set(ctx, "E-extremal (Z_n',1)", ctx.members(Kind.E, n, NZ, ONE),
                    translates(ctx.members(Kind.E, n, NZ, ZERO), n))


@register("thm-e3ext", "Theorem (E-extremal in Z_3)",
          "E-extremal for (Z_3',1) = translates of sequences equivalent to (1,1,0,0)", "set equality",
          n_min=3, n_max=3)
def thm_e3ext(n, ctx):
    expect_same_set(ctx, "E-extremal (Z_3',1)", ctx.members(Kind.E, 3, NZ, ONE),
                    orbit(Sequence(3, (1, 1, 0, 0)), SymmetryRelation.TRANSLATE_OF_EQUIVALENT))


# -- (A, Z_n') ---------------------------------------------------------------


@register("obs-1zn", "Observation 1zn", "for n != 2 and A in Z_n', A-weighted zero-sum of length >= 2 "
          "implies (A,Z_n')-weighted zero-sum", "property over all sequences of length 2..3", n_min=3)
def obs_1zn(n, ctx):
    for A in unit_As(n) + zd_As(n):
        KA, KAB = kernel(n, A, W(ZERO, n)), kernel(n, A, W(NZ, n))
        ctx.forall(f"A={A}", sequences(n, 2, 3), KAB.is_full, positive=KA.is_full)


@register("rem-d2", "Remark d2", "D_{Z_2',Z_2'} = D_{Z_2'} + 1", "D_{1,1}(2) = 3, D_1(2) = 2", n_min=2, n_max=2)
def rem_d2(n, ctx):
    ctx.expect_equal("D_{1,1}(2)", ctx.constant(Kind.D, 2, ONE, ONE), 3)
    ctx.expect_equal("D_1(2)", ctx.constant(Kind.D, 2, ONE, ZERO), 2)
    ctx.expect_equal("D_{Z_2',Z_2'}", ctx.constant(Kind.D, 2, NZ, NZ), ctx.constant(Kind.D, 2, NZ, ZERO) + 1)


@register("rem-c2", "Remark c2", "C_{Z_2',Z_2'} = 2 C_{Z_2'}", "C_{1,1}(2) = 4, C_1(2) = 2", n_min=2, n_max=2)
def rem_c2(n, ctx):
    ctx.expect_equal("C_{1,1}(2)", ctx.constant(Kind.C, 2, ONE, ONE), 4)
    ctx.expect_equal("C_1(2)", ctx.constant(Kind.C, 2, ONE, ZERO), 2)
    ctx.expect_equal("C_{Z_2',Z_2'}", ctx.constant(Kind.C, 2, NZ, NZ), 2 * ctx.constant(Kind.C, 2, NZ, ZERO))


@register("rem-e2", "Remark e2", "E_{Z_2',Z_2'} = E_{Z_2'}", "E_{1,1}(2) = E_1(2) = 3", n_min=2, n_max=2)
def rem_e2(n, ctx):
    ctx.expect_equal("E_{1,1}(2)", ctx.constant(Kind.E, 2, ONE, ONE), 3)
    ctx.expect_equal("E_1(2)", ctx.constant(Kind.E, 2, ONE, ZERO), 3)
    ctx.expect_equal("E_{Z_2',Z_2'}", ctx.constant(Kind.E, 2, NZ, NZ), ctx.constant(Kind.E, 2, NZ, ZERO))


@register("lem-los", "Lemma los", "for A not inside U(n), a length-one A-weighted zero-sum is (A,Z_n')-weighted",
          "property over all residues", applies=composite)
def lem_los(n, ctx):
    for A in zd_As(n):
        KA, KAB = kernel(n, A, W(ZERO, n)), kernel(n, A, W(NZ, n))
        ctx.forall(f"A={A}", ((x,) for x in range(n)), KAB.is_full, positive=KA.is_full)


def _relational(ctx, n, kind, label, rule):
    for A in unit_As(n) + zd_As(n):
        base = ctx.constant(kind, n, A, ZERO)
        weighted = ctx.constant(kind, n, A, NZ)
        ok, expected = rule(A, base, weighted)
        ctx.expect(f"{label} A={A}", ok, {"A": A, "base": base, "weighted": weighted, "expected": expected},
                   note=f"base={base}, weighted={weighted}")


@register("thm-daan", "Theorem daan", "D_A <= D_{A,Z_n'} <= D_A + 1", "bounds hold for sample A")
def thm_daan(n, ctx):
    _relational(ctx, n, Kind.D, "D bounds", lambda A, b, w: (b <= w <= b + 1, [b, b + 1]))


@register("thm-dan-units", "Theorem dan", "A inside U(n) gives D_{A,Z_n'} = D_A + 1", "exact equality")
def thm_dan_units(n, ctx):
    for A in unit_As(n):
        ctx.expect_equal(f"D_{{A,Z_n'}} A={A}", ctx.constant(Kind.D, n, A, NZ), ctx.constant(Kind.D, n, A, ZERO) + 1)


@register("thm-dan-zd", "Theorem dan", "A with a zero-divisor gives D_{A,Z_n'} = D_A", "exact equality",
          applies=composite)
def thm_dan_zd(n, ctx):
    for A in zd_As(n):
        ctx.expect_equal(f"D_{{A,Z_n'}} A={A}", ctx.constant(Kind.D, n, A, NZ), ctx.constant(Kind.D, n, A, ZERO))


@register("thm-caan", "Theorem caan", "C_A <= C_{A,Z_n'} <= 2 C_A", "bounds hold for sample A")
def thm_caan(n, ctx):
    _relational(ctx, n, Kind.C, "C bounds", lambda A, b, w: (b <= w <= 2 * b, [b, 2 * b]))


@register("thm-can-units", "Theorem can", "A inside U(n) gives C_{A,Z_n'} = 2 C_A", "exact equality",
          cost_class=CostClass.MODERATE)
def thm_can_units(n, ctx):
    for A in unit_As(n):
        ctx.expect_equal(f"C_{{A,Z_n'}} A={A}", ctx.constant(Kind.C, n, A, NZ), 2 * ctx.constant(Kind.C, n, A, ZERO))


@register("thm-can-zd", "Theorem can", "A with a zero-divisor gives C_{A,Z_n'} = C_A", "exact equality",
          applies=composite)
def thm_can_zd(n, ctx):
    for A in zd_As(n):
        ctx.expect_equal(f"C_{{A,Z_n'}} A={A}", ctx.constant(Kind.C, n, A, NZ), ctx.constant(Kind.C, n, A, ZERO))


@register("thm-ean", "Theorem ean", "E_{A,Z_n'} = E_A", "exact equality for sample A")
def thm_ean(n, ctx):
    for A in unit_As(n) + zd_As(n) + [W(NZ, n)]:
        ctx.expect_equal(f"E_{{A,Z_n'}} A={A}", ctx.constant(Kind.E, n, A, NZ), ctx.constant(Kind.E, n, A, ZERO))


# -- extremal sequences for (A, Z_n') ----------------------------------------


@register("rem-zun", "Remark zun", "for A inside U(n) a length-one A-weighted zero-sum is (0)",
          "property over all residues")
def rem_zun(n, ctx):
    for A in unit_As(n) + [W(UNITS, n)]:
        K = kernel(n, A, W(ZERO, n))
        ctx.forall(f"A={A}", ((x,) for x in range(n)), lambda t: t == (0,), positive=K.is_full)


def _with_one_zero(members) -> set[tuple[int, ...]]:
    out = set()
    for m in members:
        for i in range(len(m) + 1):
            out.add(m[:i] + (0,) + m[i:])
    return out


@register("thm-da-prime", "Theorem da'", "for A inside U(n): D-extremal (A,Z_n') = a zero inserted into a "
          "D-extremal sequence for A", "set equality", cost_class=CostClass.MODERATE)
def thm_da_prime(n, ctx):
    for A in unit_As(n):
        expect_same_set(ctx, f"A={A}", ctx.members(Kind.D, n, A, NZ), _with_one_zero(ctx.members(Kind.D, n, A, ZERO)))


@register("thm-dad", "Theorem dad", "for A with a zero-divisor: D-extremal (A,Z_n') = D-extremal for A",
          "set equality", applies=composite)
def thm_dad(n, ctx):
    for A in zd_As(n):
        expect_same_set(ctx, f"A={A}", ctx.members(Kind.D, n, A, NZ), ctx.members(Kind.D, n, A, ZERO))


@register("thm-cad", "Theorem cad", "for A with a zero-divisor: C-extremal (A,Z_n') = C-extremal for A",
          "set equality", applies=composite)
def thm_cad(n, ctx):
    for A in zd_As(n):
        expect_same_set(ctx, f"A={A}", ctx.members(Kind.C, n, A, NZ), ctx.members(Kind.C, n, A, ZERO))


@register("thm-ca-prime", "Theorem ca'", "for A inside U(n): C-extremal (A,Z_n') = (0,x_1,0,...,x_k,0) with "
          "(x_i) C-extremal for A", "set equality for n >= 3; counterexample (1,0,1) at n = 2", cost_class=CostClass.MODERATE)
def thm_ca_prime(n, ctx):
    if n == 2:
        # Z_2' = U(2): the zero-free extremal (1,0,1) breaks the interleaved shape
        members = ctx.members(Kind.C, 2, [1], NZ)
        ctx.expect("(1,0,1) is C-extremal for ({1},Z_2')", (1, 0, 1) in members, {"members": members})
        ctx.expect("(1,0,1) lacks the interleaved-zeros shape",
                   (1, 0, 1) not in {interleave_zeros(m) for m in ctx.members(Kind.C, 2, [1], ZERO)})
        return
    for A in unit_As(n):
        expect_same_set(ctx, f"A={A}", ctx.members(Kind.C, n, A, NZ),
                        {interleave_zeros(m) for m in ctx.members(Kind.C, n, A, ZERO)})


@register("thm-en-prime", "Theorem en'", "E-extremal (A,Z_n') = E-extremal for A", "set equality",
          cost_class=CostClass.MODERATE, expensive_from=6)
def thm_en_prime(n, ctx):
    if not ctx.allow_expensive("set equality", CostClass.EXPENSIVE if n >= 6 else CostClass.CHEAP):
        return
    for A in unit_As(n) + zd_As(n) + [W(NZ, n)]:
        expect_same_set(ctx, f"A={A}", ctx.members(Kind.E, n, A, NZ), ctx.members(Kind.E, n, A, ZERO))


@register("rem-comp", "Remark comp", "E-extremal sets for (Z_n',Z_n') and (Z_n',1) compared",
          "containment for n != 3, strict separation by 1^{n-1}2 for n >= 4, incomparable lengths at n = 3",
          cost_class=CostClass.MODERATE, expensive_from=6)
def rem_comp(n, ctx):
    e_one, e_nz = ctx.constant(Kind.E, n, NZ, ONE), ctx.constant(Kind.E, n, NZ, NZ)
    if n == 3:
        ctx.expect("E_{Z_3',Z_3'} < E_{Z_3',1}", e_nz < e_one, {"E_nz": e_nz, "E_one": e_one})
        sizes = {"(Z_3',1)": len(ctx.members(Kind.E, 3, NZ, ONE)), "(Z_3',Z_3')": len(ctx.members(Kind.E, 3, NZ, NZ))}
        # the two sets live at different lengths; they are enumerated and reported, nothing is asserted
        ctx.expect("both extremal sets enumerated", all(sizes.values()), sizes, note=str(sizes))
        return
    ctx.expect_equal("E_{Z_n',1} = E_{Z_n',Z_n'}", e_one, e_nz)
    if not ctx.allow_expensive("extremal sets", CostClass.EXPENSIVE if n >= 6 else CostClass.CHEAP):
        return
    ext_one, ext_nz = ctx.members(Kind.E, n, NZ, ONE), ctx.members(Kind.E, n, NZ, NZ)
    ctx.expect("(Z_n',Z_n')-extremal inside (Z_n',1)-extremal", ext_nz <= ext_one,
               set_diff_evidence(ext_one & ext_nz, ext_nz), instances=len(ext_nz))
    if n >= 4:
        s1 = (1,) * (n - 1) + (2,)
        ctx.expect("S+1 is E-extremal for (Z_n',1)", s1 in ext_one, {"sequence": s1})
        ctx.expect("S+1 is not E-extremal for (Z_n',Z_n')", s1 not in ext_nz, {"sequence": s1})


# -- (Z_n', B) ---------------------------------------------------------------


@register("lem-ub", "Lemma ub", "(Z_n',1)-weighted zero-sum implies (Z_n',B)-weighted zero-sum for B in Z_n'",
          "property over all sequences of length 1..3")
def lem_ub(n, ctx):
    K1 = kernel(n, W(NZ, n), W(ONE, n))
    for B in sample_Bs(n):
        KB = kernel(n, W(NZ, n), B)
        ctx.forall(f"B={B}", sequences(n, 1, 3), KB.is_full, positive=K1.is_full)


@register("thm-bg-a", "Theorem bg", "2 <= C_{Z_n',B} <= 4", "bounds and the sandwich between B=Z_n' and B=1")
def thm_bg_a(n, ctx):
    lo, hi = ctx.constant(Kind.C, n, NZ, NZ), ctx.constant(Kind.C, n, NZ, ONE)
    for B in sample_Bs(n):
        c = ctx.constant(Kind.C, n, NZ, B)
        ctx.expect(f"B={B}", 2 <= lo <= c <= hi <= 4, {"C_nz": lo, "C_B": c, "C_one": hi}, note=f"C={c}")


@register("thm-bg-b", "Theorem bg", "2 <= D_{Z_n',B} <= 3", "bounds and the sandwich between B=Z_n' and B=1")
def thm_bg_b(n, ctx):
    lo, hi = ctx.constant(Kind.D, n, NZ, NZ), ctx.constant(Kind.D, n, NZ, ONE)
    for B in sample_Bs(n):
        d = ctx.constant(Kind.D, n, NZ, B)
        ctx.expect(f"B={B}", 2 <= lo <= d <= hi <= 3, {"D_nz": lo, "D_B": d, "D_one": hi}, note=f"D={d}")


@register("thm-bg-c", "Theorem bg", "E_{Z_n',B} = n+1 for n != 3", "exact equality", applies=not3)
def thm_bg_c(n, ctx):
    for B in sample_Bs(n):
        ctx.expect_equal(f"E_{{Z_n',B}} B={B}", ctx.constant(Kind.E, n, NZ, B), n + 1)


@register("thm-bg-d", "Theorem bg", "E_{Z_3',Z_3'} = 4 and E_{Z_3',1} = E_{Z_3',{-1}} = 5", "exact values",
          n_min=3, n_max=3)
def thm_bg_d(n, ctx):
    ctx.expect_equal("E_{Z_3',Z_3'}", ctx.constant(Kind.E, 3, NZ, NZ), 4)
    ctx.expect_equal("E_{Z_3',1}", ctx.constant(Kind.E, 3, NZ, ONE), 5)
    ctx.expect_equal("E_{Z_3',{-1}}", ctx.constant(Kind.E, 3, NZ, NEG), 5)


@register("thm-final", "Theorem (B inside U(n))", "B inside U(n) gives C_{Z_n',B} = 4 and D_{Z_n',B} = 3",
          "exact values for B in {1}, {-1}, U(n)")
def thm_final(n, ctx):
    for B in unit_Bs(n):
        ctx.expect_equal(f"C_{{Z_n',B}} B={B}", ctx.constant(Kind.C, n, NZ, B), 4)
        ctx.expect_equal(f"D_{{Z_n',B}} B={B}", ctx.constant(Kind.D, n, NZ, B), 3)
        ctx.expect(f"(0,1) lower bound B={B}", constant_lower_bound_check(Kind.D, n, NZ, B, Sequence(n, (0, 1))))
        ctx.expect(f"(0,1,0) lower bound B={B}",
                   constant_lower_bound_check(Kind.C, n, NZ, B, Sequence(n, (0, 1, 0))))


# -- cited results -----------------------------------------------------------


@register("ext-egz", "E_1 = 2n-1 (cited)", "every 2n-1 residues contain n summing to zero, and 2n-2 may not",
          "E_1(n) = 2n-1", external=True)
def ext_egz(n, ctx):
    ctx.expect_equal("E_1", ctx.constant(Kind.E, n, [1], ZERO), 2 * n - 1)


@register("ext-acfkp", "E_{Z_n'} = n+1 (cited)", "E_{Z_n'}(n) = n+1", "exact value", external=True)
def ext_acfkp(n, ctx):
    ctx.expect_equal("E_{Z_n'}", ctx.constant(Kind.E, n, NZ, ZERO), n + 1)


@register("ext-sks", "C_{Z_n'}, D_{Z_n'}, D_1, C_1 (cited)", "C_{Z_n'} = D_{Z_n'} = 2, D_1 = C_1 = n",
          "exact values", external=True)
def ext_sks(n, ctx):
    ctx.expect_equal("C_{Z_n'}", ctx.constant(Kind.C, n, NZ, ZERO), 2)
    ctx.expect_equal("D_{Z_n'}", ctx.constant(Kind.D, n, NZ, ZERO), 2)
    ctx.expect_equal("D_1", ctx.constant(Kind.D, n, [1], ZERO), n)
    ctx.expect_equal("C_1", ctx.constant(Kind.C, n, [1], ZERO), n)

    def distinct_prefix_sums(t):
        sums = list(itertools.accumulate(t, initial=0))
        return len({s % n for s in sums}) == len(sums)

    expected = {t for t in sequences(n, n - 1, n - 1) if distinct_prefix_sums(t)}
    expect_same_set(ctx, "C-extremal for 1 = distinct prefix sums", ctx.members(Kind.C, n, [1], ZERO), expected)
