from pathlib import Path

import pytest

from wzsum.theorems import (
    CATALOG,
    CheckContext,
    CostClass,
    UnknownCheck,
    Verdict,
    list_checks,
    run_checks,
    run_one,
)
from wzsum.theorems.core import Part, _aggregate, register

ANCHORS = Path(__file__).parent / "data" / "anchors.txt"


def anchor_table():
    table = {}
    for line in ANCHORS.read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        label, ids = line.split("|")
        table[label.strip()] = [i.strip() for i in ids.split(",")]
    return table


def test_catalog_matches_anchor_list():
    table = anchor_table()
    listed = {i for ids in table.values() for i in ids}
    assert listed == set(CATALOG)
    for label, ids in table.items():
        for i in ids:
            assert CATALOG[i].anchor == label, i


def test_catalog_basics():
    specs = list_checks()
    assert len(specs) >= 30
    assert [s.check_id for s in specs] == sorted(CATALOG)
    assert CATALOG["lem-znzs"].anchor == "Lemma znzs"
    assert CATALOG["obs-star"].anchor == "Observation star"
    assert {s.check_id for s in specs if s.external} == {"ext-egz", "ext-acfkp", "ext-sks", "ext-amp"}
    d = CATALOG["thm-e1"].to_dict()
    assert d["cost_class"] == "cheap" and d["n_range"] == [2, None]


def test_expensive_classification():
    assert CATALOG["thm-c1"].cost_at(4) is CostClass.EXPENSIVE
    assert CATALOG["thm-c1"].cost_at(3) is CostClass.MODERATE
    assert CATALOG["thm-11"].cost_at(6) is CostClass.EXPENSIVE


def report_for(check_id, n, **kw):
    (r,) = run_checks([check_id], n, n, **kw)
    return r


def test_documented_runs():
    r = report_for("thm-e1", 4)
    assert r.verdict is Verdict.PASS and all(p.note in ("7",) for p in r.parts[:2])
    assert report_for("thm-dan-units", 6).verdict is Verdict.PASS
    r = report_for("thm-c1", 4)
    assert r.verdict is Verdict.SKIPPED_BUDGET
    verdicts = {p.label: p.verdict for p in r.parts}
    assert verdicts["construction has no consecutive (1,1)-zero-sum"] is Verdict.PASS
    assert verdicts["upper bound C_{1,1} <= n^2"] is Verdict.SKIPPED_BUDGET
    assert report_for("thm-bg-d", 3).verdict is Verdict.PASS


def test_forced_expensive_run():
    r = report_for("thm-c1", 4, force=True)
    assert r.verdict is Verdict.PASS
    assert report_for("thm-11", 6, force=True).verdict is Verdict.PASS


def test_budget_exhaustion_is_a_skip():
    r = report_for("thm-c1", 5, force=True, budget=10_000)
    assert r.verdict is Verdict.SKIPPED_BUDGET
    assert any("budget" in p.note for p in r.parts)


def test_unknown_check():
    with pytest.raises(UnknownCheck):
        run_checks(["nope"], 2, 3)
    with pytest.raises(ValueError):
        run_checks("all", 4, 3)


def test_applicability_windows():
    ns = [r.n for r in run_checks(["lem-los", "thm-enz3"], 2, 6)]
    assert ns == [4, 6, 3]


def test_parallel_reports_are_order_stable():
    sel = ["thm-dnz", "thm-cnz", "obs-star", "rem-zn2"]
    serial = run_checks(sel, 2, 5)
    parallel = run_checks(sel, 2, 5, threads=4)
    assert [r.to_dict(with_timing=False) for r in serial] == [r.to_dict(with_timing=False) for r in parallel]
    assert [(r.check_id, r.n) for r in serial] == sorted((r.check_id, r.n) for r in serial)


def test_parallel_run_fills_cache(tmp_path):
    from wzsum.cache import ResultCache

    cache = ResultCache(tmp_path)
    run_checks(["thm-dnz"], 2, 4, threads=2, cache=cache)
    assert {(e.kind.value, e.n) for e in cache.entries()} == {("D", 2), ("D", 3), ("D", 4)}


def test_context_recording():
    ctx = CheckContext()
    assert ctx.forall("even squares", range(10), lambda x: x * x % 2 == 0, positive=lambda x: x % 2 == 0)
    assert not ctx.forall("vacuous", range(10), lambda x: True, positive=lambda x: x > 100)
    assert not ctx.forall("counterexample", range(10), lambda x: x < 5)
    verdicts = [p.verdict for p in ctx.parts]
    assert verdicts == [Verdict.PASS, Verdict.FAIL, Verdict.FAIL]
    assert ctx.parts[0].instances == 5
    assert ctx.parts[2].evidence == {"counterexample": 5}
    assert not ctx.allow_expensive("x", CostClass.EXPENSIVE)
    assert CheckContext(force=True).allow_expensive("x", CostClass.EXPENSIVE)


def test_aggregation_rules():
    P, F, S = (Part("p", Verdict.PASS), Part("f", Verdict.FAIL, evidence={"x": 1}), Part("s", Verdict.SKIPPED_BUDGET))
    assert _aggregate([P, S, F]) == (Verdict.FAIL, {"part": "f", "x": 1})
    assert _aggregate([P, S]) == (Verdict.SKIPPED_BUDGET, None)
    assert _aggregate([P]) == (Verdict.PASS, None)
    assert _aggregate([])[0] is Verdict.FAIL


def test_crash_and_failure_surface_with_evidence():
    @register("tmp-broken", "none", "always fails", "FAIL")
    def broken(n, ctx):
        ctx.expect_equal("two", 1 + 1, 3)

    @register("tmp-crash", "none", "raises", "FAIL")
    def crash(n, ctx):
        raise RuntimeError("boom")

    try:
        r = run_one(CATALOG["tmp-broken"], 3)
        assert r.verdict is Verdict.FAIL and r.evidence == {"part": "two", "expected": 3, "actual": 2}
        r = run_one(CATALOG["tmp-crash"], 3)
        assert r.verdict is Verdict.FAIL and "boom" in r.evidence["error"]
    finally:
        CATALOG.pop("tmp-broken"), CATALOG.pop("tmp-crash")


def test_every_check_passes_at_small_n():
    for r in run_checks("all", 2, 4):
        assert r.verdict in (Verdict.PASS, Verdict.SKIPPED_BUDGET), (r.check_id, r.n, r.evidence)
        assert any(p.verdict is Verdict.PASS and p.instances > 0 for p in r.parts) or \
            r.verdict is Verdict.SKIPPED_BUDGET
