"""Check catalog, per-check context and the runner."""

from __future__ import annotations

import enum
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

from ..constants import BudgetExceeded, ConstantResult, Kind, compute_constant
from ..engine import Sequence
from ..extremal import extremal_members
from ..residues import WeightSet, resolve_weight_set

HARNESS_BUDGET = 2 * 10**7


class CostClass(enum.Enum):
    CHEAP = "cheap"
    MODERATE = "moderate"
    EXPENSIVE = "expensive"


class Verdict(enum.Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    SKIPPED_BUDGET = "SKIPPED_BUDGET"


class UnknownCheck(KeyError):
    pass


def _always(n: int) -> bool:
    return True


@dataclass(frozen=True)
class CheckSpec:
    check_id: str
    anchor: str
    statement: str
    expected: str
    n_min: int = 2
    n_max: Optional[int] = None
    cost_class: CostClass = CostClass.CHEAP
    expensive_from: Optional[int] = None
    external: bool = False
    applies: Callable[[int], bool] = _always
    run: Callable[[int, "CheckContext"], None] = field(default=None, compare=False, repr=False)

    def cost_at(self, n: int) -> CostClass:
        if self.expensive_from is not None and n >= self.expensive_from:
            return CostClass.EXPENSIVE
        return self.cost_class

    def covers(self, n: int) -> bool:
        if n < self.n_min or (self.n_max is not None and n > self.n_max):
            return False
        return self.applies(n)

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "statement": self.statement,
            "expected": self.expected,
            "n_range": [self.n_min, self.n_max],
            "cost_class": self.cost_class.value,
            "expensive_from": self.expensive_from,
            "external": self.external,
        }


@dataclass
class Part:
    label: str
    verdict: Verdict
    instances: int = 0
    note: str = ""
    evidence: Optional[dict] = None

    def to_dict(self) -> dict:
        d = {"label": self.label, "verdict": self.verdict.value, "instances": self.instances}
        if self.note:
            d["note"] = self.note
        if self.evidence is not None:
            d["evidence"] = self.evidence
        return d


@dataclass
class CheckReport:
    check_id: str
    n: int
    verdict: Verdict
    evidence: Optional[dict]
    elapsed: float
    parts: list[Part] = field(default_factory=list)

    def to_dict(self, with_timing: bool = True) -> dict:
        d = {
            "check_id": self.check_id,
            "n": self.n,
            "verdict": self.verdict.value,
            "evidence": self.evidence,
            "parts": [p.to_dict() for p in self.parts],
        }
        if with_timing:
            d["elapsed"] = round(self.elapsed, 6)
        return d


def _jsonable(x):
    if isinstance(x, Sequence):
        return list(x.terms)
    if isinstance(x, WeightSet):
        return x.spec
    if isinstance(x, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in x]
        return sorted(items) if isinstance(x, (set, frozenset)) else items
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, enum.Enum):
        return x.value
    return x


class CheckContext:
    """Collects the parts of one check at one modulus and memoises constants."""

    def __init__(self, budget: int = HARNESS_BUDGET, force: bool = False, cache=None,
                 memo: Optional[dict] = None):
        self.budget = budget
        self.force = force
        self.cache = cache
        self.parts: list[Part] = []
        self._memo = memo if memo is not None else {}

    # recording
    def expect(self, label: str, condition: bool, evidence=None, instances: int = 1, note: str = "") -> bool:
        verdict = Verdict.PASS if condition else Verdict.FAIL
        ev = None if condition else _jsonable(evidence if evidence is not None else {"claim": label})
        if not condition and not isinstance(ev, dict):
            ev = {"value": ev}
        self.parts.append(Part(label, verdict, instances, note, ev))
        return bool(condition)

    def expect_equal(self, label: str, actual, expected) -> bool:
        return self.expect(label, actual == expected, {"expected": expected, "actual": actual},
                           note=f"{_short(actual)}")

    def skip(self, label: str, reason: str) -> None:
        self.parts.append(Part(label, Verdict.SKIPPED_BUDGET, 0, reason))

    def forall(self, label: str, cases: Iterable, predicate: Callable, positive: Optional[Callable] = None) -> bool:
        """Check ``predicate`` on every case; stops at the first counterexample.

        ``positive`` marks the cases that actually exercise the claim (e.g. the
        hypothesis holds); a property with no positive case fails as vacuous.
        """
        count = hits = 0
        for case in cases:
            count += 1
            if positive is not None and not positive(case):
                continue
            hits += 1
            if not predicate(case):
                self.parts.append(Part(label, Verdict.FAIL, hits, "counterexample",
                                       _jsonable({"counterexample": case})))
                return False
        if hits == 0:
            self.parts.append(Part(label, Verdict.FAIL, 0, "vacuous: no instance satisfied the hypothesis"))
            return False
        self.parts.append(Part(label, Verdict.PASS, hits, f"{hits} of {count} cases exercised"))
        return True

    def allow_expensive(self, label: str, spec_cost: CostClass) -> bool:
        if spec_cost is CostClass.EXPENSIVE and not self.force:
            self.skip(label, "expensive; rerun with force to evaluate")
            return False
        return True

    # memoised computations
    def result(self, kind, n: int, A, B) -> ConstantResult:
        kind = Kind.parse(kind)
        A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
        key = ("const", kind, n, A, B)
        if key not in self._memo:
            res = self.cache.get(kind, n, A, B) if self.cache is not None else None
            if res is None:
                res = compute_constant(kind, n, A, B, budget=self.budget)
                if self.cache is not None:
                    self.cache.put(res)
            self._memo[key] = res
        return self._memo[key]

    def constant(self, kind, n: int, A, B) -> int:
        return self.result(kind, n, A, B).value

    def members(self, kind, n: int, A, B) -> set[tuple[int, ...]]:
        kind = Kind.parse(kind)
        A, B = resolve_weight_set(A, n), resolve_weight_set(B, n)
        key = ("members", kind, n, A, B)
        if key not in self._memo:
            value = self.constant(kind, n, A, B)
            self._memo[key] = extremal_members(kind, n, A, B, value=value, budget=self.budget)
        return self._memo[key]


def _short(x) -> str:
    text = repr(_jsonable(x))
    return text if len(text) <= 60 else text[:57] + "..."


def _aggregate(parts: list[Part]) -> tuple[Verdict, Optional[dict]]:
    for p in parts:
        if p.verdict is Verdict.FAIL:
            return Verdict.FAIL, {"part": p.label, **(p.evidence or {})}
    if not parts:
        return Verdict.FAIL, {"reason": "check recorded nothing"}
    if any(p.verdict is Verdict.SKIPPED_BUDGET for p in parts):
        return Verdict.SKIPPED_BUDGET, None
    return Verdict.PASS, None


def run_one(spec: CheckSpec, n: int, budget: int = HARNESS_BUDGET, force: bool = False, cache=None,
            memo: Optional[dict] = None) -> CheckReport:
    ctx = CheckContext(budget=budget, force=force, cache=cache, memo=memo)
    started = time.perf_counter()
    if spec.cost_at(n) is CostClass.EXPENSIVE and spec.expensive_from is None and not force:
        ctx.skip("whole check", "expensive; rerun with force to evaluate")
    else:
        try:
            spec.run(n, ctx)
        except BudgetExceeded as exc:
            ctx.skip("budget", str(exc))
        except Exception as exc:  # a crash inside a check is a failure with evidence
            ctx.parts.append(Part("crash", Verdict.FAIL, 0, type(exc).__name__,
                                  {"error": repr(exc), "traceback": traceback.format_exc(limit=3)}))
    verdict, evidence = _aggregate(ctx.parts)
    return CheckReport(spec.check_id, n, verdict, evidence, time.perf_counter() - started, ctx.parts)


CATALOG: dict[str, CheckSpec] = {}


def register(check_id: str, anchor: str, statement: str, expected: str, **kw):
    """Decorator adding a check function to :data:`CATALOG`."""

    def deco(fn):
        if check_id in CATALOG:
            raise ValueError(f"duplicate check id {check_id}")
        CATALOG[check_id] = CheckSpec(check_id, anchor, statement, expected, run=fn, **kw)
        return fn

    return deco


def list_checks() -> list[CheckSpec]:
    return [CATALOG[k] for k in sorted(CATALOG)]


def select(selection) -> list[CheckSpec]:
    if selection is None or selection == "all" or selection == ["all"]:
        return list_checks()
    if isinstance(selection, str):
        selection = [s for s in selection.split(",") if s.strip()]
    out = []
    for name in selection:
        name = name.strip()
        if name not in CATALOG:
            raise UnknownCheck(name)
        out.append(CATALOG[name])
    return sorted(out, key=lambda s: s.check_id)


class _ReadOnlyCache:
    """Worker-side view of the result cache; new results go back to the parent."""

    def __init__(self, cache):
        self._cache = cache
        self.new: list[ConstantResult] = []

    def get(self, *key):
        return self._cache.get(*key) if self._cache is not None else None

    def put(self, result: ConstantResult) -> None:
        self.new.append(result)


_WORKER_MEMO: dict = {}


def _run_job(args):
    check_id, n, budget, force, cache_dir = args
    cache = None
    if cache_dir is not None:
        from ..cache import ResultCache

        cache = ResultCache(cache_dir)
    view = _ReadOnlyCache(cache)
    report = run_one(CATALOG[check_id], n, budget=budget, force=force, cache=view, memo=_WORKER_MEMO)
    return report, view.new


def run_checks(selection="all", n_min: int = 2, n_max: int = 5, budget: int = HARNESS_BUDGET,
               force: bool = False, threads: int = 1, cache=None) -> list[CheckReport]:
    """Run the selected checks for every modulus in ``[n_min, n_max]`` they cover.

    Reports come back sorted by ``(check_id, n)`` whatever the completion order.
    """
    if n_min < 2 or n_max < n_min:
        raise ValueError(f"bad modulus range [{n_min}, {n_max}]")
    specs = select(selection)
    cache_dir = cache.directory if cache is not None else None
    jobs = [(s.check_id, n, budget, force, cache_dir) for s in specs for n in range(n_min, n_max + 1) if s.covers(n)]
    results = []
    if threads <= 1:
        memo: dict = {}
        for job in jobs:
            view = _ReadOnlyCache(cache)
            report = run_one(CATALOG[job[0]], job[1], budget=budget, force=force, cache=view, memo=memo)
            results.append((report, view.new))
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_job, jobs, chunksize=1))
    reports = []
    for report, new in results:
        reports.append(report)
        if cache is not None:
            for res in new:
                cache.put(res)
    return sorted(reports, key=lambda r: (r.check_id, r.n))
