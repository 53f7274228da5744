"""Command-line front end: ``wzsum check|constant|extremal|verify|cache``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from typing import Optional

from .cache import ResultCache
from .constants import DEFAULT_BUDGET, ENGINE_VERSION, BudgetExceeded, Kind, compute_constant
from .engine import Sequence, SubsequenceConstraint, find_wzs_subsequence
from .extremal import SymmetryRelation, enumerate_extremal
from .residues import WeightSetError, resolve_weight_set

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

CSV_COLUMNS = ("kind", "n", "A", "B", "value", "method")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _modulus(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"modulus must be an integer, got {text!r}")
    if n < 2:
        raise argparse.ArgumentTypeError(f"modulus must be at least 2, got {n}")
    return n


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def parse_sequence(text: str, n: int) -> Sequence:
    parts = [p.strip() for p in text.strip().strip("()").split(",")]
    if not parts or any(not p for p in parts):
        raise UsageError(f"malformed sequence {text!r}")
    try:
        return Sequence(n, tuple(int(p) % n for p in parts))
    except ValueError:
        raise UsageError(f"malformed sequence {text!r}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--cache-dir", default=None, help="result cache directory (default: $WZSUM_CACHE_DIR or "
                                                          "the platform data dir)")
    common.add_argument("--threads", type=_positive, default=1, help="worker processes")
    common.add_argument("--budget", type=_positive, default=None, help="candidate-evaluation budget")

    weights = _Parser(add_help=False)
    weights.add_argument("--n", type=_modulus, required=True)
    weights.add_argument("--A", dest="A", default="one", help="preset name or literal like {1,-1}")
    weights.add_argument("--B", dest="B", default="one")

    parser = _Parser(prog="wzsum", description="Weighted zero-sum constants over Z_n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common, weights], help="search a sequence for a weighted zero-sum")
    p.add_argument("--seq", required=True, help="comma-separated integers")
    p.add_argument("--mode", default="any", help="any | consecutive | exact:L")

    p = sub.add_parser("constant", parents=[common, weights], help="compute C, D or E")
    p.add_argument("--kind", required=True, type=str.upper, choices=("C", "D", "E"))

    p = sub.add_parser("extremal", parents=[common, weights], help="list extremal classes")
    p.add_argument("--kind", required=True, type=str.upper, choices=("C", "D", "E"))
    p.add_argument("--relation", default="translate-equivalent")

    p = sub.add_parser("verify", parents=[common], help="run the theorem checks")
    p.add_argument("--checks", default="all", help="comma-separated check ids or 'all'")
    p.add_argument("--n-min", type=_modulus, default=2)
    p.add_argument("--n-max", type=_modulus, default=5)
    p.add_argument("--force-expensive", action="store_true")
    p.add_argument("--list", action="store_true", help="print the catalog instead of running it")

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the result cache")
    p.add_argument("action", choices=("list", "clear", "path"))
    return parser


# -- rendering ---------------------------------------------------------------


def _table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(headers, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(headers)
    w.writerows(rows)
    return buf.getvalue().rstrip("\n")


def make_report(command: str, args: dict, results, timing: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "engine_version": ENGINE_VERSION,
        "command": {"name": command, "args": args},
        "results": results,
        "timing": timing,
    }


def _echo(ns: argparse.Namespace) -> dict:
    skip = {"command", "format", "threads", "cache_dir"}
    return {k: v for k, v in sorted(vars(ns).items()) if k not in skip}


def _emit(fmt: str, report: dict, headers, rows, out) -> None:
    if fmt == "json":
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        out.write(_csv(headers, rows) + "\n")
    else:
        out.write(_table(headers, rows) + "\n")


def _fmt_terms(terms) -> str:
    return "(" + ",".join(map(str, terms)) + ")"


def _constant_row(d: dict) -> list:
    return [d[c] if c != "value" or d.get(c) is not None else "BUDGET" for c in CSV_COLUMNS]


# -- commands ----------------------------------------------------------------


def cmd_check(ns, out) -> int:
    A, B = resolve_weight_set(ns.A, ns.n), resolve_weight_set(ns.B, ns.n)
    S = parse_sequence(ns.seq, ns.n)
    try:
        constraint = SubsequenceConstraint.parse(ns.mode)
    except ValueError as exc:
        raise UsageError(str(exc))
    started = time.perf_counter()
    w = find_wzs_subsequence(S, A, B, constraint)
    result = {"n": ns.n, "A": A.spec, "B": B.spec, "sequence": list(S.terms), "mode": str(constraint),
              "found": w is not None, "witness": w.to_dict(one_based=True) if w else None}
    report = make_report("check", _echo(ns), result, {"seconds": round(time.perf_counter() - started, 6)})
    row = ["yes" if w else "no", _fmt_terms(S.terms), str(constraint)]
    headers = ["found", "sequence", "mode"]
    if w:
        d = w.to_dict(one_based=True)
        headers += ["indices", "a", "b"]
        row += [_fmt_terms(d["indices"]), _fmt_terms(d["a"]), _fmt_terms(d["b"]) if d["b"] else "-"]
    _emit(ns.format, report, headers, [row], out)
    return EXIT_OK


def cmd_constant(ns, out, cache: ResultCache) -> int:
    kind = Kind.parse(ns.kind)
    A, B = resolve_weight_set(ns.A, ns.n), resolve_weight_set(ns.B, ns.n)
    started = time.perf_counter()
    res = cache.get(kind, ns.n, A, B)
    status = EXIT_OK
    if res is None:
        try:
            res = compute_constant(kind, ns.n, A, B, budget=ns.budget or DEFAULT_BUDGET, workers=ns.threads)
            cache.put(res)
        except BudgetExceeded as exc:
            res, status = exc, EXIT_BUDGET
    if status == EXIT_BUDGET:
        result = {
            "kind": kind.value, "n": ns.n, "A": A.spec, "B": B.spec, "value": None, "method": "partial",
            "verdict": "BUDGET", "lower_bound": res.lower_bound, "upper_bound": res.upper_bound,
            "examined": res.examined,
            "witness_extremal": list(res.witness.terms) if res.witness is not None else None,
        }
        headers = ["kind", "n", "A", "B", "verdict", "lower", "upper"]
        rows = [[kind.value, ns.n, A.spec, B.spec, "BUDGET", res.lower_bound, res.upper_bound]]
        if ns.format == "csv":
            headers, rows = list(CSV_COLUMNS), [_constant_row(result)]
    else:
        result = res.to_dict()
        result["verdict"] = "EXACT"
        headers, rows = list(CSV_COLUMNS), [_constant_row(result)]
        if ns.format == "table":
            headers.append("extremal example")
            rows[0].append(_fmt_terms(result["witness_extremal"]))
    report = make_report("constant", _echo(ns), result, {"seconds": round(time.perf_counter() - started, 6)})
    _emit(ns.format, report, headers, rows, out)
    return status


def cmd_extremal(ns, out, cache: ResultCache) -> int:
    kind = Kind.parse(ns.kind)
    try:
        rel = SymmetryRelation.parse(ns.relation)
    except ValueError as exc:
        raise UsageError(str(exc))
    A, B = resolve_weight_set(ns.A, ns.n), resolve_weight_set(ns.B, ns.n)
    budget = ns.budget or DEFAULT_BUDGET
    started = time.perf_counter()
    try:
        res = cache.get(kind, ns.n, A, B)
        if res is None:
            res = compute_constant(kind, ns.n, A, B, budget=budget, workers=ns.threads)
            cache.put(res)
        classes = enumerate_extremal(kind, ns.n, A, B, rel, value=res.value, budget=budget, workers=ns.threads)
    except BudgetExceeded as exc:
        out.write(f"budget exhausted: {exc}\n")
        return EXIT_BUDGET
    result = {"kind": kind.value, "n": ns.n, "A": A.spec, "B": B.spec, "value": res.value,
              "relation": rel.value, "classes": [c.to_dict() for c in classes],
              "members": sum(c.orbit_size for c in classes)}
    report = make_report("extremal", _echo(ns), result, {"seconds": round(time.perf_counter() - started, 6)})
    rows = [[i + 1, _fmt_terms(c.canonical.terms), c.orbit_size] for i, c in enumerate(classes)]
    _emit(ns.format, report, ["class", "canonical", "members"], rows, out)
    return EXIT_OK


def cmd_verify(ns, out, cache: ResultCache) -> int:
    from .theorems import HARNESS_BUDGET, UnknownCheck, Verdict, list_checks, run_checks

    if ns.list:
        specs = [s.to_dict() for s in list_checks()]
        report = make_report("verify", _echo(ns), specs, {})
        rows = [[s["check_id"], s["anchor"], s["cost_class"], "yes" if s["external"] else ""] for s in specs]
        _emit(ns.format, report, ["check", "anchor", "cost", "external"], rows, out)
        return EXIT_OK
    if ns.n_max < ns.n_min:
        raise UsageError(f"--n-max {ns.n_max} is below --n-min {ns.n_min}")
    started = time.perf_counter()
    try:
        reports = run_checks(ns.checks, ns.n_min, ns.n_max, budget=ns.budget or HARNESS_BUDGET,
                             force=ns.force_expensive, threads=ns.threads, cache=cache)
    except UnknownCheck as exc:
        raise UsageError(f"unknown check id {exc.args[0]!r}")
    results = [r.to_dict(with_timing=False) for r in reports]
    timing = {"seconds": round(time.perf_counter() - started, 6),
              "per_check": {f"{r.check_id}@{r.n}": round(r.elapsed, 6) for r in reports}}
    counts = {v.value: sum(r.verdict is v for r in reports) for v in Verdict}
    report = make_report("verify", _echo(ns), {"summary": counts, "checks": results}, timing)
    rows = [[r.check_id, r.n, r.verdict.value, _detail(r)] for r in reports]
    _emit(ns.format, report, ["check", "n", "verdict", "detail"], rows, out)
    if ns.format == "table":
        out.write(" ".join(f"{k}={v}" for k, v in counts.items()) + "\n")
    return EXIT_FAIL if counts["FAIL"] else EXIT_OK


def _detail(report) -> str:
    bad = [p for p in report.parts if p.verdict.value != "PASS"]
    if bad:
        p = bad[0]
        return f"{p.label}: {p.note or json.dumps(p.evidence, sort_keys=True)}"
    return f"{len(report.parts)} parts"


def cmd_cache(ns, out, cache: ResultCache) -> int:
    if ns.action == "path":
        report = make_report("cache", _echo(ns), {"path": str(cache.path)}, {})
        if ns.format == "json":
            _emit("json", report, [], [], out)
        else:
            out.write(str(cache.path) + "\n")
        return EXIT_OK
    if ns.action == "clear":
        removed = cache.clear()
        report = make_report("cache", _echo(ns), {"removed": removed}, {})
        _emit(ns.format, report, ["removed"], [[removed]], out)
        return EXIT_OK
    entries = [e.to_dict() for e in cache.entries()]
    report = make_report("cache", _echo(ns), entries, {})
    _emit(ns.format, report, list(CSV_COLUMNS), [_constant_row(e) for e in entries], out)
    return EXIT_OK


_VALUE_FLAGS = ("--seq", "--A", "--B")


def _bind_negative_values(argv: list[str]) -> list[str]:
    """Let ``--seq -1,2`` through: argparse would read ``-1,2`` as an option."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and re.match(r"^[{(]?-\d", argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    argv = _bind_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        ns = build_parser().parse_args(argv)
        cache = ResultCache(ns.cache_dir)
        if ns.command == "check":
            return cmd_check(ns, out)
        if ns.command == "constant":
            return cmd_constant(ns, out, cache)
        if ns.command == "extremal":
            return cmd_extremal(ns, out, cache)
        if ns.command == "verify":
            return cmd_verify(ns, out, cache)
        return cmd_cache(ns, out, cache)
    except (UsageError, WeightSetError) as exc:
        sys.stderr.write(f"wzsum: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
