"""Command line interface: formulas, classification, construction and table checks.

Exit codes: 0 success, 1 verification mismatch, 2 parameter error,
3 data unavailable.  Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterator, Optional, Sequence

from . import gf
from .classifier import (
    SUPPORTED,
    ClassificationResult,
    are_equivalent,
    bruteforce_classify,
    bruteforce_equiv_oracle,
    canonical_form,
    classify,
    csv_row,
)
from .codes import MultiplicityVector, dual_distance_at_least, is_lcd, min_weight, min_weight_bruteforce
from .simplex import points_count
from .theory import (
    DataUnavailable,
    gaussian_count,
    largest_lcd_weight,
    optimal_generator,
    residual_r,
    residue_offset,
    threshold_s_prime,
)

EXIT_OK, EXIT_MISMATCH, EXIT_PARAM, EXIT_DATA = 0, 1, 2, 3
COST_ORDER = ("FAST", "MEDIUM", "HEAVY")
DEFAULT_BUDGET = "MEDIUM"


class ParamError(ValueError):
    pass


def _err(msg: str) -> None:
    print(msg, file=sys.stderr)


def _pair(q: int, k: int) -> None:
    if (q, k) not in SUPPORTED:
        raise ParamError(f"unsupported (q, k) = ({q}, {k}); supported: {SUPPORTED}")


def _vector(text: str, q: int, k: int) -> MultiplicityVector:
    try:
        m = tuple(int(x) for x in text.replace(" ", "").strip("()[]").split(","))
    except ValueError as exc:
        raise ParamError(f"cannot parse multiplicity vector {text!r}") from exc
    if len(m) != points_count(q, k):
        raise ParamError(f"vector has {len(m)} entries, (q, k) = ({q}, {k}) needs {points_count(q, k)}")
    try:
        return MultiplicityVector(q, k, m)
    except ValueError as exc:
        raise ParamError(str(exc)) from exc


# ---------------------------------------------------------------------------
# expected tables


@dataclass(frozen=True)
class ExpectedTable:
    name: str
    kind: str
    source: str
    path: Path
    data: dict

    @property
    def entries(self) -> list[dict]:
        return self.data["entries"]


def tables_dir() -> Path:
    return Path(str(resources.files("lcdkit") / "data" / "tables"))


def load_tables(root: Optional[Path] = None) -> list[ExpectedTable]:
    out = []
    for path in sorted((root or tables_dir()).glob("*.json")):
        data = json.loads(path.read_text())
        out.append(ExpectedTable(data["name"], data["kind"], data["source"], path, data))
    return out


@dataclass
class Check:
    table: str
    row: str
    expected: object
    got: object

    @property
    def ok(self) -> bool:
        return self.expected == self.got


class _Cache:
    """Classifications reused across tables within one run."""

    def __init__(self, workers: int):
        self.workers = workers
        self._res: dict[tuple, ClassificationResult] = {}

    def get(self, q: int, k: int, n: int, d: int, mode: str = "exact") -> ClassificationResult:
        key = (q, k, n, d, mode)
        if key not in self._res:
            self._res[key] = classify(q, k, n, d, mode, workers=self.workers)
        return self._res[key]


def _check_counts(t: ExpectedTable, e: dict, cache: _Cache) -> Iterator[Check]:
    q, k, n = t.data["q"], t.data["k"], e["n"]
    d = largest_lcd_weight(q, k, n).d
    yield Check(t.name, f"n={n}", e["count"], cache.get(q, k, n, d).count)


def _check_parameters(t: ExpectedTable, e: dict, cache: _Cache) -> Iterator[Check]:
    q, k, ti = t.data["q"], t.data["k"], e["t"]
    v = gaussian_count(q, k)
    row = f"t={ti}"
    alpha = residue_offset(q, k, ti)
    yield Check(t.name, row + " alpha", e["alpha"], alpha)
    s = e["s_prime"]
    yield Check(t.name, row + " r", e["r"], residual_r(q, v * s + ti, k, q ** (k - 1) * s + alpha))
    yield Check(t.name, row + " s'", e["s_prime"], threshold_s_prime(q, k, ti, alpha))
    r = e["r"]
    yield Check(t.name, row + f" N at [{q * r},{k},{(q - 1) * r}]", e["count"],
                cache.get(q, k, q * r, (q - 1) * r).count)


def _check_vector(t: ExpectedTable, e: dict, cache: _Cache) -> Iterator[Check]:
    q, k = t.data["q"], t.data["k"]
    mv = MultiplicityVector(q, k, tuple(e["m"]))
    label = e["label"]
    yield Check(t.name, label + " n", e["n"], mv.n)
    yield Check(t.name, label + " LCD", True, is_lcd(mv))
    yield Check(t.name, label + " d", e["d"], min_weight(mv))
    yield Check(t.name, label + " dual distance >= 2", True, dual_distance_at_least(mv.generator(), 2))
    reps = cache.get(q, k, e["n"], e["d"]).representatives
    hits = sum(1 for r in reps if r == canonical_form(mv))
    yield Check(t.name, label + " matching classes", 1, hits)


def _check_nonexistence(t: ExpectedTable, e: dict, cache: _Cache) -> Iterator[Check]:
    q, k, n, d = e["q"], e["k"], e["n"], e["d"]
    yield Check(t.name, f"[{n},{k},>={d}] over GF({q})", 0, cache.get(q, k, n, d, "at-least").count)


CHECKERS: dict[str, Callable[[ExpectedTable, dict, _Cache], Iterator[Check]]] = {
    "counts": _check_counts,
    "parameters": _check_parameters,
    "vectors": _check_vector,
    "nonexistence": _check_nonexistence,
}


def verify_tables(
    tables: Sequence[ExpectedTable], budget: str = DEFAULT_BUDGET, workers: int = 1,
    cache: Optional[_Cache] = None,
) -> tuple[list[Check], int]:
    """Recompute every entry whose cost class fits the budget; returns (checks, skipped)."""
    limit = COST_ORDER.index(budget)
    cache = cache or _Cache(workers)
    checks: list[Check] = []
    skipped = 0
    for t in tables:
        for e in t.entries:
            if COST_ORDER.index(e.get("cost", "FAST")) > limit:
                skipped += 1
                continue
            checks.extend(CHECKERS[t.kind](t, e, cache))
    return checks, skipped


# ---------------------------------------------------------------------------
# commands


def cmd_dmax(args) -> int:
    ans = largest_lcd_weight(args.q, args.k, args.n)
    if args.format == "jsonl":
        print(json.dumps({"q": ans.q, "k": ans.k, "n": ans.n, "d": ans.d,
                          "branch": ans.branch, "source": ans.citation}))
    else:
        print(ans.d)
        print(f"branch: {ans.branch}")
        print(f"source: {ans.citation}")
    return EXIT_OK


def cmd_classify(args) -> int:
    _pair(args.q, args.k)
    d = args.d if args.d is not None else largest_lcd_weight(args.q, args.k, args.n).d
    t0 = time.perf_counter()
    res = classify(args.q, args.k, args.n, d, args.mode, workers=args.workers)
    _err(f"classified (q,k,n,d)=({args.q},{args.k},{args.n},{d}) mode={args.mode}: "
         f"{res.count} classes in {time.perf_counter() - t0:.2f}s")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            if args.format == "csv":
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["q", "k", "n", "d", "m"])
                for rec in res.records():
                    w.writerow([rec["q"], rec["k"], rec["n"], rec["d"], " ".join(map(str, rec["m"]))])
            else:
                for rec in res.records():
                    fh.write(json.dumps(rec, separators=(",", ":")) + "\n")
    if args.format == "csv":
        print("q,k,n,d,count")
        print(csv_row(res))
    elif args.format == "jsonl":
        print(json.dumps({"q": res.q, "k": res.k, "n": res.n, "d": res.d, "mode": res.mode,
                          "count": res.count}))
    else:
        print(res.count)
    return EXIT_OK


def cmd_expand(args) -> int:
    _pair(args.q, args.k)
    g = optimal_generator(args.q, args.k, args.n)
    text = gf.format_matrix(g)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    _err(f"LCD [{g.cols},{g.rows},{largest_lcd_weight(args.q, args.k, args.n).d}] code over GF({g.q})")
    return EXIT_OK


def cmd_equiv(args) -> int:
    _pair(args.q, args.k)
    m1 = _vector(args.m1, args.q, args.k)
    m2 = _vector(args.m2, args.q, args.k)
    print("true" if are_equivalent(m1, m2) else "false")
    return EXIT_OK


def cmd_verify_tables(args) -> int:
    tables = load_tables(Path(args.tables_dir) if args.tables_dir else None)
    if args.table:
        wanted = set(args.table)
        tables = [t for t in tables if t.name in wanted or t.path.stem in wanted]
        if not tables:
            raise ParamError(f"no table named {sorted(wanted)}")
    budget = "HEAVY" if args.all else args.budget
    t0 = time.perf_counter()
    checks, skipped = verify_tables(tables, budget, args.workers)
    failed = [c for c in checks if not c.ok]
    for c in checks:
        if not c.ok or args.verbose:
            status = "PASS" if c.ok else "FAIL"
            print(f"{status}\t{c.table}\t{c.row}\texpected={c.expected}\tgot={c.got}")
    _err(f"{len(checks) - len(failed)}/{len(checks)} checks passed, {skipped} entries above "
         f"the {budget} budget skipped, {time.perf_counter() - t0:.1f}s")
    return EXIT_MISMATCH if failed else EXIT_OK


def _read_matrix(path: str) -> gf.GFMatrix:
    try:
        return gf.parse_matrix(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ParamError(f"{path}: {exc}") from exc


def cmd_oracle(args) -> int:
    if args.what == "classify":
        _pair(args.q, args.k)
        counts = bruteforce_classify(args.q, args.k, args.n)
        status = EXIT_OK
        for d in sorted(counts):
            fast = classify(args.q, args.k, args.n, d).count
            mark = "" if fast == counts[d] else "\tMISMATCH"
            if mark:
                status = EXIT_MISMATCH
            print(f"d={d}\toracle={counts[d]}\tclassifier={fast}{mark}")
        return status
    if args.what == "equiv":
        g1, g2 = _read_matrix(args.matrix1), _read_matrix(args.matrix2)
        print("true" if bruteforce_equiv_oracle(g1, g2) else "false")
        return EXIT_OK
    g = _read_matrix(args.matrix1)
    print(min_weight_bruteforce(g))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lcdkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def qkn(p, n=True):
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--k", type=int, required=True)
        if n:
            p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("dmax", help="largest minimum weight of an LCD [n,k] code")
    qkn(p)
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.set_defaults(func=cmd_dmax)

    p = sub.add_parser("classify", help="inequivalent LCD codes with dual distance >= 2")
    qkn(p)
    p.add_argument("--d", type=int, help="minimum weight (default: the optimum)")
    p.add_argument("--mode", choices=("exact", "at-least"), default="exact")
    p.add_argument("--out", help="write one record per class to this file")
    p.add_argument("--format", choices=("text", "jsonl", "csv"), default="text")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("expand", help="generator matrix of an optimal LCD [n,k] code")
    qkn(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("equiv", help="equivalence of two multiplicity vectors")
    qkn(p, n=False)
    p.add_argument("m1", help="comma separated, e.g. 4,4,3,0")
    p.add_argument("m2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("verify-tables", help="recompute the expected tables")
    p.add_argument("--table", action="append", help="table name or file stem (repeatable)")
    p.add_argument("--all", action="store_true", help="include HEAVY entries")
    p.add_argument("--budget", choices=COST_ORDER, default=DEFAULT_BUDGET)
    p.add_argument("--tables-dir", help="read expected tables from this directory")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true", help="print passing checks too")
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("oracle", help="brute-force reference computations (small n)")
    osub = p.add_subparsers(dest="what", required=True)
    o = osub.add_parser("classify", help="class counts by full monomial enumeration")
    qkn(o)
    o = osub.add_parser("equiv", help="monomial equivalence of two matrix files")
    o.add_argument("matrix1")
    o.add_argument("matrix2")
    o = osub.add_parser("min-weight", help="minimum weight by message enumeration")
    o.add_argument("matrix1")
    p.set_defaults(func=cmd_oracle)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataUnavailable as exc:
        _err(f"data unavailable: {exc}")
        return EXIT_DATA
    except (ParamError, ValueError) as exc:
        _err(f"parameter error: {exc}")
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
