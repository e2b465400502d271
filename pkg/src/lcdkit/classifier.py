"""Classification of LCD [n, k, d] codes with dual distance >= 2, up to
monomial equivalence, as multiplicity vectors over the points of PG(k-1, q).

Two full-rank codes C(m1), C(m2) are equivalent exactly when m2 = m1 o pi
for a permutation pi induced by GL(k, q), so equivalence classes are orbits
of multiplicity vectors under the induced point group.
"""

from __future__ import annotations

import functools
import itertools
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Literal

import numpy as np

from . import _search
from .codes import MultiplicityVector, min_weight
from .gf import GFMatrix, row_space
from .simplex import (
    K0,
    design_incidence,
    induced_point_group,
    points_count,
    simplex_matrix,
)

log = logging.getLogger(__name__)

Mode = Literal["exact", "at-least"]
SUPPORTED = ((2, 3), (2, 4), (3, 2), (3, 3))


@dataclass(frozen=True)
class SearchBounds:
    lo: int
    hi: int
    pivot_indices: tuple[int, ...]

    @property
    def empty(self) -> bool:
        return self.hi < max(self.lo, 0)


@dataclass
class ClassificationResult:
    q: int
    k: int
    n: int
    d: int
    mode: Mode
    representatives: list[MultiplicityVector] = field(default_factory=list)
    nodes: int = 0

    @property
    def count(self) -> int:
        return len(self.representatives)

    def records(self) -> Iterator[dict]:
        for mv in self.representatives:
            yield {"q": self.q, "k": self.k, "n": self.n, "d": min_weight(mv),
                   "m": list(mv.m), "canonical": True}


def _check_pair(q: int, k: int) -> None:
    if (q, k) not in SUPPORTED:
        raise ValueError(f"classification is only implemented for (q, k) in {SUPPORTED}")


def multiplicity_bounds(q: int, k: int, n: int, d: int) -> SearchBounds:
    """Per-coordinate bounds qd - (q-1)n <= m_i <= n - (q^(k-1)-1)/((q-1)q^(k-2)) d."""
    if k < K0[q]:
        raise ValueError(f"multiplicity bounds need k >= {K0[q]} over GF({q})")
    lo = max(0, q * d - (q - 1) * n)
    ratio = Fraction(q ** (k - 1) - 1, (q - 1) * q ** (k - 2))
    hi = math.floor(n - ratio * d)
    return SearchBounds(lo, hi, tuple(simplex_matrix(q, k).pivots()))


# ---------------------------------------------------------------------------
# kernel plumbing


@dataclass(frozen=True)
class _Tables:
    hyp: np.ndarray
    block_of: np.ndarray
    pivot_of: np.ndarray
    block_end_level: np.ndarray
    perms: np.ndarray
    level_start: np.ndarray
    level_stop: np.ndarray
    outer: np.ndarray


@functools.lru_cache(maxsize=None)
def _tables(q: int, k: int) -> _Tables:
    frame = simplex_matrix(q, k)
    v = frame.size
    hyp = (1 - design_incidence(q, k).A).astype(np.int64)
    pivots = frame.pivots()
    block_of = np.zeros(v, dtype=np.int64)
    block_end_level = np.zeros(v, dtype=np.int64)
    for j in range(k):
        end = points_count(q, j + 1)
        block_of[pivots[j]:end] = j
        if j + 1 >= 2:
            block_end_level[end - 1] = j + 1
    rows = []
    level_start = np.zeros(k + 1, dtype=np.int64)
    level_stop = np.zeros(k + 1, dtype=np.int64)
    total = 0
    for dim in range(2, k + 1):
        g = induced_point_group(q, dim).perms
        padded = np.tile(np.arange(v, dtype=np.int64), (g.shape[0], 1))
        padded[:, : g.shape[1]] = g
        rows.append(padded)
        level_start[dim] = total
        total += g.shape[0]
        level_stop[dim] = total
    perms = np.vstack(rows)
    pts = frame.points
    outer = np.einsum("ia,ib->iab", pts, pts).reshape(v, k * k) % q
    return _Tables(hyp, block_of, np.array(pivots, dtype=np.int64), block_end_level,
                   perms, level_start, level_stop, outer.astype(np.int64))


def _kernel_inputs(q, k, n, d, lb, ub):
    t = _tables(q, k)
    v = lb.shape[0]
    hyp = t.hyp
    nh = hyp.shape[0]
    out_cnt = np.zeros((v, nh), dtype=np.int64)
    in_lb = np.zeros((v, nh), dtype=np.int64)
    rem_lb = np.zeros(v, dtype=np.int64)
    max_ub_after = np.zeros(v, dtype=np.int64)
    for p in range(v):
        after = np.arange(p + 1, v)
        out_cnt[p] = (1 - hyp[:, after]).sum(axis=1)
        in_lb[p] = hyp[:, after] @ lb[after]
        rem_lb[p] = lb[after].sum()
        max_ub_after[p] = ub[after].max() if after.size else 0
    return (t, out_cnt, in_lb, rem_lb, max_ub_after)


def _run(q, k, n, d, exact, orderly, lb, ub, first_lo, first_hi, limit=0):
    t, out_cnt, in_lb, rem_lb, max_ub_after = _kernel_inputs(q, k, n, d, lb, ub)
    return _search.search(
        q, k, n, n - d, exact, orderly, lb, ub, t.hyp, out_cnt, in_lb, rem_lb,
        max_ub_after, t.block_of, t.pivot_of, t.block_end_level, t.perms,
        t.level_start, t.level_stop, t.outer, first_lo, first_hi, limit,
    )


def _coordinate_bounds(q, k, n, d, pivots: bool):
    b = multiplicity_bounds(q, k, n, d)
    v = points_count(q, k)
    lb = np.full(v, b.lo, dtype=np.int64)
    ub = np.full(v, b.hi, dtype=np.int64)
    if pivots:
        for p in b.pivot_indices:
            lb[p] = max(lb[p], 1)
    return b, lb, ub


def _shard(args):
    return _run(*args)


def _search_vectors(q, k, n, d, mode, orderly, pivots, workers=1, limit=0):
    _check_pair(q, k)
    if mode not in ("exact", "at-least"):
        raise ValueError(f"unknown mode {mode!r}")
    if n < k:
        return np.zeros((0, points_count(q, k)), dtype=np.int64), 0
    b, lb, ub = _coordinate_bounds(q, k, n, d, pivots)
    if b.empty or (ub < lb).any():
        return np.zeros((0, lb.shape[0]), dtype=np.int64), 0
    exact = mode == "exact"
    top = int(min(ub[0], n))
    bottom = int(lb[0])
    if workers <= 1 or top <= bottom:
        return _run(q, k, n, d, exact, orderly, lb, ub, bottom, top, limit)
    jobs = [(q, k, n, d, exact, orderly, lb, ub, x, x, limit) for x in range(top, bottom - 1, -1)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_shard, jobs))
    vecs = np.vstack([p[0] for p in parts]) if parts else np.zeros((0, lb.shape[0]))
    return vecs.astype(np.int64), sum(p[1] for p in parts)


def enumerate_candidates(
    q: int, k: int, n: int, d: int, mode: Mode = "exact", pivots: bool = True
) -> Iterator[MultiplicityVector]:
    """Every LCD multiplicity vector of rank k with the requested minimum weight.

    With ``pivots`` the unit-vector positions are forced to be >= 1, which
    every equivalence class meets.  No symmetry reduction is applied.
    """
    vecs, _ = _search_vectors(q, k, n, d, mode, orderly=False, pivots=pivots)
    for row in vecs:
        mv = MultiplicityVector(q, k, tuple(row.tolist()))
        if pivots or mv.rank() == k:
            yield mv


def canonical_form(mv: MultiplicityVector) -> MultiplicityVector:
    """Lexicographically smallest vector in the orbit of mv."""
    rows = induced_point_group(mv.q, mv.k).orbit(mv.array)
    for col in range(rows.shape[1]):
        c = rows[:, col]
        rows = rows[c == c.min()]
        if rows.shape[0] == 1:
            break
    return MultiplicityVector(mv.q, mv.k, tuple(rows[0].tolist()))


def are_equivalent(m1: MultiplicityVector, m2: MultiplicityVector) -> bool:
    if (m1.q, m1.k) != (m2.q, m2.k):
        raise ValueError("vectors over different (q, k) cannot be compared")
    return canonical_form(m1) == canonical_form(m2)


def classify(
    q: int, k: int, n: int, d: int, mode: Mode = "exact",
    workers: int = 1, method: Literal["orderly", "dedup"] = "orderly", pivots: bool = True,
) -> ClassificationResult:
    """Inequivalent LCD [n, k, d] codes (or d' >= d) with dual distance >= 2.

    ``orderly`` keeps one lexicographically maximal vector per orbit during
    the search; ``dedup`` enumerates every candidate and collects canonical
    forms, which is only practical for short lengths.
    """
    _check_pair(q, k)
    if method == "orderly":
        vecs, nodes = _search_vectors(q, k, n, d, mode, True, True, workers)
        reps = {canonical_form(MultiplicityVector(q, k, tuple(r.tolist()))) for r in vecs}
        if len(reps) != len(vecs):
            raise AssertionError("orderly search emitted two vectors of one orbit")
    elif method == "dedup":
        nodes = 0
        reps = {canonical_form(mv) for mv in enumerate_candidates(q, k, n, d, mode, pivots)}
    else:
        raise ValueError(f"unknown method {method!r}")
    ordered = sorted(reps, key=lambda mv: mv.m)
    return ClassificationResult(q, k, n, d, mode, ordered, nodes)


def exists(q: int, k: int, n: int, d: int, mode: Mode = "exact") -> bool:
    """Whether any LCD code with these parameters and dual distance >= 2 exists."""
    vecs, _ = _search_vectors(q, k, n, d, mode, True, True, limit=1)
    return vecs.shape[0] > 0


# ---------------------------------------------------------------------------
# record files


def write_records(result: ClassificationResult, path) -> None:
    with open(path, "w") as fh:
        for rec in result.records():
            fh.write(json.dumps(rec, separators=(",", ":")) + "\n")


def read_records(path) -> list[dict]:
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


def csv_row(result: ClassificationResult) -> str:
    return f"{result.q},{result.k},{result.n},{result.d},{result.count}"


# ---------------------------------------------------------------------------
# brute-force oracles, independent of multiplicity vectors


def _word_codes(words: np.ndarray, q: int) -> np.ndarray:
    weights = q ** np.arange(words.shape[-1], dtype=np.int64)
    return words @ weights


def _monomials(q: int, n: int) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    scales = np.array(list(itertools.product(range(1, q), repeat=n)), dtype=np.int64)
    return perms, scales


ORACLE_LIMIT = {2: 8, 3: 6}


def _code_key(g: GFMatrix) -> tuple[int, ...]:
    words = row_space(g)
    return tuple(sorted(set(_word_codes(words, g.q).tolist())))


def orbit_keys(g: GFMatrix) -> set[tuple[int, ...]]:
    """Codeword sets of all images of the code under the full monomial group."""
    q, n = g.q, g.cols
    if n > ORACLE_LIMIT[q]:
        raise ValueError(f"brute-force oracle refuses n={n} over GF({q})")
    perms, scales = _monomials(q, n)
    words = row_space(g)
    keys: set[tuple[int, ...]] = set()
    weights = q ** np.arange(n, dtype=np.int64)
    for sc in scales:
        scaled = (words * sc) % q
        permuted = scaled[:, perms]  # (words, perms, n)
        codes = np.sort(np.einsum("wpn,n->pw", permuted, weights), axis=1)
        for row in np.unique(codes, axis=0):
            keys.add(tuple(row.tolist()))
    return keys


def bruteforce_equiv_oracle(g1: GFMatrix, g2: GFMatrix) -> bool:
    """Whether some monomial matrix maps the code of g1 onto the code of g2."""
    if g1.q != g2.q or g1.cols != g2.cols:
        return False
    n = g1.cols
    if n > ORACLE_LIMIT[g1.q]:
        raise ValueError(f"brute-force oracle refuses n={n} over GF({g1.q})")
    target = set(_word_codes(row_space(g2), g2.q).tolist())
    if len(target) != len(set(_word_codes(row_space(g1), g1.q).tolist())):
        return False
    q = g1.q
    perms, scales = _monomials(q, n)
    rows = g1.entries
    weights = q ** np.arange(n, dtype=np.int64)
    target_arr = np.array(sorted(target), dtype=np.int64)
    for sc in scales:
        images = ((rows * sc) % q)[:, perms]  # (k, perms, n)
        codes = np.einsum("kpn,n->kp", images, weights)
        hit = np.isin(codes, target_arr).all(axis=0)
        if hit.any():
            return True
    return False


def all_codes(q: int, k: int, n: int) -> Iterator[GFMatrix]:
    """Every k-dimensional subspace of GF(q)^n, as its RREF generator matrix."""
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, n) if c not in pivots]
        for vals in itertools.product(range(q), repeat=len(free)):
            m = np.zeros((k, n), dtype=np.int64)
            for r, p in enumerate(pivots):
                m[r, p] = 1
            for (r, c), x in zip(free, vals):
                m[r, c] = x
            yield GFMatrix(q, m)


def bruteforce_classify(q: int, k: int, n: int) -> dict[int, int]:
    """Class counts of LCD [n, k] codes with dual distance >= 2, keyed by d.

    Independent of the multiplicity machinery: LCD is tested as
    C intersect C-perp = {0} on codeword sets, minimum weight and
    equivalence by full enumeration.
    """
    seen: set[tuple[int, ...]] = set()
    counts: dict[int, int] = {}
    for g in all_codes(q, k, n):
        if not g.entries.any(axis=0).all():
            continue
        key = _code_key(g)
        if key in seen:
            continue
        words = row_space(g)
        # C cap C-perp: codewords orthogonal to every generator row
        inner = (words @ g.entries.T) % q
        if (~inner.any(axis=1)).sum() > 1:
            continue
        d = int(np.count_nonzero(words[1:], axis=1).min())
        seen |= orbit_keys(g)
        counts[d] = counts.get(d, 0) + 1
    return counts
