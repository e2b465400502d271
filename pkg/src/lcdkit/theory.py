"""Closed-form parameters of optimal LCD codes and the reduction between an
arbitrary length and a short base length.

Write n = [k]_q s + t with 0 <= t < [k]_q.  When the minimum weight has the
form d = q^(k-1) s + alpha(t), the residual r = q^(k-1) n - [k]_q d depends
on t only, and LCD [n, k, d] codes with dual distance >= 2 correspond one to
one to LCD [q r, k, (q-1) r] codes as soon as q d - (q-1) n >= 1: every such
code is s - s' + 1 simplex copies glued to a base code.
"""

from __future__ import annotations

import functools
import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .classifier import ClassificationResult, SUPPORTED, canonical_form
from .codes import MultiplicityVector, is_lcd, juxtapose_with_simplex, min_weight
from .gf import GFMatrix
from .simplex import K0, points_count


class DataUnavailable(LookupError):
    """No stored base classification can produce the requested code."""


def gaussian_count(q: int, k: int) -> int:
    """[k]_q = (q^k - 1)/(q - 1)."""
    if k < 1:
        raise ValueError("k must be positive")
    return points_count(q, k)


def griesmer_bound(q: int, n: int, k: int) -> int:
    """Largest d with n >= sum_{i<k} ceil(d / q^i)."""
    if not n >= k >= 1:
        raise ValueError("need n >= k >= 1")

    def length(d: int) -> int:
        return sum(-(-d // q**i) for i in range(k))

    d = 0
    while length(d + 1) <= n:
        d += 1
    return d


def residual_r(q: int, n: int, k: int, d: int) -> int:
    return q ** (k - 1) * n - gaussian_count(q, k) * d


def threshold_s_prime(q: int, k: int, t: int, alpha_t: int) -> int:
    """Smallest s with q d - (q-1) n >= 1 for d = q^(k-1) s + alpha(t)."""
    v = gaussian_count(q, k)
    r = q ** (k - 1) * t - v * alpha_t
    num = q * r - t
    if num % v:
        raise ArithmeticError(f"non-integral threshold ({num}/{v}); residue form violated")
    return num // v + 1


# ---------------------------------------------------------------------------
# largest minimum weights


@dataclass(frozen=True)
class OptimalWeightAnswer:
    q: int
    k: int
    n: int
    d: int
    residue: int
    modulus: int
    branch: str
    citation: str


# d_2(7s + t, 3) = 4s + alpha(t)
_ALPHA_2_3 = (-1, -1, 0, 1, 1, 2, 2)

# per (q, k): offsets below floor(q^(k-1) n / [k]_q) by residue, smallest valid n
_OFFSETS = {
    (2, 3): (None, 3),
    (2, 4): ({0: 2, **{t: 1 for t in (1, 2, 3, 4, 6, 7, 8, 10, 11, 12, 14)},
              5: 0, 9: 0, 13: 0}, 4),
    (3, 2): ({0: 1, 1: 0, 2: 0, 3: 1}, 2),
    (3, 3): ({t: (0 if t in (4, 7, 10) else 1) for t in range(13)}, 3),
}

_CITATIONS = {
    (2, 3): "binary optimal LCD [n,3] table: d_2(n,3) = 4s + alpha(t) for n = 7s + t",
    (2, 4): "d_2(n,4) = floor(8n/15) - {0 if n = 5,9,13; 2 if n = 0; 1 otherwise} (mod 15)",
    (3, 2): "d_3(n,2) = floor(3n/4) - {0 if n = 1,2; 1 if n = 0,3} (mod 4)",
    (3, 3): "d_3(n,3) = floor(9n/13) - {0 if n = 4,7,10; 1 otherwise} (mod 13)",
}


def largest_lcd_weight(q: int, k: int, n: int) -> OptimalWeightAnswer:
    """d_q(n, k), the largest minimum weight of an LCD [n, k] code over GF(q)."""
    if (q, k) not in _OFFSETS:
        raise ValueError(f"largest LCD weight is not available for (q, k) = ({q}, {k})")
    offsets, floor_n = _OFFSETS[(q, k)]
    if n < floor_n:
        raise ValueError(f"formula for (q, k) = ({q}, {k}) holds for n >= {floor_n}")
    v = gaussian_count(q, k)
    s, t = divmod(n, v)
    if offsets is None:
        d = 4 * s + _ALPHA_2_3[t]
    else:
        d = q ** (k - 1) * n // v - offsets[t]
    alpha = d - q ** (k - 1) * s
    branch = f"n = {v}s + {t}: d = {q ** (k - 1)}s {'+' if alpha >= 0 else '-'} {abs(alpha)}"
    return OptimalWeightAnswer(q, k, n, d, t, v, branch, _CITATIONS[(q, k)])


def residue_offset(q: int, k: int, t: int) -> int:
    """The constant alpha(t) with d_q([k]_q s + t, k) = q^(k-1) s + alpha(t)."""
    v = gaussian_count(q, k)
    n = 2 * v + t  # any length with a valid formula
    return largest_lcd_weight(q, k, n).d - 2 * q ** (k - 1)


# ---------------------------------------------------------------------------
# reduction and lifting


@dataclass(frozen=True)
class ReductionPlan:
    q: int
    k: int
    n: int
    d: int
    s: int
    t: int
    r: int
    s_prime: int
    copies: int  # q d - (q-1) n, the number of simplex copies split off
    base_n: int
    base_d: int
    applicable: bool


def reduce_to_base(q: int, k: int, n: int, d: int) -> ReductionPlan:
    if k < K0[q]:
        raise ValueError(f"reduction needs k >= {K0[q]} over GF({q})")
    v = gaussian_count(q, k)
    s, t = divmod(n, v)
    r = residual_r(q, n, k, d)
    copies = q * d - (q - 1) * n
    s_prime = threshold_s_prime(q, k, t, d - q ** (k - 1) * s)
    applicable = copies >= 1 and q * r >= k
    return ReductionPlan(q, k, n, d, s, t, r, s_prime, copies, q * r, (q - 1) * r, applicable)


def lift_classification(base: ClassificationResult, s: int) -> ClassificationResult:
    """Classification at length [k]_q s + t from the base at [k]_q (s'-1) + t."""
    q, k = base.q, base.k
    if q * base.d != (q - 1) * base.n:
        raise ValueError("base parameters must be [q r, k, (q-1) r]")
    v = gaussian_count(q, k)
    s_base, t = divmod(base.n, v)
    shift = s - s_base
    if shift < 1:
        raise ValueError(f"lifting needs s >= s' = {s_base + 1}, got s = {s}")
    reps = sorted((canonical_form(juxtapose_with_simplex(mv, shift)) for mv in base.representatives),
                  key=lambda mv: mv.m)
    return ClassificationResult(q, k, base.n + v * shift, base.d + q ** (k - 1) * shift,
                                base.mode, reps)


# ---------------------------------------------------------------------------
# fixture store of classifications


def fixture_dir() -> Path:
    env = os.environ.get("LCDKIT_FIXTURES")
    if env:
        return Path(env)
    return Path(__file__).parent / "data" / "store"


def store_path(q: int, k: int, n: int, d: int, root: Optional[Path] = None) -> Path:
    return (root or fixture_dir()) / f"q{q}_k{k}_n{n}_d{d}.jsonl"


def _store_index(root: str) -> dict[tuple[int, int], list[tuple[int, int]]]:
    index: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for path in Path(root).glob("q*_k*_n*_d*.jsonl"):
        q, k, n, d = (int(part[1:]) for part in path.stem.split("_"))
        index.setdefault((q, k), []).append((n, d))
    return index


@functools.lru_cache(maxsize=None)
def load_stored(q: int, k: int, n: int, d: int, root: str) -> tuple[MultiplicityVector, ...]:
    """Representatives stored for (q, k, n, d), validated on first read."""
    path = store_path(q, k, n, d, Path(root))
    reps = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            rec = json.loads(line)
            mv = MultiplicityVector(q, k, tuple(rec["m"]))
            if (rec["q"], rec["k"], rec["n"]) != (q, k, n) or mv.n != n:
                raise ValueError(f"{path}: record parameters do not match the file name")
            if not is_lcd(mv.generator()) or min_weight(mv) != d:
                raise ValueError(f"{path}: stored vector {mv.m} is not an LCD [{n},{k},{d}] code")
            reps.append(mv)
    return tuple(reps)


def optimal_generator(q: int, k: int, n: int) -> GFMatrix:
    """Generator matrix of an LCD [n, k, d_q(n, k)] code built from the store."""
    if (q, k) not in SUPPORTED:
        raise ValueError(f"unsupported (q, k) = ({q}, {k})")
    d = largest_lcd_weight(q, k, n).d
    v = gaussian_count(q, k)
    root = str(fixture_dir())
    entries = _store_index(root).get((q, k), [])
    usable = [
        (n0, d0) for n0, d0 in entries
        if n0 <= n and (n - n0) % v == 0 and d0 + q ** (k - 1) * (n - n0) // v == d
    ]
    for n0, d0 in sorted(usable, reverse=True):
        reps = load_stored(q, k, n0, d0, root)
        if not reps:
            continue
        mv = juxtapose_with_simplex(reps[0], (n - n0) // v)
        g = mv.generator()
        if mv.rank() != k or not is_lcd(g) or min_weight(mv) != d:
            raise AssertionError(f"constructed code fails re-verification for n={n}")
        return g
    raise DataUnavailable(f"no stored base for (q, k, n) = ({q}, {k}, {n})")
