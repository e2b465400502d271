"""Codes given by point multiplicities or by raw generator matrices.

A multiplicity vector m assigns to every point h_i of PG(k-1, q) the number
of times the column h_i occurs in the generator matrix.  Every [n, k] code
without zero coordinates (dual distance >= 2) is equivalent to one of these.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import gf
from .gf import GFMatrix
from .simplex import K0, design_incidence, points_count, simplex_matrix


class DomainError(ValueError):
    """The input does not describe a code the operation is defined on."""


class PreconditionError(ValueError):
    """An operation was called on a code that violates its precondition."""


@dataclass(frozen=True)
class MultiplicityVector:
    q: int
    k: int
    m: tuple[int, ...]

    def __post_init__(self) -> None:
        gf.check_field(self.q)
        m = tuple(int(x) for x in self.m)
        if len(m) != points_count(self.q, self.k):
            raise ValueError(
                f"multiplicity vector for (q, k) = ({self.q}, {self.k}) needs "
                f"{points_count(self.q, self.k)} entries, got {len(m)}"
            )
        if any(x < 0 for x in m):
            raise ValueError("multiplicities must be nonnegative")
        object.__setattr__(self, "m", m)

    @property
    def n(self) -> int:
        return sum(self.m)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.m, dtype=np.int64)

    def rank(self) -> int:
        """Dimension of the code, i.e. the rank of the occurring points."""
        support = [i for i, x in enumerate(self.m) if x]
        if not support:
            return 0
        frame = simplex_matrix(self.q, self.k)
        return gf.rank(GFMatrix(self.q, frame.matrix.entries[:, support]))

    def generator(self) -> GFMatrix:
        return generator_from_multiplicity(self)

    def shifted(self, s: int) -> MultiplicityVector:
        return MultiplicityVector(self.q, self.k, tuple(x + s for x in self.m))


@dataclass(frozen=True)
class CodeRecord:
    q: int
    k: int
    n: int
    d: int
    dual_ge2: bool
    m: MultiplicityVector

    @classmethod
    def from_multiplicity(cls, mv: MultiplicityVector) -> CodeRecord:
        return cls(mv.q, mv.k, mv.n, min_weight(mv), True, mv)


Codeish = Union[GFMatrix, MultiplicityVector, CodeRecord]


def as_matrix(code: Codeish) -> GFMatrix:
    if isinstance(code, GFMatrix):
        return code
    if isinstance(code, CodeRecord):
        code = code.m
    return generator_from_multiplicity(code)


def generator_from_multiplicity(mv: MultiplicityVector) -> GFMatrix:
    """Columns h_1 repeated m_1 times, then h_2 repeated m_2 times, ..."""
    if mv.n < 1:
        raise DomainError("empty multiplicity vector has no generator matrix")
    frame = simplex_matrix(mv.q, mv.k)
    cols = np.repeat(np.arange(len(mv.m)), mv.m)
    return GFMatrix(mv.q, frame.matrix.entries[:, cols])


def gram(g: GFMatrix) -> GFMatrix:
    return gf.mat_mul(g, g.T)


def is_lcd(g: Codeish) -> bool:
    """LCD test via nonsingularity of the Gram matrix G G^T."""
    g = as_matrix(g)
    return gf.det(gram(g)) != 0


def weight_vector(mv: MultiplicityVector) -> np.ndarray:
    """Weights of the codewords x_j G(m), one per projective message class j."""
    return design_incidence(mv.q, mv.k).A @ mv.array


def min_weight(mv: MultiplicityVector) -> int:
    if mv.rank() != mv.k:
        raise DomainError(f"multiplicity vector does not span a {mv.k}-dimensional code")
    return int(weight_vector(mv).min())


def min_weight_bruteforce(g: Codeish) -> int:
    """Minimum weight over all q**k - 1 nonzero messages."""
    g = as_matrix(g)
    words = gf.row_space(g)[1:]
    weights = np.count_nonzero(words, axis=1)
    if (weights == 0).any():
        raise DomainError("generator matrix rows are linearly dependent")
    return int(weights.min())


def dual_distance_at_least(g: Codeish, w: int) -> bool:
    """Whether the dual distance is at least w, for w <= 3, read off the columns."""
    if w > 3:
        raise NotImplementedError("only dual-distance thresholds up to 3 are supported")
    if w <= 1:
        return True
    if isinstance(g, (MultiplicityVector, CodeRecord)):
        m = g.m if isinstance(g, MultiplicityVector) else g.m.m
        return w == 2 or max(m) <= 1
    cols = g.entries.T
    if (~cols.any(axis=1)).any():
        return False
    if w == 2:
        return True
    frame = simplex_matrix(g.q, g.rows) if g.rows <= 4 else None
    if frame is not None:
        pts = frame.lookup[frame.encode(cols)]
        return len(set(pts.tolist())) == len(pts)
    normed = {_projective_key(c, g.q) for c in cols}
    return len(normed) == len(cols)


def _projective_key(col: np.ndarray, q: int) -> tuple[int, ...]:
    lead = int(col[np.nonzero(col)[0][0]])
    return tuple(((col * gf.inverse(lead, q)) % q).tolist())


def dual_distance(g: Codeish) -> int:
    """Exact dual distance by enumerating the dual code (small n - k only)."""
    g = as_matrix(g)
    h = gf.null_space(g)
    if h.shape[0] == 0:
        raise DomainError("the dual code is zero; dual distance undefined")
    if g.q ** h.shape[0] > 2_000_000:
        raise NotImplementedError("dual code too large to enumerate")
    words = gf.row_space(GFMatrix(g.q, h))[1:]
    return int(np.count_nonzero(words, axis=1).min())


# ---------------------------------------------------------------------------
# constructions


def pad_zero(code: Codeish) -> GFMatrix:
    """Append one all-zero coordinate: same k and d, dual distance 1."""
    g = as_matrix(code)
    return g.hstack(GFMatrix.zeros(g.q, g.rows, 1))


def juxtapose_with_simplex(mv: MultiplicityVector, s: int) -> MultiplicityVector:
    """Prepend s copies of the simplex matrix: length +[k]_q s, weight +q^(k-1) s."""
    if s < 0:
        raise ValueError("number of simplex copies must be nonnegative")
    if mv.k < K0[mv.q]:
        raise PreconditionError(
            f"simplex code over GF({mv.q}) is not self-orthogonal for k={mv.k}"
        )
    if not is_lcd(mv.generator()):
        raise PreconditionError("juxtaposition needs an LCD input code")
    return mv.shifted(s)


def _dot(x: np.ndarray, y: np.ndarray, q: int) -> int:
    return int(x @ y) % q


def _normalize_binary(rows: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    singles: list[int] = []  # positions in out with x.x = 1
    rem = list(rows)
    while rem:
        odd = next((i for i, r in enumerate(rem) if _dot(r, r, 2)), None)
        if odd is not None:
            x = rem.pop(odd)
            rem = [(y + _dot(y, x, 2) * x) % 2 for y in rem]
            singles.append(len(out))
            out.append(x)
            continue
        pair = next(
            ((i, j) for i in range(len(rem)) for j in range(i + 1, len(rem))
             if _dot(rem[i], rem[j], 2)),
            None,
        )
        if pair is None:
            raise PreconditionError("Gram matrix is singular; the code is not LCD")
        i, j = pair
        a, b = rem[i], rem[j]
        rest = [r for t, r in enumerate(rem) if t not in pair]
        rem = [(y + _dot(y, b, 2) * a + _dot(y, a, 2) * b) % 2 for y in rest]
        if singles:
            # u.u = 1 with u orthogonal to the hyperbolic pair (a, b):
            # u+a, u+b, u+a+b is an orthonormal triple spanning the same space
            u = out[singles[-1]]
            out[singles[-1]] = (u + a) % 2
            singles.append(len(out))
            out.append((u + b) % 2)
            singles.append(len(out))
            out.append((u + a + b) % 2)
        else:
            out.extend([a, b])
    return out


def _normalize_ternary(rows: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    rem = list(rows)
    while rem:
        idx = next((i for i, r in enumerate(rem) if _dot(r, r, 3)), None)
        if idx is None:
            pair = next(
                ((i, j) for i in range(len(rem)) for j in range(i + 1, len(rem))
                 if _dot(rem[i], rem[j], 3)),
                None,
            )
            if pair is None:
                raise PreconditionError("Gram matrix is singular; the code is not LCD")
            i, j = pair
            # (a + b).(a + b) = 2 a.b != 0 when a.a = b.b = 0
            rem[i] = (rem[i] + rem[j]) % 3
            idx = i
        x = rem.pop(idx)
        xx = _dot(x, x, 3)  # 1 and 2 are their own inverses mod 3
        rem = [(y - _dot(y, x, 3) * xx * x) % 3 for y in rem]
        out.append(x)
    return out


def gram_normalize(g: Codeish) -> GFMatrix:
    """Another generator matrix of the same LCD code with a normalized Gram matrix.

    Binary odd codes get G G^T = I; binary even codes get a block diagonal of
    J2 = [[0, 1], [1, 0]] blocks; ternary codes get a diagonal Gram matrix
    (each row x has x.x != 0 and is orthogonal to the rows after it).
    """
    g = as_matrix(g)
    if not is_lcd(g):
        raise PreconditionError("Gram normalization needs an LCD code")
    rows = [r.copy() for r in g.entries]
    out = _normalize_binary(rows) if g.q == 2 else _normalize_ternary(rows)
    return GFMatrix(g.q, np.array(out))


def extend_by_one(g: Codeish) -> GFMatrix:
    """Append one column keeping the code LCD with dual distance >= 2.

    The minimum weight grows by at most one.
    """
    g = as_matrix(g)
    k = g.rows
    if k < 2:
        raise NotImplementedError("extension needs dimension k >= 2")
    if not dual_distance_at_least(g, 2):
        raise PreconditionError("extension needs dual distance >= 2 (no zero column)")
    if gf.rank(g) != k:
        raise PreconditionError("generator matrix must have full row rank")
    g0 = gram_normalize(g)
    h = np.zeros(k, dtype=np.int64)
    if g.q == 2:
        h[:2] = 1
    else:
        xx = _dot(g0.entries[0], g0.entries[0], 3)
        yy = _dot(g0.entries[1], g0.entries[1], 3)
        if xx == 1:
            h[0] = 1
        elif yy == 1:
            h[1] = 1
        else:
            h[:2] = 1
    out = g0.hstack(GFMatrix(g.q, h.reshape(k, 1)))
    assert is_lcd(out)
    return out
