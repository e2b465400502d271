"""Dense linear algebra over the prime fields GF(2) and GF(3).

Matrices are small (a handful of rows), so everything is plain numpy
integer arithmetic followed by a reduction mod q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

FIELD_ORDERS = (2, 3)


class ShapeError(ValueError):
    """Raised on dimension or field mismatch."""


def check_field(q: int) -> int:
    if q not in FIELD_ORDERS:
        raise ValueError(f"unsupported field order q={q}; expected 2 or 3")
    return int(q)


def inverse(a: int, q: int) -> int:
    """Multiplicative inverse in GF(q), q prime."""
    a %= q
    if a == 0:
        raise ZeroDivisionError("zero has no inverse")
    return pow(a, q - 2, q)


@dataclass(frozen=True, eq=False)
class GFMatrix:
    """Immutable dense matrix over GF(q) with entries stored in [0, q)."""

    q: int
    entries: np.ndarray

    def __post_init__(self) -> None:
        check_field(self.q)
        arr = np.array(self.entries, dtype=np.int64, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise ShapeError(f"expected a 2-d matrix with at least one row, got {arr.shape}")
        arr %= self.q
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @classmethod
    def from_rows(cls, q: int, rows: Iterable[Sequence[int]]) -> GFMatrix:
        return cls(q, np.array([list(r) for r in rows], dtype=np.int64))

    @classmethod
    def identity(cls, q: int, k: int) -> GFMatrix:
        return cls(q, np.eye(k, dtype=np.int64))

    @classmethod
    def zeros(cls, q: int, rows: int, cols: int) -> GFMatrix:
        return cls(q, np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def T(self) -> GFMatrix:
        return transpose(self)

    def tolist(self) -> list[list[int]]:
        return self.entries.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GFMatrix):
            return NotImplemented
        return self.q == other.q and np.array_equal(self.entries, other.entries)

    def __hash__(self) -> int:
        return hash((self.q, self.entries.shape, self.entries.tobytes()))

    def __matmul__(self, other: GFMatrix) -> GFMatrix:
        return mat_mul(self, other)

    def __repr__(self) -> str:
        body = "; ".join("".join(str(x) for x in row) for row in self.tolist())
        return f"GFMatrix(q={self.q}, [{body}])"

    def hstack(self, other: GFMatrix) -> GFMatrix:
        if self.q != other.q or self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts over the same field")
        return GFMatrix(self.q, np.hstack([self.entries, other.entries]))


def transpose(a: GFMatrix) -> GFMatrix:
    return GFMatrix(a.q, a.entries.T)


def mat_mul(a: GFMatrix, b: GFMatrix) -> GFMatrix:
    if a.q != b.q:
        raise ShapeError(f"field mismatch: GF({a.q}) vs GF({b.q})")
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    return GFMatrix(a.q, (a.entries @ b.entries) % a.q)


def rref(a: GFMatrix) -> tuple[GFMatrix, list[int]]:
    """Reduced row echelon form and the (0-based) pivot columns.

    Pivots are taken as the first nonzero entry scanning columns left to
    right, rows top to bottom; pivot rows are scaled to 1.
    """
    q = a.q
    m = a.entries.copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            m[[r, p]] = m[[p, r]]
        m[r] = (m[r] * inverse(int(m[r, c]), q)) % q
        for i in range(rows):
            if i != r and m[i, c]:
                m[i] = (m[i] - m[i, c] * m[r]) % q
        pivots.append(c)
        r += 1
    return GFMatrix(q, m), pivots


def rank(a: GFMatrix) -> int:
    return len(rref(a)[1])


def det(a: GFMatrix) -> int:
    """Determinant mod q by Gaussian elimination (exact: q is prime)."""
    if a.rows != a.cols:
        raise ShapeError(f"determinant of non-square {a.shape} matrix")
    q = a.q
    m = a.entries.copy()
    size = m.shape[0]
    result = 1
    for c in range(size):
        nz = np.nonzero(m[c:, c])[0]
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            m[[c, p]] = m[[p, c]]
            result = -result
        pivot = int(m[c, c])
        result = (result * pivot) % q
        inv = inverse(pivot, q)
        for i in range(c + 1, size):
            if m[i, c]:
                m[i] = (m[i] - (m[i, c] * inv) * m[c]) % q
    return result % q


def null_space(a: GFMatrix) -> np.ndarray:
    """Basis of {x : a x^T = 0} as rows (possibly zero rows)."""
    q = a.q
    red, pivots = rref(a)
    cols = a.cols
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for r, p in enumerate(pivots):
            basis[t, p] = (-red.entries[r, f]) % q
    return basis


def row_space(a: GFMatrix) -> np.ndarray:
    """All q**rows combinations of the rows (with repetition if rank-deficient)."""
    q, k = a.q, a.rows
    coeffs = np.array(np.meshgrid(*[np.arange(q)] * k, indexing="ij")).reshape(k, -1).T
    return (coeffs @ a.entries) % q


# ---------------------------------------------------------------------------
# text format: header "q=<2|3>" then one line of digits per row


def format_matrix(a: GFMatrix) -> str:
    lines = [f"q={a.q}"]
    lines.extend("".join(str(int(x)) for x in row) for row in a.entries)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> GFMatrix:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("q="):
        raise ValueError("matrix text must start with a 'q=<2|3>' header")
    q = check_field(int(lines[0][2:]))
    body = lines[1:]
    if not body:
        raise ValueError("matrix text has no rows")
    width = len(body[0])
    rows = []
    for ln in body:
        if len(ln) != width:
            raise ValueError("ragged matrix rows")
        digits = [int(ch) for ch in ln]
        if any(x >= q for x in digits):
            raise ValueError(f"entry out of range for GF({q})")
        rows.append(digits)
    return GFMatrix(q, np.array(rows, dtype=np.int64).reshape(len(rows), width))
