"""Simplex generator matrices, projective point bookkeeping and the
permutation action of GL(k, q) on the points of PG(k-1, q).

Point indices are 0-based positions in the column order of the recursive
simplex matrix S_{q,k}.  Every multiplicity vector in the package is
indexed against that order.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

import numpy as np

from .gf import GFMatrix, check_field

# (q, k0): simplex codes are self-orthogonal for k >= k0
K0 = {2: 3, 3: 2}
GROUP_PAIRS = {(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)}


def points_count(q: int, k: int) -> int:
    """Number of points of PG(k-1, q), i.e. (q**k - 1) / (q - 1)."""
    return (q**k - 1) // (q - 1)


def _simplex_entries(q: int, k: int) -> np.ndarray:
    if k == 1:
        return np.ones((1, 1), dtype=np.int64)
    prev = _simplex_entries(q, k - 1)
    width = prev.shape[1]
    top = [prev, np.zeros((k - 1, 1), dtype=np.int64)] + [prev] * (q - 1)
    bottom = [np.zeros((1, width), dtype=np.int64), np.ones((1, 1), dtype=np.int64)]
    bottom += [np.full((1, width), c, dtype=np.int64) for c in range(1, q)]
    return np.vstack([np.hstack(top), np.hstack(bottom)])


@dataclass(frozen=True, eq=False)
class SimplexFrame:
    q: int
    k: int
    matrix: GFMatrix
    # lookup[code(v)] = point index of v, -1 for the zero vector
    lookup: np.ndarray

    @property
    def size(self) -> int:
        return self.matrix.cols

    @property
    def points(self) -> np.ndarray:
        """Point representatives as rows (points x k)."""
        return self.matrix.entries.T

    def encode(self, vectors: np.ndarray) -> np.ndarray:
        """Base-q integer code of vectors along the last axis."""
        weights = self.q ** np.arange(self.k, dtype=np.int64)
        return np.asarray(vectors, dtype=np.int64) % self.q @ weights

    def pivots(self) -> list[int]:
        """Positions of the unit vectors e_1, ..., e_k."""
        return [points_count(self.q, j) for j in range(self.k)]


@functools.lru_cache(maxsize=None)
def simplex_matrix(q: int, k: int) -> SimplexFrame:
    """The k x [k]_q simplex generator matrix built by the column recursion.

    Column order: S_{q,k} = (S_{q,k-1} | e_k | S_{q,k-1} + e_k | ... | S_{q,k-1} + (q-1) e_k).
    """
    check_field(q)
    if not 1 <= k <= 4:
        raise ValueError(f"unsupported dimension k={k}; expected 1 <= k <= 4")
    entries = _simplex_entries(q, k)
    frame_lookup = np.full(q**k, -1, dtype=np.int64)
    weights = q ** np.arange(k, dtype=np.int64)
    for i, col in enumerate(entries.T):
        for c in range(1, q):
            frame_lookup[int(((c * col) % q) @ weights)] = i
    frame_lookup.setflags(write=False)
    return SimplexFrame(q, k, GFMatrix(q, entries), frame_lookup)


def point_index(frame: SimplexFrame, v) -> int:
    """Index of the projective point spanned by the nonzero vector v."""
    vec = np.asarray(v, dtype=np.int64) % frame.q
    if vec.shape != (frame.k,):
        raise ValueError(f"expected a vector of length {frame.k}")
    if not vec.any():
        raise ValueError("the zero vector is not a projective point")
    return int(frame.lookup[frame.encode(vec)])


@dataclass(frozen=True, eq=False)
class InducedPointGroup:
    q: int
    k: int
    # perms[g, i] = index of the point U_g h_i
    perms: np.ndarray

    @property
    def order(self) -> int:
        return self.perms.shape[0]

    def act(self, m, g: int) -> np.ndarray:
        """The relabelled vector m o pi_g, i.e. (m o pi)_i = m[pi(i)]."""
        return np.asarray(m)[self.perms[g]]

    def orbit(self, m) -> np.ndarray:
        return np.asarray(m)[self.perms]


def _all_matrices(q: int, k: int) -> np.ndarray:
    digits = np.array(list(itertools.product(range(q), repeat=k * k)), dtype=np.int64)
    return digits.reshape(-1, k, k)


@functools.lru_cache(maxsize=None)
def induced_point_group(q: int, k: int) -> InducedPointGroup:
    """Permutations of the [k]_q points induced by all invertible U in GL(k, q).

    Scalar matrices act trivially, so the result is PGL(k, q) as a
    permutation group.
    """
    check_field(q)
    if (q, k) not in GROUP_PAIRS:
        raise ValueError(f"point group not supported for (q, k) = ({q}, {k})")
    frame = simplex_matrix(q, k)
    size = frame.size
    mats = _all_matrices(q, k)
    images = np.einsum("gab,bi->gai", mats, frame.matrix.entries) % q
    weights = q ** np.arange(k, dtype=np.int64)
    codes = np.einsum("gai,a->gi", images, weights)
    perms = frame.lookup[codes]
    valid = (perms >= 0).all(axis=1)
    perms = perms[valid]
    # invertible U <=> the induced map on points is a bijection
    bijective = (np.sort(perms, axis=1) == np.arange(size)).all(axis=1)
    perms = np.unique(perms[bijective], axis=0)
    perms.setflags(write=False)
    return InducedPointGroup(q, k, perms)


@dataclass(frozen=True, eq=False)
class DesignIncidence:
    q: int
    k: int
    # A[j, i] = 1 iff h_j . h_i != 0
    A: np.ndarray


@functools.lru_cache(maxsize=None)
def design_incidence(q: int, k: int) -> DesignIncidence:
    """Support table of the simplex code, one row per projective codeword class.

    Row j is the support of the codeword x_j S_{q,k} with x_j = h_{q,k,j};
    for k >= k0 the rows form a symmetric 2-design.
    """
    frame = simplex_matrix(q, k)
    s = frame.matrix.entries
    a = ((s.T @ s) % q != 0).astype(np.int64)
    a.setflags(write=False)
    return DesignIncidence(q, k, a)
