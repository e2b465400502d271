"""Compiled branch-and-bound kernel behind the classifier.

Coordinates of the multiplicity vector are fixed in point order.  Each
hyperplane H_J of PG(k-1, q) carries the partial sum of the multiplicities
on it; a codeword vanishing on H_J has weight n - m(H_J), so the weight
constraint reads m(H_J) <= n - d for every J.

With ``orderly`` set, only vectors that are lexicographically maximal in
their orbit under the induced point group survive:

* the pivot of block j (the unit vector e_j) dominates every later entry,
* after each block the prefix must be maximal under GL(j, q) acting on it,
* the completed vector must be maximal under the full group.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _det_mod(a, size, q):
    # a is a flat size*size scratch array, destroyed
    res = 1
    for c in range(size):
        p = -1
        for r in range(c, size):
            if a[r * size + c] % q != 0:
                p = r
                break
        if p < 0:
            return 0
        if p != c:
            for t in range(size):
                tmp = a[c * size + t]
                a[c * size + t] = a[p * size + t]
                a[p * size + t] = tmp
            res = -res
        piv = a[c * size + c] % q
        res = (res * piv) % q
        inv = 1 if piv == 1 else (q + 1) // 2  # inverse of 2 mod 3 is 2
        for r in range(c + 1, size):
            f = (a[r * size + c] * inv) % q
            if f != 0:
                for t in range(c, size):
                    a[r * size + t] = (a[r * size + t] - f * a[c * size + t]) % q
    return res % q


@njit(cache=True)
def _is_lcd(m, outer, k, q, scratch):
    kk = k * k
    for t in range(kk):
        scratch[t] = 0
    for i in range(m.shape[0]):
        c = m[i] % q
        if c != 0:
            for t in range(kk):
                scratch[t] += c * outer[i, t]
    for t in range(kk):
        scratch[t] %= q
    return _det_mod(scratch, k, q) != 0


@njit(cache=True)
def _prefix_is_max(m, perms, start, stop, size):
    # False if some permutation maps the prefix of m to a lexicographically larger one
    for g in range(start, stop):
        for i in range(size):
            a = m[perms[g, i]]
            b = m[i]
            if a > b:
                return False
            if a < b:
                break
    return True


@njit(cache=True)
def search(
    q, k, n, cap, exact, orderly,
    lb, ub, hyp, out_cnt, in_lb, rem_lb, max_ub_after,
    block_of, pivot_of, block_end_level, perms, level_start, level_stop,
    outer, first_lo, first_hi, limit,
):
    """Depth-first search; returns (accepted vectors, node count)."""
    v = lb.shape[0]
    nh = hyp.shape[0]
    m = np.zeros(v, dtype=np.int64)
    val = np.zeros(v, dtype=np.int64)
    hs = np.zeros(nh, dtype=np.int64)
    scratch = np.zeros(k * k, dtype=np.int64)
    out = np.zeros((64, v), dtype=np.int64)
    count = 0
    nodes = 0
    remaining = n

    p = 0
    val[0] = min(ub[0], first_hi, remaining)
    while p >= 0:
        lo_p = lb[p]
        if p == 0 and first_lo > lo_p:
            lo_p = first_lo
        if val[p] < lo_p:
            p -= 1
            if p >= 0:
                x = m[p]
                remaining += x
                for J in range(nh):
                    if hyp[J, p]:
                        hs[J] -= x
                m[p] = 0
                val[p] -= 1
            continue

        x = val[p]
        m[p] = x
        remaining -= x
        for J in range(nh):
            if hyp[J, p]:
                hs[J] += x
        nodes += 1

        ok = remaining >= rem_lb[p]
        if ok:
            later = v - p - 1
            cap_u = max_ub_after[p]
            if orderly:
                piv = m[pivot_of[block_of[p]]]
                if piv < cap_u:
                    cap_u = piv
            if remaining > cap_u * later:
                ok = False
            else:
                for J in range(nh):
                    need = remaining - cap_u * out_cnt[p, J]
                    if need < in_lb[p, J]:
                        need = in_lb[p, J]
                    if hs[J] + need > cap:
                        ok = False
                        break
        if ok and orderly and block_end_level[p] > 0 and p < v - 1:
            lev = block_end_level[p]
            ok = _prefix_is_max(m, perms, level_start[lev], level_stop[lev], p + 1)
        if ok and p == v - 1:
            accept = remaining == 0
            if accept and exact:
                top = hs[0]
                for J in range(1, nh):
                    if hs[J] > top:
                        top = hs[J]
                accept = top == cap
            if accept:
                accept = _is_lcd(m, outer, k, q, scratch)
            if accept and orderly:
                accept = _prefix_is_max(m, perms, level_start[k], level_stop[k], v)
            if accept:
                if count == out.shape[0]:
                    bigger = np.zeros((2 * count, v), dtype=np.int64)
                    bigger[:count] = out
                    out = bigger
                out[count] = m
                count += 1
                if limit > 0 and count >= limit:
                    return out[:count], nodes
            ok = False
        if ok:
            p += 1
            top = ub[p]
            if orderly and p > 0:
                b = block_of[p]
                ref = pivot_of[b - 1] if pivot_of[b] == p else pivot_of[b]
                if m[ref] < top:
                    top = m[ref]
            if remaining < top:
                top = remaining
            val[p] = top
            continue
        # undo position p and try the next smaller value
        remaining += x
        for J in range(nh):
            if hyp[J, p]:
                hs[J] -= x
        m[p] = 0
        val[p] -= 1
    return out[:count], nodes
