"""Compiled inner loops of the sweep solver.

The variance state travels as a float64 array ``[v1, comp1, v2, comp2]``
(Neumaier running sums).  No fastmath: the compensation terms depend on
strict IEEE evaluation order.
"""
import numpy as np
from numba import njit

STATUS_OK = 0
STATUS_TOO_WIDE = 1


@njit(cache=True, inline="always")
def _nadd(total, comp, x):
    t = total + x
    if abs(total) >= abs(x):
        comp += (total - t) + x
    else:
        comp += (x - t) + total
    return t, comp


@njit(cache=True)
def enumerate_free_kernel(L, width, d1, d2, st, best, rec_flips, rec_values, record):
    """Cyclic reflected Gray-code walk over the ``width`` first entries of ``L``.

    Entry vertex has every free coordinate at its upper endpoint; the walk
    performs exactly ``2**width`` flips and ends where it started.  Bit ``j``
    of the returned mask set means ``L[j]`` sits at its lower endpoint.
    """
    v1, c1, v2, c2 = st[0], st[1], st[2], st[3]
    z = np.zeros(width, np.uint8)
    mask = np.int64(0)
    best_mask = np.int64(0)
    improved = False
    total = np.int64(1) << width
    for c in range(total):
        i = 0
        while z[i] == 1:
            z[i] = 0
            if i == width - 1:
                break
            i += 1
        z[i] = 1
        mask ^= np.int64(1) << i
        j = L[i]
        if (mask >> i) & 1:
            v1, c1 = _nadd(v1, c1, -d1[j])
            v2, c2 = _nadd(v2, c2, -d2[j])
        else:
            v1, c1 = _nadd(v1, c1, d1[j])
            v2, c2 = _nadd(v2, c2, d2[j])
        m = v2 + c2
        value = (v1 + c1) - m * m
        if record:
            rec_flips[c] = i
            rec_values[c] = value
        if value > best:
            best = value
            best_mask = mask
            improved = True
    st[0] = v1
    st[1] = c1
    st[2] = v2
    st[3] = c2
    return best, best_mask, improved


@njit(cache=True)
def sweep_kernel(d1, d2, begin_ptr, begin_idx, end_ptr, end_idx, st, best, limit):
    n = d1.size
    m = begin_ptr.size - 1
    L = np.empty(n, np.int64)
    pos = np.full(n, -1, np.int64)
    width = 0
    best_k = -1
    best_mask = np.int64(0)
    best_L = np.empty(64, np.int64)
    best_width = 0
    max_width = 0
    examined = np.int64(1)
    no_flips = np.empty(0, np.int64)
    no_values = np.empty(0, np.float64)
    for k in range(m):
        for p in range(begin_ptr[k], begin_ptr[k + 1]):
            i = begin_idx[p]
            L[width] = i
            pos[i] = width
            width += 1
        if width > max_width:
            max_width = width
        if width > limit:
            return best, best_k, best_mask, best_L, best_width, max_width, examined, STATUS_TOO_WIDE
        if width > 0:
            best, mask, improved = enumerate_free_kernel(
                L, width, d1, d2, st, best, no_flips, no_values, False
            )
            examined += np.int64(1) << width
            if improved:
                best_k = k
                best_mask = mask
                best_width = width
                for q in range(width):
                    best_L[q] = L[q]
        for p in range(end_ptr[k], end_ptr[k + 1]):
            i = end_idx[p]
            q = pos[i]
            last = L[width - 1]
            L[q] = last
            pos[last] = q
            pos[i] = -1
            width -= 1
            st[0], st[1] = _nadd(st[0], st[1], -d1[i])
            st[2], st[3] = _nadd(st[2], st[3], -d2[i])
    return best, best_k, best_mask, best_L, best_width, max_width, examined, STATUS_OK
