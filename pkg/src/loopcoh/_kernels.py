"""Row reduction mod p.

Two implementations of the same elimination: a numba kernel and a plain
numpy one.  ``LOOPCOH_NUMBA=0`` (or numba not being importable) selects the
numpy path.  Both operate in place on an int64 array with entries in [0, p)
and return ``(rank, pivots)``.
"""
import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

USE_NUMBA = numba is not None and os.environ.get("LOOPCOH_NUMBA", "1") != "0"


def _inv_mod(a, p):
    # extended Euclid; a is nonzero mod p
    t, new_t = 0, 1
    r, new_r = p, a
    while new_r != 0:
        q = r // new_r
        t, new_t = new_t, t - q * new_t
        r, new_r = new_r, r - q * new_r
    if t < 0:
        t += p
    return t


def _rref_inplace_py(a, p):
    rows, cols = a.shape
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = _inv_mod(int(a[rank, c]), p)
        if inv != 1:
            a[rank] = (a[rank] * inv) % p
        col = a[:, c].copy()
        col[rank] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[rank])) % p
        pivots[rank] = c
        rank += 1
    return rank, pivots[:rank].copy()


if USE_NUMBA:
    _inv_mod_nb = numba.njit(cache=True)(_inv_mod)

    @numba.njit(cache=True)
    def _rref_inplace_nb(a, p):
        rows, cols = a.shape
        pivots = np.empty(min(rows, cols), dtype=np.int64)
        rank = 0
        for c in range(cols):
            if rank == rows:
                break
            piv = -1
            for i in range(rank, rows):
                if a[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for k in range(c, cols):
                    tmp = a[rank, k]
                    a[rank, k] = a[piv, k]
                    a[piv, k] = tmp
            inv = _inv_mod_nb(a[rank, c], p)
            if inv != 1:
                for k in range(c, cols):
                    a[rank, k] = (a[rank, k] * inv) % p
            for i in range(rows):
                if i != rank:
                    f = a[i, c]
                    if f != 0:
                        for k in range(c, cols):
                            if a[rank, k] != 0:
                                a[i, k] = (a[i, k] - f * a[rank, k]) % p
            pivots[rank] = c
            rank += 1
        return rank, pivots[:rank].copy()
else:
    _rref_inplace_nb = None


def rref_inplace(a, p, use_numba=None):
    """Reduce ``a`` (int64, C-contiguous, entries in [0, p)) in place."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba and _rref_inplace_nb is not None:
        rank, piv = _rref_inplace_nb(a, np.int64(p))
        return int(rank), [int(c) for c in piv]
    rank, piv = _rref_inplace_py(a, p)
    return int(rank), [int(c) for c in piv]
