# cython: boundscheck=False, wraparound=False, cdivision=True
"""Dense modular rank kernel."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t


cdef int64_t _inv(int64_t a, int64_t p) nogil:
    cdef int64_t t = 0, nt = 1, r = p, nr = a % p, q, tmp
    while nr != 0:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    if t < 0:
        t += p
    return t


def rank_mod_p(int nrows, int ncols, entries, int64_t p):
    if nrows == 0 or ncols == 0:
        return 0
    cdef cnp.ndarray[int64_t, ndim=2] arr = np.zeros((nrows, ncols), dtype=np.int64)
    cdef int64_t[:, :] a = arr
    for r, c, v in entries:
        a[r, c] = (a[r, c] + v % p) % p
    cdef int rank = 0, col, i, j, piv
    cdef int64_t inv, f, tmp
    with nogil:
        for col in range(ncols):
            if rank == nrows:
                break
            piv = -1
            for i in range(rank, nrows):
                if a[i, col] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != rank:
                for j in range(col, ncols):
                    tmp = a[piv, j]
                    a[piv, j] = a[rank, j]
                    a[rank, j] = tmp
            inv = _inv(a[rank, col], p)
            for j in range(col, ncols):
                a[rank, j] = a[rank, j] * inv % p
            for i in range(rank + 1, nrows):
                f = a[i, col]
                if f != 0:
                    for j in range(col, ncols):
                        a[i, j] = (a[i, j] - f * a[rank, j]) % p
                        if a[i, j] < 0:
                            a[i, j] += p
            rank += 1
    return rank
