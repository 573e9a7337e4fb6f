# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""

from libc.stdlib cimport malloc, free


cdef struct _State:
    int n
    int D
    int ngens
    long long cap
    long long visited
    int *weights
    int *gens          # ngens x n, row major
    int *gen_last      # last nonzero variable of each generator
    int *exps
    long long *counts


cdef bint _divisible(_State *s, int i) nogil:
    cdef int g, j
    cdef int *row
    for g in range(s.ngens):
        if s.gen_last[g] != i:
            continue
        row = s.gens + g * s.n
        for j in range(i + 1):
            if s.exps[j] < row[j]:
                break
        else:
            return True
    return False


cdef bint _rec(_State *s, int i, int deg) nogil:
    cdef int e, w
    if i == s.n:
        s.counts[deg] += 1
        return True
    w = s.weights[i]
    e = 0
    while deg + e * w <= s.D:
        s.exps[i] = e
        s.visited += 1
        if s.visited > s.cap:
            s.exps[i] = 0
            return False
        if e and _divisible(s, i):
            break
        if not _rec(s, i + 1, deg + e * w):
            s.exps[i] = 0
            return False
        e += 1
    s.exps[i] = 0
    return True


def count_standard(gens, weights, int D, long long cap):
    cdef _State s
    cdef int g, j
    cdef bint ok
    n = len(weights)
    counts = [0] * (D + 1)
    for gv in gens:
        if not any(gv):
            return counts, 0
    if n == 0:
        counts[0] = 1
        return counts, 1
    s.n = n
    s.D = D
    s.ngens = len(gens)
    s.cap = cap
    s.visited = 0
    s.weights = <int *> malloc(n * sizeof(int))
    s.gens = <int *> malloc(max(1, s.ngens * n) * sizeof(int))
    s.gen_last = <int *> malloc(max(1, s.ngens) * sizeof(int))
    s.exps = <int *> malloc(n * sizeof(int))
    s.counts = <long long *> malloc((D + 1) * sizeof(long long))
    try:
        for j in range(n):
            s.weights[j] = weights[j]
            s.exps[j] = 0
        for j in range(D + 1):
            s.counts[j] = 0
        for g in range(s.ngens):
            gv = gens[g]
            s.gen_last[g] = -1
            for j in range(n):
                s.gens[g * n + j] = gv[j]
                if gv[j]:
                    s.gen_last[g] = j
        with nogil:
            ok = _rec(&s, 0, 0)
        if not ok:
            return None, s.visited
        return [s.counts[j] for j in range(D + 1)], s.visited
    finally:
        free(s.weights)
        free(s.gens)
        free(s.gen_last)
        free(s.exps)
        free(s.counts)


def rank_mod_p(rows, int ncols, long long p):
    cdef int nrows = len(rows)
    cdef long long *m
    cdef int r, c, rank, col, piv
    cdef long long inv, f, tmp
    if nrows == 0 or ncols == 0:
        return 0
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                m[r * ncols + c] = row[c] % p
        rank = 0
        col = 0
        while rank < nrows and col < ncols:
            piv = -1
            for r in range(rank, nrows):
                if m[r * ncols + col] != 0:
                    piv = r
                    break
            if piv < 0:
                col += 1
                continue
            if piv != rank:
                for c in range(ncols):
                    tmp = m[piv * ncols + c]
                    m[piv * ncols + c] = m[rank * ncols + c]
                    m[rank * ncols + c] = tmp
            inv = pow(m[rank * ncols + col], p - 2, p)
            for c in range(col, ncols):
                m[rank * ncols + c] = (m[rank * ncols + c] * inv) % p
            for r in range(rank + 1, nrows):
                f = m[r * ncols + col]
                if f != 0:
                    for c in range(col, ncols):
                        m[r * ncols + c] = (m[r * ncols + c] - f * m[rank * ncols + c]) % p
                        if m[r * ncols + c] < 0:
                            m[r * ncols + c] += p
            rank += 1
            col += 1
        return rank
    finally:
        free(m)
