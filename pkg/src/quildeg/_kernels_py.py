"""Pure-Python reference versions of the hot kernels.

Same signatures and results as the compiled ``_kernels`` extension; used
when the extension is not built, and as its cross-check in the tests.
"""


def count_standard(gens, weights, D, cap):
    """Count monomials of each weighted degree <= D divisible by no generator.

    Depth-first over variables; divisibility is upward closed, so the first
    divisible exponent of a variable ends that branch.  Returns ``(counts,
    visited)`` or ``(None, visited)`` once more than ``cap`` nodes are visited.
    """
    n = len(weights)
    counts = [0] * (D + 1)
    if any(not any(g) for g in gens):
        return counts, 0
    exps = [0] * n
    # generators indexed by their last nonzero variable: a node at variable i
    # only needs to test generators whose support ends at or before i
    by_last = [[] for _ in range(n)]
    for g in gens:
        last = max(j for j in range(n) if g[j])
        by_last[last].append(g)
    visited = 0

    def divisible(i):
        for g in by_last[i]:
            for j in range(i + 1):
                if exps[j] < g[j]:
                    break
            else:
                return True
        return False

    def rec(i, deg):
        nonlocal visited
        if i == n:
            counts[deg] += 1
            return True
        w = weights[i]
        e = 0
        while deg + e * w <= D:
            exps[i] = e
            visited += 1
            if visited > cap:
                exps[i] = 0
                return False
            if e and divisible(i):
                break
            if not rec(i + 1, deg + e * w):
                exps[i] = 0
                return False
            e += 1
        exps[i] = 0
        return True

    if n == 0:
        counts[0] = 1
        return counts, 1
    ok = rec(0, 0)
    return (counts if ok else None), visited


def rank_mod_p(rows, ncols, p):
    """Rank over F_p of an integer matrix given as a list of rows."""
    mat = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    rank = 0
    col = 0
    nrows = len(mat)
    while rank < nrows and col < ncols:
        piv = None
        for r in range(rank, nrows):
            if mat[r][col]:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = pow(prow[col], p - 2, p)
        if inv != 1:
            prow = [(x * inv) % p for x in prow]
            mat[rank] = prow
        for r in range(rank + 1, nrows):
            f = mat[r][col]
            if f:
                row = mat[r]
                mat[r] = [(a - f * b) % p for a, b in zip(row, prow)]
        rank += 1
        col += 1
    return rank
