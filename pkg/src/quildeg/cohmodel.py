"""Stand-ins for mod-p cohomology rings of the groups that appear in fixtures.

Three kinds of model: the closed form for an elementary abelian p-group, a
monomial presentation handled by :mod:`quildeg.monalg`, and a bare series
with a declared dimension.  Bare series may carry a linear action whose
ring of invariants they claim to describe; :func:`invariant_truncation`
recomputes that ring degree by degree so the claim can be checked.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import _accel
from .errors import GroupTooLarge, ZeroSeries
from .monalg import MonIdeal, WeightedRing, hilbert_series
from .series import SeriesExpr, degree_at_one, expand, pole_order, poly_mul

MATRIX_GROUP_BOUND = 1000


@dataclass(frozen=True)
class ElementaryAbelian:
    rank: int
    p: int

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")


@dataclass(frozen=True)
class Presented:
    ring: WeightedRing
    ideal: MonIdeal


@dataclass(frozen=True)
class LinearWAction:
    """Generator matrices over F_p acting on the degree-one generators.

    Column i of a matrix is the image of the i-th generator.
    """
    p: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        mats = tuple(tuple(tuple(x % self.p for x in row) for row in m) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        for m in mats:
            if any(len(row) != len(m) for row in m):
                raise ValueError("action matrices must be square")
            if len({len(m) for m in mats}) > 1:
                raise ValueError("action matrices must share one size")
            if _accel.rank_mod_p([list(r) for r in m], len(m), self.p) != len(m):
                raise ValueError("action matrix is not invertible mod p")

    @property
    def rank(self) -> int:
        return len(self.matrices[0]) if self.matrices else 0


@dataclass(frozen=True)
class SeriesOnly:
    series: SeriesExpr
    declared_dim: int
    note: str = ""
    action: LinearWAction | None = None
    convention: str = "full"

    def __post_init__(self):
        if not self.series.is_zero() and pole_order(self.series) != self.declared_dim:
            raise ValueError(
                f"declared dimension {self.declared_dim} but the series has a pole of "
                f"order {pole_order(self.series)} at t=1")


CohModel = Union[ElementaryAbelian, Presented, SeriesOnly]


def elementary_abelian_series(r: int, p: int) -> SeriesExpr:
    if p == 2:
        return SeriesExpr((1,), (1,) * r)
    num: tuple[int, ...] = (1,)
    for _ in range(r):
        num = poly_mul(num, (1, 1))
    return SeriesExpr(num, (2,) * r)


def model_series(m: CohModel) -> SeriesExpr:
    if isinstance(m, ElementaryAbelian):
        return elementary_abelian_series(m.rank, m.p)
    if isinstance(m, Presented):
        return hilbert_series(m.ring, m.ideal)
    return m.series


def model_degree(m: CohModel) -> Fraction:
    if isinstance(m, ElementaryAbelian):
        return Fraction(1)
    return degree_at_one(model_series(m))


def model_dim(m: CohModel) -> int:
    if isinstance(m, ElementaryAbelian):
        return m.rank
    s = model_series(m)
    if s.is_zero():
        raise ZeroSeries("zero model has no dimension")
    return pole_order(s)


def model_p(m: CohModel) -> int | None:
    if isinstance(m, ElementaryAbelian):
        return m.p
    if isinstance(m, Presented):
        return m.ring.p
    return m.action.p if m.action else None


# -- invariant rings of linear actions ---------------------------------------

def _matmul(a, b, p):
    n = len(a)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in range(n))
                 for i in range(n))


def matrix_group(action: LinearWAction) -> list:
    """All elements generated by the action matrices (bounded closure)."""
    r, p = action.rank, action.p
    e = tuple(tuple(int(i == j) for j in range(r)) for i in range(r))
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in action.matrices:
            y = _matmul(g, x, p)
            if y not in seen:
                seen.add(y)
                if len(seen) > MATRIX_GROUP_BOUND:
                    raise GroupTooLarge(f"matrix group exceeds {MATRIX_GROUP_BOUND} elements")
                queue.append(y)
    return sorted(seen)


def _poly_basis(r: int, d: int):
    """Exponent vectors of total degree d in r variables."""
    if r == 0:
        return [()] if d == 0 else []
    out = []
    for combo in itertools.combinations_with_replacement(range(r), d):
        e = [0] * r
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out)


def _image_of_monomial(g, exps, p) -> dict:
    """g acting on prod y_i^{e_i}, where y_i -> sum_j g[j][i] y_j."""
    r = len(exps)
    poly = {(0,) * r: 1}
    for i, e in enumerate(exps):
        lin = {}
        for j in range(r):
            if g[j][i]:
                v = [0] * r
                v[j] = 1
                lin[tuple(v)] = g[j][i]
        for _ in range(e):
            nxt = {}
            for m, c in poly.items():
                for v, c2 in lin.items():
                    k = tuple(a + b for a, b in zip(m, v))
                    nxt[k] = (nxt.get(k, 0) + c * c2) % p
            poly = {k: c for k, c in nxt.items() if c}
    return poly


def _minor(g, rows, cols, p) -> int:
    """Determinant mod p of the submatrix g[rows][cols] by permutation expansion."""
    k = len(rows)
    total = 0
    for perm in itertools.permutations(range(k)):
        sign = 1
        for i in range(k):
            for j in range(i + 1, k):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = 1
        for i in range(k):
            prod *= g[rows[perm[i]]][cols[i]]
        total += sign * prod
    return total % p


def _degree_basis(r: int, p: int, d: int):
    """Basis of degree d: (exterior subset, polynomial exponents)."""
    if p == 2:
        return [((), e) for e in _poly_basis(r, d)]
    out = []
    for k in range(min(r, d) + 1):
        if (d - k) % 2:
            continue
        for S in itertools.combinations(range(r), k):
            for e in _poly_basis(r, (d - k) // 2):
                out.append((S, e))
    return out


def _action_matrix(g, basis, p):
    index = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    mat = [[0] * n for _ in range(n)]
    r = len(g)
    for col, (S, e) in enumerate(basis):
        poly = _image_of_monomial(g, e, p)
        if S:
            ext = {}
            for T in itertools.combinations(range(r), len(S)):
                c = _minor(g, T, S, p)
                if c:
                    ext[T] = c
        else:
            ext = {(): 1}
        for T, c1 in ext.items():
            for m, c2 in poly.items():
                mat[index[(T, m)]][col] = (mat[index[(T, m)]][col] + c1 * c2) % p
    return mat


def invariant_truncation(action: LinearWAction, D: int) -> list[int]:
    """Dimensions of the fixed subspace in each degree <= D.

    For p = 2 the ring is F_2[x_1..x_r] with deg x_i = 1; for odd p it is
    an exterior algebra on degree-one classes tensored with a polynomial
    algebra on their degree-two Bocksteins, both acted on by the matrices.
    """
    matrix_group(action)  # size check
    r, p = action.rank, action.p
    out = []
    for d in range(D + 1):
        basis = _degree_basis(r, p, d)
        n = len(basis)
        if n == 0:
            out.append(0)
            continue
        rows = []
        for g in action.matrices:
            m = _action_matrix(g, basis, p)
            for i in range(n):
                m[i][i] -= 1
            rows.extend(m)
        out.append(n - _accel.rank_mod_p(rows, n, p) if rows else n)
    return out


def gate_series(m: SeriesOnly, D: int = 40) -> bool | None:
    """True/False when the model has an action to check against, else None."""
    if m.action is None:
        return None
    return expand(m.series, D) == invariant_truncation(m.action, D)
