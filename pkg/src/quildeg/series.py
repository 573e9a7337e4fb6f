"""Exact rational Poincare series of the form N(t) / prod(1 - t^w).

A :class:`SeriesExpr` is immutable.  The numerator is a dense tuple of
Python integers (index = exponent, trailing zeros trimmed) and the
denominator is a sorted tuple of positive weights.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import ZeroSeries


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_add(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                 for i in range(n))


def one_minus_tw(w: int) -> tuple[int, ...]:
    """Coefficients of 1 - t^w."""
    c = [0] * (w + 1)
    c[0] += 1
    c[w] -= 1
    return _trim(c)


def divide_one_minus_tw(num: Sequence[int], w: int) -> tuple[int, ...] | None:
    """Exact quotient num / (1 - t^w), or None if it does not divide."""
    # num = (1 - t^w) q  <=>  q_i = num_i + q_{i-w}
    n = len(num)
    if n == 0:
        return ()
    if n <= w:
        return None
    q = [0] * (n - w)
    for i in range(n - w):
        q[i] = num[i] + (q[i - w] if i >= w else 0)
    # remaining coefficients must match -q_{i-w}
    for i in range(n - w, n):
        lower = q[i - w] if 0 <= i - w < len(q) else 0
        top = q[i] if i < len(q) else 0
        if num[i] != top - lower:
            return None
    return _trim(q)


def root_multiplicity_at_one(num: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Return (m, q) with num = (1 - t)^m q and q(1) != 0."""
    if not any(num):
        raise ZeroSeries("zero numerator has no finite multiplicity at t=1")
    m = 0
    q = _trim(num)
    while sum(q) == 0:
        q = divide_one_minus_tw(q, 1)
        m += 1
    return m, q


@dataclass(frozen=True)
class SeriesExpr:
    numerator: tuple[int, ...] = (1,)
    denom_weights: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "numerator", _trim(int(c) for c in self.numerator))
        ws = tuple(sorted(int(w) for w in self.denom_weights))
        if any(w < 1 for w in ws):
            raise ValueError(f"denominator weights must be >= 1, got {ws}")
        object.__setattr__(self, "denom_weights", ws)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int], weights: Iterable[int] = ()) -> SeriesExpr:
        if any(e < 0 for e in terms):
            raise ValueError("exponents must be nonnegative")
        top = max(terms, default=-1)
        num = [0] * (top + 1)
        for e, c in terms.items():
            num[e] += c
        return cls(tuple(num), tuple(weights))

    @classmethod
    def polynomial(cls, coeffs: Iterable[int]) -> SeriesExpr:
        return cls(tuple(coeffs), ())

    @property
    def terms(self) -> dict[int, int]:
        return {i: c for i, c in enumerate(self.numerator) if c}

    def is_zero(self) -> bool:
        return not self.numerator

    def __add__(self, other: SeriesExpr) -> SeriesExpr:
        return add(self, other)

    def __mul__(self, other: SeriesExpr) -> SeriesExpr:
        return mul(self, other)

    def __str__(self) -> str:
        return format_series(self)


def expand(s: SeriesExpr, D: int) -> list[int]:
    """First D+1 coefficients of the power series expansion of s."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    c = [0] * (D + 1)
    for i, x in enumerate(s.numerator[: D + 1]):
        c[i] = x
    for w in s.denom_weights:
        for i in range(w, D + 1):
            c[i] += c[i - w]
    return c


def pole_order(s: SeriesExpr) -> int:
    m, _ = root_multiplicity_at_one(s.numerator)
    return len(s.denom_weights) - m


def degree_at_one(s: SeriesExpr) -> Fraction:
    """Leading Laurent coefficient of s at t = 1, as an exact rational."""
    _, q = root_multiplicity_at_one(s.numerator)
    prod = 1
    for w in s.denom_weights:
        prod *= w
    return Fraction(sum(q), prod)


def mul(a: SeriesExpr, b: SeriesExpr) -> SeriesExpr:
    return SeriesExpr(poly_mul(a.numerator, b.numerator),
                      a.denom_weights + b.denom_weights)


def add(a: SeriesExpr, b: SeriesExpr) -> SeriesExpr:
    ca, cb = Counter(a.denom_weights), Counter(b.denom_weights)
    union = ca | cb
    na, nb = a.numerator, b.numerator
    for w, k in (union - ca).items():
        for _ in range(k):
            na = poly_mul(na, one_minus_tw(w))
    for w, k in (union - cb).items():
        for _ in range(k):
            nb = poly_mul(nb, one_minus_tw(w))
    return SeriesExpr(poly_add(na, nb), tuple(union.elements()))


def shift(s: SeriesExpr, k: int) -> SeriesExpr:
    if k < 0:
        raise ValueError("shift must be nonnegative")
    if s.is_zero():
        return s
    return SeriesExpr((0,) * k + s.numerator, s.denom_weights)


def normalize(s: SeriesExpr) -> SeriesExpr:
    """Canonical form: cancel (1 - t^w) factors greedily from the smallest w."""
    if s.is_zero():
        return SeriesExpr((), ())
    num = s.numerator
    kept = []
    for w in s.denom_weights:
        q = divide_one_minus_tw(num, w)
        if q is not None:
            num = q
        else:
            kept.append(w)
    return SeriesExpr(num, tuple(kept))


def evaluate(s: SeriesExpr, tau: Fraction) -> Fraction:
    """Exact value of s at a rational point inside the unit disc."""
    num = Fraction(0)
    for c in reversed(s.numerator):
        num = num * tau + c
    den = Fraction(1)
    for w in s.denom_weights:
        den *= 1 - tau ** w
    return num / den


def numeric_degree(s: SeriesExpr, tau: Fraction = Fraction(999999, 1000000)) -> Fraction:
    """(1 - tau)^pole_order * s(tau): approaches degree_at_one as tau -> 1."""
    return (1 - tau) ** pole_order(s) * evaluate(s, tau)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_series(s: SeriesExpr) -> str:
    num = ", ".join(str(c) for c in s.numerator) or "0"
    den = ", ".join(str(w) for w in s.denom_weights)
    return f"num: [{num}]; den: [{den}]"


def parse_series(text: str) -> SeriesExpr:
    """Inverse of :func:`format_series`."""
    parts = {}
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        key, _, val = chunk.partition(":")
        val = val.strip()
        if not (val.startswith("[") and val.endswith("]")):
            raise ValueError(f"malformed series field {chunk!r}")
        body = val[1:-1].strip()
        parts[key.strip()] = [int(x.replace("−", "-")) for x in body.split(",")] if body else []
    if set(parts) != {"num", "den"}:
        raise ValueError(f"series needs num and den fields, got {sorted(parts)}")
    return SeriesExpr(tuple(parts["num"]), tuple(parts["den"]))
