"""Weighted polynomial rings over F_p modulo monomial ideals.

Everything here is combinatorial: Hilbert series by pivot splitting,
minimal primes as minimal vertex covers of generator supports, and graded
localization lengths by substituting 1 for the inverted variables.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import _accel
from .errors import CapacityExceeded, Divergent, NotArtinian, NotMinimalPrime, ZeroModule
from .series import SeriesExpr, add, degree_at_one, pole_order, poly_add, poly_mul, shift

MAX_VARS = 12
MAX_MONOMIALS = 10**7

Monomial = tuple[int, ...]


@dataclass(frozen=True)
class WeightedRing:
    weights: tuple[int, ...]
    p: int = 2
    names: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if any(w < 1 for w in self.weights):
            raise ValueError("variable weights must be >= 1")
        if len(self.weights) > MAX_VARS:
            raise CapacityExceeded(f"{len(self.weights)} variables exceeds the bound {MAX_VARS}")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"x{i}" for i in range(self.n)))
        elif len(self.names) != self.n or len(set(self.names)) != self.n:
            raise ValueError("need one distinct name per variable")
        else:
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def n(self) -> int:
        return len(self.weights)

    def wdeg(self, m: Monomial) -> int:
        return sum(e * w for e, w in zip(m, self.weights))

    def monomial(self, text: str) -> Monomial:
        """Parse ``"x*y^2"`` (or ``"1"``) into an exponent vector."""
        exps = [0] * self.n
        text = text.strip()
        if text == "1":
            return tuple(exps)
        for factor in text.split("*"):
            m = re.fullmatch(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(\d+))?\s*", factor)
            if not m or m.group(1) not in self.names:
                raise ValueError(f"bad monomial factor {factor!r} for variables {self.names}")
            exps[self.names.index(m.group(1))] += int(m.group(2) or 1)
        return tuple(exps)

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for name, e in zip(self.names, m):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) or "1"

    def series(self) -> SeriesExpr:
        return SeriesExpr((1,), self.weights)


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Drop every generator divisible by another; result sorted."""
    uniq = sorted(set(tuple(g) for g in gens), key=lambda g: (sum(g), g))
    kept: list[Monomial] = []
    for g in uniq:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return tuple(sorted(kept))


def support(m: Monomial) -> frozenset[int]:
    return frozenset(i for i, e in enumerate(m) if e)


@dataclass(frozen=True)
class MonIdeal:
    n: int
    gens: tuple[Monomial, ...] = ()

    def __post_init__(self):
        gens = [tuple(int(e) for e in g) for g in self.gens]
        if any(len(g) != self.n for g in gens):
            raise ValueError(f"every generator needs {self.n} exponents")
        if any(e < 0 for g in gens for e in g):
            raise ValueError("exponents must be nonnegative")
        object.__setattr__(self, "gens", minimalize(gens))

    @classmethod
    def parse(cls, ring: WeightedRing, monomials: Iterable[str]) -> MonIdeal:
        return cls(ring.n, tuple(ring.monomial(s) for s in monomials))

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        return any(not any(g) for g in self.gens)

    def contains(self, m: Monomial) -> bool:
        return any(divides(g, m) for g in self.gens)

    def supports(self) -> list[frozenset[int]]:
        return [support(g) for g in self.gens]

    def intersect(self, other: MonIdeal) -> MonIdeal:
        return MonIdeal(self.n, tuple(tuple(map(max, a, b))
                                      for a in self.gens for b in other.gens))


@dataclass(frozen=True)
class MonPrime:
    vars: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(sorted(set(int(v) for v in self.vars))))

    def __len__(self):
        return len(self.vars)

    def format(self, ring: WeightedRing) -> str:
        if not self.vars:
            return "(0)"
        return "(" + ",".join(ring.names[v] for v in self.vars) + ")"


@dataclass(frozen=True)
class GradedModule:
    """Direct sum of shifted cyclic quotients (R/I_i)(-s_i)."""
    ring: WeightedRing
    summands: tuple[tuple[int, MonIdeal], ...] = ()

    def __post_init__(self):
        summands = tuple((int(s), I) for s, I in self.summands)
        for s, I in summands:
            if s < 0:
                raise ValueError("shifts must be nonnegative")
            if I.n != self.ring.n:
                raise ValueError("ideal and ring disagree on the number of variables")
        object.__setattr__(self, "summands", summands)

    @classmethod
    def quotient(cls, ring: WeightedRing, ideal: MonIdeal, shift: int = 0) -> GradedModule:
        return cls(ring, ((shift, ideal),))

    def __add__(self, other: GradedModule) -> GradedModule:
        if self.ring != other.ring:
            raise ValueError("direct sum over different rings")
        return GradedModule(self.ring, self.summands + other.summands)

    def nonzero_summands(self):
        return [(s, I) for s, I in self.summands if not I.is_unit()]

    def is_zero(self) -> bool:
        return not self.nonzero_summands()

    def annihilator(self) -> MonIdeal:
        parts = self.nonzero_summands()
        if not parts:
            return MonIdeal(self.ring.n, ((0,) * self.ring.n,))
        ann = parts[0][1]
        for _, I in parts[1:]:
            ann = ann.intersect(I)
        return ann


@dataclass(frozen=True)
class MonRingMap:
    """Graded map sending each source variable to a target monomial or to 0."""
    source: WeightedRing
    target: WeightedRing
    images: tuple[Monomial | None, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise ValueError("need one image per source variable")
        imgs = tuple(None if m is None else tuple(m) for m in self.images)
        for u, m in enumerate(imgs):
            if m is None:
                continue
            if len(m) != self.target.n:
                raise ValueError("image exponent vector has the wrong length")
            if self.target.wdeg(m) != self.source.weights[u]:
                raise ValueError(
                    f"map is not graded: {self.source.names[u]} has weight "
                    f"{self.source.weights[u]} but its image has degree {self.target.wdeg(m)}")
        object.__setattr__(self, "images", imgs)


# -- Hilbert series ---------------------------------------------------------

def _hilbert_numerator(gens: tuple[Monomial, ...], weights: tuple[int, ...],
                       memo: dict) -> tuple[int, ...]:
    if gens in memo:
        return memo[gens]
    mixed = [g for g in gens if sum(1 for e in g if e) > 1]
    if not mixed:
        # pure powers of distinct variables: a complete intersection
        num: tuple[int, ...] = (1,)
        for g in gens:
            d = sum(e * w for e, w in zip(g, weights))
            num = poly_mul(num, (1,) + (0,) * (d - 1) + (-1,) if d else ())
        memo[gens] = num
        return num
    freq = Counter(i for g in mixed for i, e in enumerate(g) if e)
    j = min(freq, key=lambda i: (-freq[i], i))
    n = len(weights)
    xj = tuple(1 if i == j else 0 for i in range(n))
    # N(I) = N(I + (x_j)) + t^{w_j} N(I : x_j)
    plus = minimalize([g for g in gens if not g[j]] + [xj])
    colon = minimalize([g[:j] + (max(g[j] - 1, 0),) + g[j + 1:] for g in gens])
    left = _hilbert_numerator(plus, weights, memo)
    right = _hilbert_numerator(colon, weights, memo)
    num = poly_add(left, (0,) * weights[j] + right if right else ())
    memo[gens] = num
    return num


def hilbert_series(R: WeightedRing, I: MonIdeal) -> SeriesExpr:
    """Hilbert series of R/I over the ring's own denominator."""
    if I.is_unit():
        return SeriesExpr((), R.weights)
    num = _hilbert_numerator(I.gens, R.weights, {})
    return SeriesExpr(num, R.weights)


def hilbert_brute(R: WeightedRing, I: MonIdeal, D: int,
                  bound: int = MAX_MONOMIALS) -> list[int]:
    """Standard monomials of R/I per weighted degree <= D, by enumeration."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    counts, visited = _accel.count_standard(list(I.gens), R.weights, D, bound)
    if counts is None:
        raise CapacityExceeded(f"enumeration exceeded {bound} monomials")
    return counts


def module_series(M: GradedModule) -> SeriesExpr:
    total = SeriesExpr((), ())
    for s, I in M.nonzero_summands():
        total = add(total, shift(hilbert_series(M.ring, I), s))
    return total


# -- vertex covers and primes -----------------------------------------------

def minimal_covers(supports: Sequence[frozenset[int]], n: int) -> list[frozenset[int]]:
    """All inclusion-minimal subsets of range(n) meeting every support."""
    found: list[frozenset[int]] = []
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            c = frozenset(combo)
            if any(f <= c for f in found):
                continue
            if all(s & c for s in supports):
                found.append(c)
    return found


def min_vertex_cover(supports: Sequence[frozenset[int]], n: int) -> int:
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            c = set(combo)
            if all(s & c for s in supports):
                return k
    raise ZeroModule("no vertex cover: the ideal is the unit ideal")


def _require_nonzero(M: GradedModule):
    if M.is_zero():
        raise ZeroModule("operation undefined on the zero module")


def krull_dim(R: WeightedRing, M: GradedModule) -> int:
    """Pole order of the Poincare series, cross-checked against vertex covers."""
    _require_nonzero(M)
    d = pole_order(module_series(M))
    combinatorial = max(R.n - min_vertex_cover(I.supports(), R.n)
                        for _, I in M.nonzero_summands())
    if d != combinatorial:
        raise AssertionError(f"pole order {d} disagrees with vertex-cover dimension {combinatorial}")
    return d


def minimal_primes(R: WeightedRing, M: GradedModule) -> list[MonPrime]:
    _require_nonzero(M)
    ann = M.annihilator()
    covers = minimal_covers(ann.supports(), R.n)
    return sorted((MonPrime(tuple(c)) for c in covers), key=lambda q: q.vars)


def _localized_count(I: MonIdeal, q: MonPrime, bound: int) -> int:
    """Standard monomials of I with inverted variables set to 1, in q's variables."""
    qv = q.vars
    gens = [tuple(g[v] for v in qv) for g in I.gens]
    local = MonIdeal(len(qv), tuple(gens))
    if local.is_unit():
        return 0
    if not qv:
        return 1
    box = []
    for k in range(len(qv)):
        pure = [g[k] for g in local.gens if support(g) == {k}]
        if not pure:
            raise Divergent(f"localization at {qv} has infinite length")
        box.append(min(pure))
    size = 1
    for b in box:
        size *= b
    if size > bound:
        raise Divergent(f"length enumeration exceeds {bound}")
    return sum(1 for m in itertools.product(*(range(b) for b in box))
               if not local.contains(m))


def local_length(R: WeightedRing, M: GradedModule, q: MonPrime,
                 bound: int = MAX_MONOMIALS) -> int:
    """Graded length of M localized at the minimal prime q."""
    if q not in minimal_primes(R, M):
        raise NotMinimalPrime(f"{q.format(R)} is not minimal over the annihilator")
    return sum(_localized_count(I, q, bound) for _, I in M.nonzero_summands())


def module_length(R: WeightedRing, M: GradedModule, bound: int = MAX_MONOMIALS) -> int:
    """Graded length of an Artinian module: its total number of standard monomials."""
    if M.is_zero():
        return 0
    if krull_dim(R, M) > 0:
        raise NotArtinian("module has positive Krull dimension")
    return sum(_localized_count(I, MonPrime(tuple(range(R.n))), bound)
               for _, I in M.nonzero_summands())


def degree_of(R: WeightedRing, M: GradedModule) -> Fraction:
    _require_nonzero(M)
    return degree_at_one(module_series(M))


def prime_degree(R: WeightedRing, q: MonPrime) -> Fraction:
    d = Fraction(1)
    for j in range(R.n):
        if j not in q.vars:
            d /= R.weights[j]
    return d


def dmax_primes(R: WeightedRing, M: GradedModule) -> list[MonPrime]:
    d = krull_dim(R, M)
    return [q for q in minimal_primes(R, M) if R.n - len(q) == d]


@dataclass
class AdditivityReport:
    lhs: Fraction
    terms: list[tuple[MonPrime, int, Fraction]] = field(default_factory=list)
    rhs: Fraction = Fraction(0)
    equal: bool = False

    def to_dict(self, R: WeightedRing | None = None) -> dict:
        from .series import format_rational
        fmt = (lambda q: q.format(R)) if R else (lambda q: list(q.vars))
        return {
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "equal": self.equal,
            "terms": [{"prime": fmt(q), "length": ln, "prime_degree": format_rational(pd)}
                      for q, ln, pd in self.terms],
        }


def additivity_report(R: WeightedRing, M: GradedModule) -> AdditivityReport:
    """Degree versus the sum of length * deg(R/q) over top-dimensional minimal primes."""
    lhs = degree_of(R, M)
    terms = [(q, local_length(R, M, q), prime_degree(R, q)) for q in dmax_primes(R, M)]
    rhs = sum((ln * pd for _, ln, pd in terms), Fraction(0))
    return AdditivityReport(lhs=lhs, terms=terms, rhs=rhs, equal=(lhs == rhs))


def pullback_prime(f: MonRingMap, q: MonPrime) -> MonPrime:
    """Contraction of a monomial prime of the target along f."""
    qs = set(q.vars)
    return MonPrime(tuple(u for u, m in enumerate(f.images)
                          if m is None or any(m[v] for v in qs)))
