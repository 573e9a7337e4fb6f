"""Finite permutation groups, finite G-sets and the Quillen category of pairs.

Permutations are tuples of images; composition ``mul(g, h)`` applies ``h``
first.  Subgroups are frozensets of such tuples.  A G-set stores one point
permutation per group generator; the action of an arbitrary element is
recovered by walking the Cayley graph, which also proves the generator
data defines a homomorphism.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import BadPermutation, CriterionMismatch, GroupTooLarge

GROUP_BOUND = 2000

Perm = tuple[int, ...]


def identity(m: int) -> Perm:
    return tuple(range(m))


def mul(g: Perm, h: Perm) -> Perm:
    return tuple(g[i] for i in h)


def inverse(g: Perm) -> Perm:
    inv = [0] * len(g)
    for i, j in enumerate(g):
        inv[j] = i
    return tuple(inv)


def conj(g: Perm, a: Perm) -> Perm:
    """g a g^-1."""
    return mul(mul(g, a), inverse(g))


def order(g: Perm) -> int:
    seen = [False] * len(g)
    o = 1
    for i in range(len(g)):
        if not seen[i]:
            k, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = g[j]
                k += 1
            o = o * k // math.gcd(o, k)
    return o


def check_perm(images: Sequence[int]) -> Perm:
    t = tuple(images)
    if sorted(t) != list(range(len(t))):
        raise BadPermutation(f"{list(t)} is not a permutation of 0..{len(t) - 1}")
    return t


def parse_cycles(text: str, degree: int | None = None) -> Perm:
    """Parse cycle notation such as ``(0 1 2)(3 4)``; ``()`` is the identity."""
    text = text.strip()
    if not re.fullmatch(r"(\(\s*(\d+(\s*,?\s*\d+)*)?\s*\)\s*)+", text):
        raise BadPermutation(f"malformed cycle notation {text!r}")
    cycles = [[int(x) for x in re.findall(r"\d+", c)]
              for c in re.findall(r"\(([^)]*)\)", text)]
    pts = [x for c in cycles for x in c]
    if len(pts) != len(set(pts)):
        raise BadPermutation(f"point repeated in {text!r}")
    m = max(pts, default=-1) + 1
    if degree is not None:
        if m > degree:
            raise BadPermutation(f"{text!r} moves points beyond degree {degree}")
        m = degree
    img = list(range(m))
    for c in cycles:
        for a, b in zip(c, c[1:] + c[:1]):
            img[a] = b
    return tuple(img)


def format_cycles(g: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(g)):
        if i in seen or g[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = g[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = g[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def closure(gens: Iterable[Perm], m: int, bound: int = GROUP_BOUND) -> frozenset[Perm]:
    gens = list(gens)
    e = identity(m)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(s, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > bound:
                    raise GroupTooLarge(f"group order exceeds the bound {bound}")
                queue.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple[Perm, ...] = ()
    bound: int = field(default=GROUP_BOUND, compare=False)

    def __post_init__(self):
        gens = tuple(check_perm(g) for g in self.generators)
        for g in gens:
            if len(g) != self.degree:
                raise BadPermutation(f"generator of length {len(g)} in a group of degree {self.degree}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def from_cycles(cls, cycles: Iterable[str], degree: int | None = None,
                    bound: int = GROUP_BOUND) -> PermGroup:
        cycles = list(cycles)
        if degree is None:
            degree = max((len(parse_cycles(c)) for c in cycles), default=1)
        return cls(degree, tuple(parse_cycles(c, degree) for c in cycles), bound)

    @cached_property
    def elements(self) -> frozenset[Perm]:
        return closure(self.generators, self.degree, self.bound)

    @cached_property
    def sorted_elements(self) -> tuple[Perm, ...]:
        return tuple(sorted(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return identity(self.degree)


def enumerate_elements(G: PermGroup) -> frozenset[Perm]:
    return G.elements


def subgroup_key(H: frozenset[Perm]) -> tuple:
    return (len(H), tuple(sorted(H)))


def generated(G: PermGroup, gens: Iterable[Perm]) -> frozenset[Perm]:
    return closure(gens, G.degree, G.bound)


def conjugate_subgroup(g: Perm, H: frozenset[Perm]) -> frozenset[Perm]:
    gi = inverse(g)
    return frozenset(mul(mul(g, h), gi) for h in H)


def rank_of(A: frozenset[Perm], p: int) -> int:
    r = round(math.log(len(A), p)) if len(A) > 1 else 0
    if p ** r != len(A):
        raise ValueError(f"|A| = {len(A)} is not a power of {p}")
    return r


def elementary_abelians(G: PermGroup, p: int) -> list[frozenset[Perm]]:
    """All elementary abelian p-subgroups, trivial one included, in canonical order."""
    order_p = [g for g in G.sorted_elements if order(g) == p]
    trivial = frozenset([G.identity])
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for A in frontier:
            for x in order_p:
                if x in A or any(mul(x, a) != mul(a, x) for a in A):
                    continue
                B = frozenset(mul(a, y) for a in A for y in _powers(x))
                if B not in found:
                    found.add(B)
                    nxt.append(B)
        frontier = nxt
    return sorted(found, key=subgroup_key)


def _powers(x: Perm) -> list[Perm]:
    out = [identity(len(x))]
    y = x
    while y != out[0]:
        out.append(y)
        y = mul(x, y)
    return out


@dataclass(frozen=True)
class GSet:
    """A finite G-set given by one point permutation per group generator."""
    group: PermGroup
    size: int
    action: tuple[Perm, ...]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        act = tuple(check_perm(a) for a in self.action)
        if len(act) != len(self.group.generators):
            raise BadPermutation("need one point permutation per group generator")
        if any(len(a) != self.size for a in act):
            raise BadPermutation(f"point permutations must have length {self.size}")
        object.__setattr__(self, "action", act)
        self._table  # validate homomorphism eagerly

    @cached_property
    def _table(self) -> dict[Perm, Perm]:
        G = self.group
        e = G.identity
        table = {e: identity(self.size)}
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s, xs in zip(G.generators, self.action):
                y = mul(s, x)
                img = mul(xs, table[x])
                if y in table:
                    if table[y] != img:
                        raise BadPermutation("point permutations do not define a group action")
                else:
                    table[y] = img
                    queue.append(y)
        return table

    def act(self, g: Perm, x: int) -> int:
        return self._table[g][x]

    def stabilizer(self, x: int) -> frozenset[Perm]:
        return frozenset(g for g, img in self._table.items() if img[x] == x)

    def fixed_points(self, A: Iterable[Perm]) -> list[int]:
        A = list(A)
        return [x for x in range(self.size) if all(self._table[a][x] == x for a in A)]

    def orbits(self) -> list[list[int]]:
        seen = set()
        out = []
        for x in range(self.size):
            if x in seen:
                continue
            orb = sorted({img[x] for img in self._table.values()})
            seen.update(orb)
            out.append(orb)
        return out

    def __add__(self, other: GSet) -> GSet:
        if self.group != other.group:
            raise ValueError("disjoint union of G-sets over different groups")
        n = self.size
        act = tuple(a + tuple(n + i for i in b) for a, b in zip(self.action, other.action))
        return GSet(self.group, n + other.size, act, self.labels + other.labels)


def coset_space(G: PermGroup, H: frozenset[Perm]) -> GSet:
    """G/H with left multiplication; point 0 is the coset H."""
    if not H <= G.elements or G.identity not in H:
        raise ValueError("H is not a subgroup of G")
    cosets: list[frozenset[Perm]] = []
    index = {}
    for g in sorted(G.elements, key=lambda g: (g not in H, g)):
        if g in index:
            continue
        c = frozenset(mul(g, h) for h in H)
        for y in c:
            index[y] = len(cosets)
        cosets.append(c)
    act = []
    for s in G.generators:
        act.append(tuple(index[mul(s, next(iter(c)))] for c in cosets))
    labels = tuple(f"{format_cycles(min(c))}H" for c in cosets)
    return GSet(G, len(cosets), tuple(act), labels)


def point(G: PermGroup) -> GSet:
    return GSet(G, 1, tuple((0,) for _ in G.generators), ("pt",))


def free_orbits(G: PermGroup, k: int = 1) -> GSet:
    X = GSet(G, 0, tuple(() for _ in G.generators))
    for _ in range(k):
        X = X + coset_space(G, frozenset([G.identity]))
    return X


# -- Quillen category ---------------------------------------------------------

@dataclass(frozen=True)
class QuillenPair:
    A: frozenset[Perm]
    c: int
    rank: int

    def key(self) -> tuple:
        return (self.rank, tuple(sorted(self.A)), self.c)

    def describe(self) -> str:
        gens = _small_generating_set(self.A)
        return "<" + ", ".join(format_cycles(g) for g in gens) + f">@{self.c}"


def _small_generating_set(A: frozenset[Perm]) -> list[Perm]:
    if not A:
        return []
    m = len(next(iter(A)))
    gens: list[Perm] = []
    span = frozenset([identity(m)])
    for g in sorted(A):
        if g not in span:
            gens.append(g)
            span = closure(gens, m)
    return gens


@dataclass(frozen=True)
class PairClass:
    rep: QuillenPair
    members: tuple[QuillenPair, ...]

    @property
    def rank(self) -> int:
        return self.rep.rank

    def __len__(self):
        return len(self.members)


def quillen_pairs(G: PermGroup, p: int, X: GSet) -> list[QuillenPair]:
    pairs = []
    for A in elementary_abelians(G, p):
        r = rank_of(A, p)
        for c in X.fixed_points(A):
            pairs.append(QuillenPair(A, c, r))
    return sorted(pairs, key=QuillenPair.key)


def is_subconjugate(G: PermGroup, X: GSet, a: QuillenPair, b: QuillenPair) -> bool:
    """Is there g with g A g^-1 <= A' and g.c = c'?"""
    if len(a.A) > len(b.A) or len(b.A) % len(a.A):
        return False
    for g in G.sorted_elements:
        if X.act(g, a.c) == b.c and conjugate_subgroup(g, a.A) <= b.A:
            return True
    return False


def pair_classes(G: PermGroup, p: int, X: GSet) -> list[PairClass]:
    """Isomorphism classes of Q(G, X): orbits of G acting by conjugation on pairs."""
    remaining = {q.key(): q for q in quillen_pairs(G, p, X)}
    classes = []
    for key in sorted(remaining):
        if key not in remaining:
            continue
        q = remaining[key]
        orbit = {}
        for g in G.sorted_elements:
            B = conjugate_subgroup(g, q.A)
            other = QuillenPair(B, X.act(g, q.c), q.rank)
            orbit[other.key()] = other
        for k in orbit:
            remaining.pop(k, None)
        members = tuple(orbit[k] for k in sorted(orbit))
        classes.append(PairClass(members[0], members))
    return sorted(classes, key=lambda cl: cl.rep.key())


def _maximal_categorical(G, p, X, q, pairs) -> bool:
    for other in pairs:
        if is_subconjugate(G, X, q, other) and not is_subconjugate(G, X, other, q):
            return False
    return True


def _maximal_stabilizer(G, p, X, q) -> bool:
    Gc = X.stabilizer(q.c)
    for x in Gc:
        if x not in q.A and order(x) == p and all(mul(x, a) == mul(a, x) for a in q.A):
            return False
    return True


def is_maximal_pair(G: PermGroup, p: int, X: GSet, q: QuillenPair,
                    pairs: list[QuillenPair] | None = None) -> bool:
    """Maximality of (A, c), decided twice: categorically and via the stabilizer G_c."""
    if pairs is None:
        pairs = quillen_pairs(G, p, X)
    cat = _maximal_categorical(G, p, X, q, pairs)
    stab = _maximal_stabilizer(G, p, X, q)
    if cat != stab:
        raise CriterionMismatch(
            f"pair {q.describe()}: categorical test says {cat}, stabilizer test says {stab}")
    return cat


def q_prime(G: PermGroup, p: int, X: GSet) -> list[PairClass]:
    pairs = quillen_pairs(G, p, X)
    return [cl for cl in pair_classes(G, p, X) if is_maximal_pair(G, p, X, cl.rep, pairs)]


def q_prime_max(G: PermGroup, p: int, X: GSet) -> list[PairClass]:
    qp = q_prime(G, p, X)
    if not qp:
        return []
    top = max(cl.rank for cl in qp)
    return [cl for cl in qp if cl.rank == top]


def pair_normalizer(G: PermGroup, X: GSet, q: QuillenPair) -> frozenset[Perm]:
    return frozenset(g for g in G.elements
                     if X.act(g, q.c) == q.c and conjugate_subgroup(g, q.A) == q.A)


def pair_centralizer(G: PermGroup, X: GSet, q: QuillenPair) -> frozenset[Perm]:
    return frozenset(g for g in G.elements
                     if X.act(g, q.c) == q.c and all(mul(g, a) == mul(a, g) for a in q.A))


def weyl_order(G: PermGroup, X: GSet, q: QuillenPair) -> int:
    N = pair_normalizer(G, X, q)
    C = pair_centralizer(G, X, q)
    if not C <= N or any(conjugate_subgroup(n, C) != C for n in N):
        raise AssertionError("centralizer of the pair is not normal in its normalizer")
    if len(N) % len(C):
        raise AssertionError("|C| does not divide |N|")
    return len(N) // len(C)


def max_rank(G: PermGroup, p: int, X: GSet) -> int:
    return max((q.rank for q in quillen_pairs(G, p, X)), default=0)


def subconjugacy_edges(G: PermGroup, p: int, X: GSet) -> list[tuple[int, int]]:
    """Edges (i, j) of the subconjugacy preorder between pair classes, i != j."""
    classes = pair_classes(G, p, X)
    return [(i, j) for i, a in enumerate(classes) for j, b in enumerate(classes)
            if i != j and is_subconjugate(G, X, a.rep, b.rep)]


# -- named small groups used by corpora and tests ----------------------------

def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, ())
    return PermGroup(n, (tuple((i + 1) % n for i in range(n)),))


def symmetric3() -> PermGroup:
    return PermGroup.from_cycles(["(0 1 2)", "(0 1)"])


def dihedral8() -> PermGroup:
    return PermGroup.from_cycles(["(0 1 2 3)", "(0 2)"])


def alternating4() -> PermGroup:
    return PermGroup.from_cycles(["(0 1 2)", "(0 1)(2 3)"])


def elementary_abelian_group(p: int, r: int) -> PermGroup:
    """(Z/p)^r acting on r disjoint p-cycles."""
    if r == 0:
        return PermGroup(1, ())
    gens = []
    for k in range(r):
        img = list(range(p * r))
        for i in range(p):
            img[k * p + i] = k * p + (i + 1) % p
        gens.append(tuple(img))
    return PermGroup(p * r, tuple(gens))


def klein_four() -> PermGroup:
    return PermGroup.from_cycles(["(0 1)", "(2 3)"])
