"""Graded modules whose components are permuted freely by a finite group W.

``P`` is a direct sum of copies of one graded piece ``base`` indexed by a
finite component set on which ``W`` acts freely.  Freeness over k[W] is
certified by an explicit basis; invariants are computed by solving the
fixed-point equations over F_p.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from . import _accel
from .errors import InvariantViolation, NotArtinian
from .grpcat import Perm, PermGroup, check_perm, mul
from .monalg import GradedModule, WeightedRing, module_length


@dataclass(frozen=True)
class InducedModule:
    W: PermGroup
    n_components: int
    action: tuple[Perm, ...]          # component permutation per generator of W
    base_dims: tuple[int, ...]
    base_length: int | None = None
    p: int = 2
    _orbits: tuple = field(init=False, repr=False, compare=False, default=())

    def __post_init__(self):
        act = tuple(check_perm(a) for a in self.action)
        if len(act) != len(self.W.generators):
            raise InvariantViolation("need one component permutation per generator of W")
        if any(len(a) != self.n_components for a in act):
            raise InvariantViolation("component permutations have the wrong length")
        if any(d < 0 for d in self.base_dims):
            raise InvariantViolation("dimensions must be nonnegative")
        object.__setattr__(self, "action", act)
        object.__setattr__(self, "base_dims", tuple(self.base_dims))
        object.__setattr__(self, "_orbits", self._free_orbits())

    def _free_orbits(self):
        """Orbits of W on components; raises unless every stabilizer is trivial."""
        table = {self.W.identity: tuple(range(self.n_components))}
        queue = deque([self.W.identity])
        while queue:
            x = queue.popleft()
            for s, a in zip(self.W.generators, self.action):
                y = mul(s, x)
                img = mul(a, table[x])
                if y in table:
                    if table[y] != img:
                        raise InvariantViolation("component permutations are not a W-action")
                else:
                    table[y] = img
                    queue.append(y)
        seen = set()
        orbits = []
        for c in range(self.n_components):
            if c in seen:
                continue
            orb = {}
            for w, img in table.items():
                if img[c] in orb:
                    raise InvariantViolation(f"W does not act freely: component {c} has a stabilizer")
                orb[img[c]] = w
            seen.update(orb)
            orbits.append((c, orb))
        return tuple(orbits)

    @property
    def t(self) -> int:
        return len(self._orbits)

    @cached_property
    def element_action(self) -> dict[Perm, Perm]:
        full = {self.W.identity: tuple(range(self.n_components))}
        queue = deque([self.W.identity])
        while queue:
            x = queue.popleft()
            for s, a in zip(self.W.generators, self.action):
                y = mul(s, x)
                if y not in full:
                    full[y] = mul(a, full[x])
                    queue.append(y)
        return full

    def dims(self, D: int) -> list[int]:
        return [self.n_components * self.base_dim(d) for d in range(D + 1)]

    def base_dim(self, d: int) -> int:
        return self.base_dims[d] if d < len(self.base_dims) else 0


def induced(W: PermGroup, t: int, base_dims, base_length=None, p: int = 2) -> InducedModule:
    """t free orbits, components labelled (orbit j, w) with W acting by left translation."""
    elems = W.sorted_elements
    index = {w: i for i, w in enumerate(elems)}
    n = len(elems)
    act = []
    for s in W.generators:
        act.append(tuple(j * n + index[mul(s, w)] for j in range(t) for w in elems))
    return InducedModule(W, t * n, tuple(act), tuple(base_dims), base_length, p)


def induced_from_quotient(W: PermGroup, t: int, R: WeightedRing, M: GradedModule,
                          p: int = 2) -> InducedModule:
    """Induced module whose base is an Artinian monomial quotient."""
    from .monalg import hilbert_brute
    length = module_length(R, M)
    dims = [0]
    for s, I in M.nonzero_summands():
        top = s + sum(max(g[i] for g in I.gens if g[i]) * w for i, w in enumerate(R.weights))
        h = hilbert_brute(R, I, top)
        h = [0] * s + h
        dims = [a + b for a, b in zip(dims + [0] * (len(h) - len(dims)),
                                       h + [0] * (len(dims) - len(h)))]
    while len(dims) > 1 and dims[-1] == 0:
        dims.pop()
    return induced(W, t, dims, length, p)


def check_free(P: InducedModule, D: int) -> bool:
    """Certify that P_d is free over k[W] for d <= D by translating an explicit basis."""
    order = P.W.order
    table = P.element_action
    for d in range(D + 1):
        bd = P.base_dim(d)
        if P.n_components * bd != order * P.t * bd:
            raise InvariantViolation(f"degree {d}: dimension is not |W| * t * dim(base)")
        # basis of P_d: pairs (component, base index); generators: orbit reps
        hit = set()
        for rep, _ in P._orbits:
            for b in range(bd):
                for w, img in table.items():
                    v = (img[rep], b)
                    if v in hit:
                        raise InvariantViolation(f"degree {d}: translates are not independent")
                    hit.add(v)
        if len(hit) != P.n_components * bd:
            raise InvariantViolation(f"degree {d}: translates do not span")
    return True


def component_fixed_dim(P: InducedModule) -> int:
    """Dimension over F_p of the W-fixed vectors in the permutation module k^components."""
    n = P.n_components
    rows = []
    for a in P.action:
        # rows of the matrix of g - 1; fixed vectors are its kernel
        mat = [[0] * n for _ in range(n)]
        for j in range(n):
            mat[a[j]][j] += 1
            mat[j][j] -= 1
        rows.extend(mat)
    if not rows:
        return n
    return n - _accel.rank_mod_p(rows, n, P.p)


def invariants_dims(P: InducedModule, D: int) -> list[int]:
    """Degreewise dimension of P^W.

    P_d is the permutation module on components tensored with the base
    piece, and W acts only on the first factor, so the fixed space in
    degree d has dimension (fixed dim on components) * dim(base_d).
    """
    fixed = component_fixed_dim(P)
    return [fixed * P.base_dim(d) for d in range(D + 1)]


@dataclass(frozen=True)
class LengthIdentity:
    lP: int
    lPW: int
    ok: bool


def length_identity(P: InducedModule) -> LengthIdentity:
    if P.base_length is None:
        raise NotArtinian("base module has no declared finite length")
    lP = sum(P.base_length for _ in range(P.n_components))
    if P.base_length == sum(P.base_dims):
        # composition factors of the base are k-lines: read lengths off dimensions
        lPW = sum(invariants_dims(P, len(P.base_dims)))
    else:
        lPW = P.t * P.base_length
    return LengthIdentity(lP, lPW, lP == P.W.order * lPW)


def tensor_length(M_len: int, V_dims) -> int:
    return M_len * sum(V_dims)


def tensor_module(R: WeightedRing, M: GradedModule, V_dims) -> GradedModule:
    """M tensor V as an explicit sum of shifted copies of M, one per basis vector of V."""
    summands = []
    for deg, k in enumerate(V_dims):
        for _ in range(k):
            summands.extend((s + deg, I) for s, I in M.summands)
    return GradedModule(R, tuple(summands))
