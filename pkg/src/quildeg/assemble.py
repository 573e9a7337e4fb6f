"""Both sides of the degree formula for a fixture, and their comparison.

Left side: the degree of the equivariant cohomology of X, either from a
global model or by summing the stabilizer models over the orbits of X
(for a finite G-set, H*_G of an orbit G/H is H*_H).  Right side: a sum
over the top-rank maximal Quillen classes [A, c] of
deg(H*_{C_G(A,c)}(c)) / |W_G(A,c)|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import grpcat as gc
from .cohmodel import (CohModel, Presented, SeriesOnly, gate_series, model_degree,
                       model_dim, model_series)
from .errors import MissingAlgebraicSide, MissingModel
from .monalg import (GradedModule, MonPrime, MonRingMap, WeightedRing, additivity_report,
                     dmax_primes, local_length, minimal_primes, prime_degree, pullback_prime)
from .series import SeriesExpr, add, degree_at_one, format_rational, pole_order

GATE_DEGREE = 40


@dataclass(frozen=True)
class PairSpec:
    """A Quillen pair named by generators of A and a point of X."""
    gens: tuple[gc.Perm, ...]
    c: int

    def resolve(self, G: gc.PermGroup, p: int) -> gc.QuillenPair:
        A = gc.generated(G, self.gens)
        return gc.QuillenPair(A, self.c, gc.rank_of(A, p))


@dataclass(frozen=True)
class Restriction:
    pair: PairSpec
    map: MonRingMap
    target_prime: MonPrime


@dataclass(frozen=True)
class AlgebraicSide:
    ring: WeightedRing
    module: GradedModule
    class_primes: tuple[tuple[PairSpec, MonPrime], ...] = ()
    restrictions: tuple[Restriction, ...] = ()


@dataclass(frozen=True)
class Fixture:
    name: str
    group: gc.PermGroup
    p: int
    X: gc.GSet
    stabilizer_models: tuple[tuple[tuple[gc.Perm, ...], CohModel], ...] = ()
    centralizer_models: tuple[tuple[PairSpec, CohModel], ...] = ()
    global_model: Optional[CohModel] = None
    algebraic: Optional[AlgebraicSide] = None
    expected_lhs: Optional[Fraction] = None
    expected_rhs: Optional[Fraction] = None
    note: str = ""


def _class_of(classes, q: gc.QuillenPair):
    for cl in classes:
        if any(m.A == q.A and m.c == q.c for m in cl.members):
            return cl
    return None


def _conjugate_in(G, H: frozenset, K: frozenset) -> bool:
    if len(H) != len(K):
        return False
    return any(gc.conjugate_subgroup(g, H) == K for g in G.sorted_elements)


def orbit_models(f: Fixture) -> list[tuple[int, CohModel]]:
    """(orbit representative, model) for every orbit of X."""
    out = []
    subgroups = [(gc.generated(f.group, gens), m) for gens, m in f.stabilizer_models]
    for orb in f.X.orbits():
        x = orb[0]
        Gx = f.X.stabilizer(x)
        for H, m in subgroups:
            if _conjugate_in(f.group, H, Gx):
                out.append((x, m))
                break
        else:
            raise MissingModel(f"fixture {f.name}: no stabilizer model for the orbit of point {x}")
    return out


def lhs_series(f: Fixture) -> SeriesExpr:
    if f.global_model is not None:
        return model_series(f.global_model)
    if not f.stabilizer_models:
        raise MissingModel(f"fixture {f.name}: neither a global model nor stabilizer models")
    total = SeriesExpr((), ())
    for _, m in orbit_models(f):
        total = add(total, model_series(m))
    return total


def lhs_degree(f: Fixture) -> Fraction:
    return degree_at_one(lhs_series(f))


@dataclass
class Term:
    pair: gc.QuillenPair
    class_size: int
    weyl_order: int
    centralizer_order: int
    model_degree: Fraction
    model_dim: int

    @property
    def contribution(self) -> Fraction:
        return self.model_degree / self.weyl_order


@dataclass
class RhsDegree:
    terms: list[Term]
    total: Fraction


def centralizer_model(f: Fixture, cl: gc.PairClass) -> CohModel:
    for spec, m in f.centralizer_models:
        q = spec.resolve(f.group, f.p)
        if any(mem.A == q.A and mem.c == q.c for mem in cl.members):
            return m
    raise MissingModel(f"fixture {f.name}: no centralizer model for class {cl.rep.describe()}")


def rhs_degree(f: Fixture, classes: list[gc.PairClass] | None = None,
               representative=None) -> RhsDegree:
    """Sum over Q'_max of model degree / |W|.

    ``representative`` picks which member of each class to compute N, C, W
    from (default: the canonical one); results must not depend on it.
    """
    if classes is None:
        classes = gc.q_prime_max(f.group, f.p, f.X)
    terms = []
    for cl in classes:
        m = centralizer_model(f, cl)
        q = representative(cl) if representative else cl.rep
        terms.append(Term(q, len(cl), gc.weyl_order(f.group, f.X, q),
                          len(gc.pair_centralizer(f.group, f.X, q)),
                          model_degree(m), model_dim(m)))
    return RhsDegree(terms, sum((t.contribution for t in terms), Fraction(0)))


def _models(f: Fixture):
    if f.global_model is not None:
        yield "global", f.global_model
    for gens, m in f.stabilizer_models:
        yield "stab<" + ",".join(gc.format_cycles(g) for g in gens) + ">", m
    for spec, m in f.centralizer_models:
        yield "central<" + ",".join(gc.format_cycles(g) for g in spec.gens) + f">@{spec.c}", m


def series_gates(f: Fixture, D: int = GATE_DEGREE) -> dict[str, str]:
    out = {}
    for role, m in _models(f):
        if isinstance(m, SeriesOnly):
            g = gate_series(m, D)
            out[role] = {None: "unverified fixture", True: "verified", False: "FAILED"}[g]
    return out


@dataclass
class TermMatch:
    pair: str
    prime: str
    length: int
    prime_degree: Fraction
    geometric: Fraction
    equal: bool


@dataclass
class MatchingReport:
    n_dmax: int
    n_qmax: int
    bijective: bool
    terms: list[TermMatch]
    algebraic_total: Fraction
    additivity_rhs: Fraction
    ok: bool


def term_matching(f: Fixture, rhs: RhsDegree, classes) -> MatchingReport:
    alg = f.algebraic
    if alg is None:
        raise MissingAlgebraicSide(f"fixture {f.name} has no algebraic side")
    R, M = alg.ring, alg.module
    D = dmax_primes(R, M)
    by_class = {}
    for spec, prime in alg.class_primes:
        cl = _class_of(classes, spec.resolve(f.group, f.p))
        if cl is not None:
            by_class.setdefault(cl.rep.key(), []).append(prime)
    matched = [by_class.get(cl.rep.key(), []) for cl in classes]
    bijective = (all(len(x) == 1 for x in matched)
                 and sorted(x[0].vars for x in matched) == sorted(q.vars for q in D))
    terms = []
    if bijective:
        for cl, term, primes in zip(classes, rhs.terms, matched):
            q = primes[0]
            ln = local_length(R, M, q)
            pd = prime_degree(R, q)
            terms.append(TermMatch(cl.rep.describe(), q.format(R), ln, pd,
                                   term.contribution, ln * pd == term.contribution))
    rep = additivity_report(R, M)
    total = sum((t.length * t.prime_degree for t in terms), Fraction(0))
    ok = (bijective and len(D) == len(classes) and all(t.equal for t in terms)
          and total == rep.rhs and rep.equal)
    return MatchingReport(len(D), len(classes), bijective, terms, total, rep.rhs, ok)


@dataclass
class CorrespondenceReport:
    n_minimal_primes: int
    n_qprime: int
    bijective: bool
    dimension_ok: bool
    pullbacks: list[dict]
    ok: bool


def correspondence_check(f: Fixture) -> CorrespondenceReport:
    """Minimal primes of the algebraic side versus Q'(G, X)."""
    alg = f.algebraic
    if alg is None:
        raise MissingAlgebraicSide(f"fixture {f.name} has no algebraic side")
    R, M = alg.ring, alg.module
    primes = minimal_primes(R, M)
    classes = gc.q_prime(f.group, f.p, f.X)
    assigned: dict[tuple, list[MonPrime]] = {}
    for spec, prime in alg.class_primes:
        cl = _class_of(classes, spec.resolve(f.group, f.p))
        key = cl.rep.key() if cl is not None else ("unmatched", spec)
        assigned.setdefault(key, []).append(prime)
    images = [assigned.get(cl.rep.key(), []) for cl in classes]
    bijective = (len(assigned) == len(classes)
                 and all(len(x) == 1 for x in images)
                 and sorted(x[0].vars for x in images) == sorted(q.vars for q in primes))
    dimension_ok = bijective and all(R.n - len(x[0]) == cl.rank
                                     for cl, x in zip(classes, images))
    pullbacks = []
    for res in alg.restrictions:
        cl = _class_of(classes, res.pair.resolve(f.group, f.p))
        declared = assigned.get(cl.rep.key(), [None])[0] if cl else None
        got = pullback_prime(res.map, res.target_prime)
        pullbacks.append({"pair": res.pair.resolve(f.group, f.p).describe(),
                          "pullback": got.format(R) if res.map.source == R else list(got.vars),
                          "declared": declared.format(R) if declared else None,
                          "ok": res.map.source == R and declared is not None and got == declared})
    ok = (len(primes) == len(classes) and bijective and dimension_ok
          and all(pb["ok"] for pb in pullbacks))
    return CorrespondenceReport(len(primes), len(classes), bijective, dimension_ok, pullbacks, ok)


@dataclass
class MainReport:
    fixture: str
    lhs: Fraction
    rhs: Fraction
    equal: bool
    lhs_dim: int
    max_rank: int
    dim_check: bool
    terms: list[Term]
    tautology_flags: list[str]
    degenerate: bool
    gates: dict[str, str]
    term_matching: Optional[MatchingReport] = None
    correspondence: Optional[CorrespondenceReport] = None
    expected_ok: Optional[bool] = None
    note: str = ""

    @property
    def passed(self) -> bool:
        return (self.equal and self.dim_check
                and "FAILED" not in self.gates.values()
                and (self.term_matching is None or self.term_matching.ok)
                and (self.correspondence is None or self.correspondence.ok)
                and self.expected_ok is not False)

    def to_dict(self) -> dict:
        d = {
            "fixture": self.fixture,
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "equal": self.equal,
            "lhs_dim": self.lhs_dim,
            "max_rank": self.max_rank,
            "dim_check": self.dim_check,
            "terms": [{"class": t.pair.describe(), "rank": t.pair.rank,
                       "class_size": t.class_size, "weyl_order": t.weyl_order,
                       "centralizer_order": t.centralizer_order,
                       "model_degree": format_rational(t.model_degree),
                       "model_dim": t.model_dim,
                       "contribution": format_rational(t.contribution)} for t in self.terms],
            "tautology_flags": self.tautology_flags,
            "degenerate": self.degenerate,
            "series_gates": self.gates,
            "expected_ok": self.expected_ok,
            "passed": self.passed,
        }
        if self.term_matching is not None:
            tm = self.term_matching
            d["term_matching"] = {
                "n_dmax": tm.n_dmax, "n_qmax": tm.n_qmax, "bijective": tm.bijective,
                "algebraic_total": format_rational(tm.algebraic_total),
                "additivity_rhs": format_rational(tm.additivity_rhs), "ok": tm.ok,
                "terms": [{"class": t.pair, "prime": t.prime, "length": t.length,
                           "prime_degree": format_rational(t.prime_degree),
                           "geometric": format_rational(t.geometric), "equal": t.equal}
                          for t in tm.terms],
            }
        if self.correspondence is not None:
            c = self.correspondence
            d["correspondence"] = {"n_minimal_primes": c.n_minimal_primes,
                                   "n_qprime": c.n_qprime, "bijective": c.bijective,
                                   "dimension_ok": c.dimension_ok,
                                   "pullbacks": c.pullbacks, "ok": c.ok}
        return d


def tautological_classes(f: Fixture, classes) -> list[str]:
    """Classes where C_G(A,c) is all of G and c is all of X: the formula is circular there."""
    out = []
    for cl in classes:
        C = gc.pair_centralizer(f.group, f.X, cl.rep)
        if len(C) == f.group.order and f.X.size == 1:
            out.append(cl.rep.describe())
    return out


def verify_main(f: Fixture, gate_degree: int = GATE_DEGREE) -> MainReport:
    classes = gc.q_prime_max(f.group, f.p, f.X)
    s = lhs_series(f)
    lhs = degree_at_one(s)
    rhs = rhs_degree(f, classes)
    dim = pole_order(s)
    mr = gc.max_rank(f.group, f.p, f.X)
    expected_ok = None
    if f.expected_lhs is not None or f.expected_rhs is not None:
        expected_ok = ((f.expected_lhs is None or f.expected_lhs == lhs)
                       and (f.expected_rhs is None or f.expected_rhs == rhs.total))
    report = MainReport(
        fixture=f.name, lhs=lhs, rhs=rhs.total, equal=(lhs == rhs.total),
        lhs_dim=dim, max_rank=mr, dim_check=(dim == mr), terms=rhs.terms,
        tautology_flags=tautological_classes(f, classes), degenerate=(mr == 0),
        gates=series_gates(f, gate_degree), expected_ok=expected_ok, note=f.note)
    if f.algebraic is not None:
        report.term_matching = term_matching(f, rhs, classes)
        report.correspondence = correspondence_check(f)
    return report


def presented_side(model: Presented, class_primes=(), restrictions=()) -> AlgebraicSide:
    R = model.ring
    return AlgebraicSide(R, GradedModule.quotient(R, model.ideal),
                         tuple(class_primes), tuple(restrictions))
