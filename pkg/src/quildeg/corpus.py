"""Seeded random corpora and the bundled fixture catalog."""
from __future__ import annotations

import random
from importlib import resources

from . import grpcat as gc
from .monalg import GradedModule, MonIdeal, WeightedRing, module_length
from .series import SeriesExpr, poly_mul
from .wmod import InducedModule, induced_from_quotient


def catalog_text() -> str:
    return resources.files("quildeg").joinpath("data/catalog.qdx").read_text(encoding="utf-8")


def load_catalog():
    from .qdx import parse
    return parse(catalog_text())


def random_quotient(rng: random.Random, max_vars=6, max_gens=8, max_weight=3,
                    max_exp=4) -> tuple[WeightedRing, MonIdeal]:
    n = rng.randint(1, max_vars)
    R = WeightedRing(tuple(rng.randint(1, max_weight) for _ in range(n)))
    gens = []
    for _ in range(rng.randint(0, max_gens)):
        g = [0] * n
        for i in rng.sample(range(n), rng.randint(1, min(3, n))):
            g[i] = rng.randint(1, max_exp)
        gens.append(tuple(g))
    return R, MonIdeal(n, tuple(gens))


def hilbert_corpus(seed: int, count: int = 200):
    rng = random.Random(seed)
    return [random_quotient(rng) for _ in range(count)]


def random_module(rng: random.Random) -> tuple[WeightedRing, GradedModule]:
    """A small direct sum of shifted quotients over one ring."""
    R, I = random_quotient(rng, max_vars=4, max_gens=5)
    summands = [(0, I)]
    for _ in range(rng.randint(0, 2)):
        _, J = random_quotient(rng, max_vars=R.n, max_gens=4)
        if J.n == R.n:
            summands.append((rng.randint(0, 3), J))
    return R, GradedModule(R, tuple(summands))


def random_series(rng: random.Random) -> SeriesExpr:
    """Nonnegative-coefficient series: positive polynomial over prod (1 - t^w)."""
    num = tuple(rng.randint(0, 4) for _ in range(rng.randint(1, 6)))
    if not any(num):
        num = (1,) + num[1:]
    weights = [rng.randint(1, 4) for _ in range(rng.randint(0, 4))]
    # sometimes multiply in a removable factor (1 - t^w) on both sides
    if rng.random() < 0.3:
        w = rng.randint(1, 3)
        num = poly_mul(num, (1,) + (0,) * (w - 1) + (-1,))
        weights.append(w)
    return SeriesExpr(num, tuple(weights))


def series_corpus(seed: int, count: int = 500) -> list[SeriesExpr]:
    rng = random.Random(seed)
    return [random_series(rng) for _ in range(count)]


W_GROUPS = {
    "Z2": lambda: gc.cyclic(2),
    "Z3": lambda: gc.cyclic(3),
    "S3": gc.symmetric3,
    "Z2xZ2": gc.klein_four,
}


def random_artinian(rng: random.Random, max_length: int = 20):
    """Random Artinian monomial quotient of length <= max_length."""
    while True:
        n = rng.randint(1, 3)
        R = WeightedRing(tuple(rng.randint(1, 2) for _ in range(n)))
        gens = []
        for i in range(n):
            g = [0] * n
            g[i] = rng.randint(1, 4)
            gens.append(tuple(g))
        for _ in range(rng.randint(0, 3)):
            gens.append(tuple(rng.randint(0, 3) for _ in range(n)))
        M = GradedModule.quotient(R, MonIdeal(n, tuple(gens)))
        if M.is_zero():
            continue
        if module_length(R, M) <= max_length:
            return R, M


def wmod_corpus(seed: int, count: int = 100) -> list[tuple[str, InducedModule]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        name = rng.choice(sorted(W_GROUPS))
        W = W_GROUPS[name]()
        t = rng.randint(1, 4)
        R, M = random_artinian(rng)
        p = rng.choice([2, 3, 5])
        out.append((name, induced_from_quotient(W, t, R, M, p)))
    return out


def tensor_corpus(seed: int, count: int = 50):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        R, M = random_artinian(rng)
        V = [rng.randint(0, 3) for _ in range(rng.randint(1, 4))]
        out.append((R, M, V))
    return out
