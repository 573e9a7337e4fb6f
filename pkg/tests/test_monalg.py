import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quildeg.corpus import random_module, random_quotient
from quildeg.errors import CapacityExceeded, Divergent, NotArtinian, NotMinimalPrime, ZeroModule
from quildeg.monalg import (GradedModule, MonIdeal, MonPrime, MonRingMap, WeightedRing,
                            additivity_report, degree_of, dmax_primes, hilbert_brute,
                            hilbert_series, krull_dim, local_length, minimal_primes,
                            module_length, module_series, prime_degree, pullback_prime)
from quildeg.series import SeriesExpr, expand, normalize


def ring(names, weights=None):
    return WeightedRing(tuple(weights or [1] * len(names)), 2, tuple(names))


def quot(R, *monos):
    return GradedModule.quotient(R, MonIdeal.parse(R, monos))


def enumerate_standard(R, I, D):
    """Independent oracle: scan every exponent box up to the degree bound."""
    counts = [0] * (D + 1)
    ranges = [range(D // w + 1) for w in R.weights]
    for m in itertools.product(*ranges):
        d = R.wdeg(m)
        if d <= D and not any(all(a >= b for a, b in zip(m, g)) for g in I.gens):
            counts[d] += 1
    return counts


def covers_oracle(supports, n):
    """All subsets meeting every support, minimal under inclusion."""
    covers = [set(c) for k in range(n + 1) for c in itertools.combinations(range(n), k)
              if all(s & set(c) for s in supports)]
    return sorted(tuple(sorted(c)) for c in covers if not any(o < c for o in covers))


# -- hilbert_series / hilbert_brute ---------------------------------------------

def test_hilbert_series_examples():
    R = ring("x")
    assert hilbert_series(R, MonIdeal(1)) == SeriesExpr((1,), (1,))
    R = ring("xyw", [1, 1, 2])
    I = MonIdeal.parse(R, ["x*y"])
    assert hilbert_series(R, I) == SeriesExpr((1, 0, -1), (1, 1, 2))
    assert expand(hilbert_series(R, I), 12) == enumerate_standard(R, I, 12)
    R = ring("xy", [1, 2])
    I = MonIdeal.parse(R, ["x*y"])
    assert hilbert_series(R, I) == SeriesExpr((1, 0, 0, -1), (1, 2))
    assert expand(hilbert_series(R, I), 12) == enumerate_standard(R, I, 12)


@pytest.mark.parametrize("names,weights,gens,D,want", [
    ("x", [1], ["x^2"], 4, [1, 1, 0, 0, 0]),
    ("xy", [1, 1], ["x*y"], 3, [1, 2, 2, 2]),
    ("xy", [1, 2], [], 4, [1, 1, 2, 2, 3]),
])
def test_hilbert_brute_examples(names, weights, gens, D, want):
    R = ring(names, weights)
    I = MonIdeal.parse(R, gens)
    assert enumerate_standard(R, I, D) == want
    assert hilbert_brute(R, I, D) == want


def test_hilbert_brute_capacity():
    R = ring("abcdef")
    with pytest.raises(CapacityExceeded):
        hilbert_brute(R, MonIdeal(6), 20, bound=1000)


def test_unit_ideal():
    R = ring("xy")
    I = MonIdeal.parse(R, ["1"])
    assert hilbert_series(R, I).is_zero()
    assert hilbert_brute(R, I, 3) == [0, 0, 0, 0]
    with pytest.raises(ZeroModule):
        krull_dim(R, GradedModule.quotient(R, I))


def test_ideal_generators_are_minimalized():
    R = ring("xy")
    assert MonIdeal.parse(R, ["x*y", "x", "x^2*y"]).gens == ((1, 0),)


# -- dimension, primes, lengths ---------------------------------------------------

def test_krull_dim_examples():
    R = ring("xy")
    assert krull_dim(R, GradedModule.quotient(R, MonIdeal(2))) == 2
    assert krull_dim(R, quot(R, "x*y")) == 1
    assert krull_dim(R, quot(R, "x^2", "x*y")) == 1


def test_minimal_primes_examples():
    R = ring("xy")
    assert minimal_primes(R, quot(R, "x*y")) == [MonPrime((0,)), MonPrime((1,))]
    R3 = ring("xyz")
    I = MonIdeal.parse(R3, ["x*y", "x*z"])
    got = minimal_primes(R3, GradedModule.quotient(R3, I))
    assert [q.vars for q in got] == covers_oracle(I.supports(), 3) == [(0,), (1, 2)]
    assert minimal_primes(R, GradedModule.quotient(R, MonIdeal(2))) == [MonPrime(())]


def test_minimal_primes_of_direct_sum_use_the_annihilator():
    R = ring("xy")
    M = quot(R, "x") + quot(R, "y")
    assert minimal_primes(R, M) == [MonPrime((0,)), MonPrime((1,))]


def test_local_length_examples():
    R = ring("xy")
    assert local_length(R, quot(R, "x^2*y"), MonPrime((0,))) == 2
    assert local_length(R, quot(R, "x*y"), MonPrime((0,))) == 1
    assert local_length(R, GradedModule.quotient(R, MonIdeal(2)), MonPrime(())) == 1


def test_local_length_requires_minimal_prime():
    R = ring("xy")
    with pytest.raises(NotMinimalPrime):
        local_length(R, quot(R, "x*y"), MonPrime((0, 1)))


def test_local_length_divergent_bound():
    R = ring("xy")
    with pytest.raises(Divergent):
        local_length(R, quot(R, "x^5*y"), MonPrime((0,)), bound=3)


def test_module_length_examples():
    R = ring("x")
    assert module_length(R, quot(R, "x^3")) == 3
    R2 = ring("xy")
    assert module_length(R2, quot(R2, "x^2", "x*y", "y^2")) == 3
    assert module_length(R2, GradedModule(R2, ())) == 0
    with pytest.raises(NotArtinian):
        module_length(R2, quot(R2, "x*y"))


@pytest.mark.parametrize("weights,gens,want", [
    ([1, 1], ["x*y"], Fraction(2)),
    ([1, 2], ["x*y"], Fraction(3, 2)),
])
def test_degree_examples(weights, gens, want):
    R = ring("xy", weights)
    assert degree_of(R, quot(R, *gens)) == want


def test_degree_single_weight_two_variable():
    R = ring("y", [2])
    assert degree_of(R, GradedModule.quotient(R, MonIdeal(1))) == Fraction(1, 2)


def test_degree_zero_module():
    R = ring("x")
    with pytest.raises(ZeroModule):
        degree_of(R, quot(R, "1"))


def test_prime_degree_examples():
    assert prime_degree(ring("xy"), MonPrime((0,))) == 1
    assert prime_degree(ring("xy", [1, 2]), MonPrime((0,))) == Fraction(1, 2)
    assert prime_degree(ring("xy", [3, 2]), MonPrime((0, 1))) == 1


def test_dmax_examples():
    R = ring("xy")
    assert dmax_primes(R, quot(R, "x^2", "x*y")) == [MonPrime((0,))]
    R3 = ring("xyz")
    assert dmax_primes(R3, quot(R3, "x*y", "x*z")) == [MonPrime((0,))]
    assert dmax_primes(R, GradedModule.quotient(R, MonIdeal(2))) == [MonPrime(())]


@pytest.mark.parametrize("weights,gens,lhs,terms", [
    ([1, 1], ["x*y"], Fraction(2), [(1, Fraction(1)), (1, Fraction(1))]),
    ([1, 2], ["x*y"], Fraction(3, 2), [(1, Fraction(1, 2)), (1, Fraction(1))]),
    ([1, 1], ["x^2*y"], Fraction(3), [(2, Fraction(1)), (1, Fraction(1))]),
])
def test_additivity_curated(weights, gens, lhs, terms):
    R = ring("xy", weights)
    rep = additivity_report(R, quot(R, *gens))
    assert rep.lhs == lhs
    assert [(ln, pd) for _, ln, pd in rep.terms] == terms
    assert rep.rhs == lhs and rep.equal


# -- ring maps ---------------------------------------------------------------------

def test_pullback_examples():
    R = ring("xy")
    ident = MonRingMap(R, R, ((1, 0), (0, 1)))
    for q in [MonPrime(()), MonPrime((0,)), MonPrime((1,)), MonPrime((0, 1))]:
        assert pullback_prime(ident, q) == q
    S = ring("u", [2])
    T = ring("x", [1])
    f = MonRingMap(S, T, ((2,),))
    assert pullback_prime(f, MonPrime((0,))) == MonPrime((0,))
    src = ring("uv", [1, 2])
    g = MonRingMap(src, R, ((1, 0), (1, 1)))
    assert pullback_prime(g, MonPrime((1,))) == MonPrime((1,))


def test_pullback_with_zero_image():
    R = ring("xyw", [1, 1, 2])
    V = ring("st")
    f = MonRingMap(R, V, (None, (1, 0), (0, 2)))
    assert pullback_prime(f, MonPrime(())) == MonPrime((0,))


def test_map_must_be_graded():
    with pytest.raises(ValueError):
        MonRingMap(ring("u", [2]), ring("x"), ((1,),))


def test_pullback_contains_contraction_of_zero():
    rng = random.Random(7)
    for _ in range(30):
        src = WeightedRing(tuple(rng.randint(1, 2) for _ in range(3)))
        tgt = WeightedRing((1, 1, 1))
        images = []
        for w in src.weights:
            if rng.random() < 0.2:
                images.append(None)
                continue
            m = [0, 0, 0]
            for _ in range(w):
                m[rng.randrange(3)] += 1
            images.append(tuple(m))
        f = MonRingMap(src, tgt, tuple(images))
        I = MonIdeal(3, ((1, 1, 0), (0, 0, 2)))
        base = pullback_prime(f, MonPrime(()))
        for q in minimal_primes(tgt, GradedModule.quotient(tgt, I)):
            assert set(base.vars) <= set(pullback_prime(f, q).vars)


def test_monomial_parse_errors():
    R = ring("xy")
    with pytest.raises(ValueError):
        R.monomial("x*z")


# -- properties on random instances ------------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_hilbert_series_matches_brute_force(seed):
    R, I = random_quotient(random.Random(seed))
    assert expand(hilbert_series(R, I), 20) == hilbert_brute(R, I, 20)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_hilbert_brute_matches_box_scan(seed):
    R, I = random_quotient(random.Random(seed), max_vars=3)
    assert hilbert_brute(R, I, 10) == enumerate_standard(R, I, 10)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_minimal_primes_match_subset_oracle(seed):
    R, I = random_quotient(random.Random(seed))
    if I.is_unit():
        return
    got = [q.vars for q in minimal_primes(R, GradedModule.quotient(R, I))]
    assert got == covers_oracle(I.supports(), R.n)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_additivity_random_modules(seed):
    R, M = random_module(random.Random(seed))
    if M.is_zero():
        return
    assert additivity_report(R, M).equal


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_local_length_additive_over_direct_sums(seed):
    rng = random.Random(seed)
    R, I = random_quotient(rng, max_vars=4)
    _, J = random_quotient(rng, max_vars=R.n)
    if J.n != R.n:
        return
    M, N = GradedModule.quotient(R, I), GradedModule.quotient(R, J)
    if M.is_zero() or N.is_zero():
        return
    both = set(minimal_primes(R, M)) & set(minimal_primes(R, N)) & set(minimal_primes(R, M + N))
    for q in both:
        assert local_length(R, M + N, q) == local_length(R, M, q) + local_length(R, N, q)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.data())
def test_artinian_length_is_series_value_at_one(weights, data):
    n = len(weights)
    gens = []
    for i in range(n):
        g = [0] * n
        g[i] = data.draw(st.integers(1, 4))
        gens.append(tuple(g))
    gens += data.draw(st.lists(st.tuples(*[st.integers(0, 3)] * n), max_size=3))
    R = WeightedRing(tuple(weights))
    M = GradedModule.quotient(R, MonIdeal(n, tuple(gens)))
    s = normalize(module_series(M))
    assert s.denom_weights == ()
    assert module_length(R, M) == sum(s.numerator)
