import os
import random
import subprocess
import sys

import pytest

from quildeg import _accel, _kernels_py
from quildeg.corpus import random_quotient


def test_backend_is_reported():
    assert _accel.BACKEND in ("cython", "python")


def test_pure_env_var_selects_fallback():
    env = dict(os.environ, QUILDEG_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import quildeg; print(quildeg.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@pytest.mark.skipif(_accel.BACKEND != "cython", reason="compiled kernels not built")
def test_compiled_count_matches_fallback():
    from quildeg import _kernels
    rng = random.Random(11)
    for _ in range(100):
        R, I = random_quotient(rng)
        a = _kernels.count_standard(I.gens, R.weights, 15, 10**7)
        b = _kernels_py.count_standard(I.gens, R.weights, 15, 10**7)
        assert list(a[0]) == list(b[0])


@pytest.mark.skipif(_accel.BACKEND != "cython", reason="compiled kernels not built")
def test_compiled_rank_matches_fallback():
    from quildeg import _kernels
    rng = random.Random(5)
    for _ in range(100):
        r, c, p = rng.randint(1, 7), rng.randint(1, 7), rng.choice([2, 3, 5])
        rows = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(r)]
        assert _kernels.rank_mod_p(rows, c, p) == _kernels_py.rank_mod_p(rows, c, p)


def test_capacity_reported():
    counts, visited = _kernels_py.count_standard((), (1, 1, 1), 30, 50)
    assert counts is None and visited > 50


@pytest.mark.parametrize("rows,ncols,p,want", [
    ([[1, 1], [1, 1]], 2, 2, 1),
    ([[1, 2], [2, 1]], 2, 3, 1),
    ([[1, 2], [2, 1]], 2, 5, 2),
    ([], 3, 2, 0),
])
def test_rank_examples(rows, ncols, p, want):
    assert _kernels_py.rank_mod_p(rows, ncols, p) == want
    assert _accel.rank_mod_p(rows, ncols, p) == want
