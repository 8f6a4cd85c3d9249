import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockd import backend, kernels, set_backend, use_backend
from fockd._backend import HAVE_NUMBA, _noop_jit
from fockd.coxeter import generators

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not importable")


@pytest.mark.parametrize("family", ["A", "B", "D"])
@pytest.mark.parametrize("n", [1, 2, 3, 5, 6])
def test_bfs_backends_agree(family, n):
    gens = np.array([g.window for g in generators(family, n)]).reshape(-1, n)
    if gens.shape[0] == 0:
        return
    signed = family != "A"
    with use_backend("numba"):
        wa, la = kernels.bfs_lengths(gens, n, signed)
    with use_backend("numpy"):
        wb, lb = kernels.bfs_lengths(gens, n, signed)
    assert np.array_equal(wa, wb) and np.array_equal(la, lb)


@given(st.integers(1, 4), st.sampled_from(["identity", "diag:+,-", "swap"]), st.integers(0, 2**31))
def test_action_sum_backends_agree(n, inv, seed):
    from fockd.coxeter import enumerate_group
    from fockd.fock import parse_involution

    t = enumerate_group("D", n)
    rng = np.random.default_rng(seed)
    weights = rng.standard_normal(len(t))
    s = parse_involution(inv, 2)
    with use_backend("numba"):
        a = kernels.action_sum(t.windows, weights, s)
    with use_backend("numpy"):
        b = kernels.action_sum(t.windows, weights, s)
    assert np.allclose(a, b, atol=1e-12)


@given(st.integers(1, 7), st.data())
def test_encoding_is_injective_and_matches_scalar(n, data):
    perm = data.draw(st.permutations(list(range(1, n + 1))))
    signs = data.draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    w = np.array([[s * p for s, p in zip(signs, perm)]], dtype=np.int64)
    code = int(kernels.encode_windows(w)[0])
    assert code == int(kernels._encode_one(w[0]))
    assert 0 <= code < kernels.bfs_state_count(n)


def test_backend_switching():
    old = backend()
    with use_backend("numpy"):
        assert backend() == "numpy"
    assert backend() == old
    with pytest.raises(ValueError):
        set_backend("cuda")


def test_env_flag_selects_numpy():
    env = dict(os.environ, FOCKD_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", "import fockd; print(fockd.backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_noop_jit():
    f = lambda x: x + 1  # noqa: E731
    assert _noop_jit(f) is f
    assert _noop_jit(cache=True)(f) is f


def test_signed_generators_need_signed_mode():
    with pytest.raises(ValueError):
        kernels.bfs_lengths(np.array([[1, -2]]), 2, signed=False)
