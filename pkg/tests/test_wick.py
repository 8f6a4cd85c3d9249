import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockd.fock import FockTruncation, HilbertSpaceSpec, random_vectors
from fockd.numerics import IntPolynomial
from fockd.partitions import CapError, EpsilonPattern
from fockd.spectral import catalan, moments_from_jacobi
from fockd.wick import (
    WickQuery,
    gaussian_moment_exact,
    oracle_vacuum,
    q_one_pair_sum,
    traciality_defect,
    traciality_defect_formula,
    wick_identity_involution,
    wick_oracle,
    wick_vacuum,
    wick_vector,
)

from oracles import all_pairings, is_noncrossing

SPACES = [HilbertSpaceSpec(2, "identity"), HilbertSpaceSpec(2, "diag:+,-"), HilbertSpaceSpec(2, "swap")]
eps_strings = st.integers(0, 5).flatmap(lambda n: st.text(alphabet="1*", min_size=n, max_size=n))


def ip(a, b):
    return np.vdot(a, b)


def test_single_operators():
    sp = HilbertSpaceSpec(2)
    x = np.array([[1 + 1j, 2]])
    assert wick_vector(WickQuery(0.3, x, "1", sp)).terms == []
    r = wick_vector(WickQuery(0.3, x, "*", sp))
    assert r.level == 1 and np.allclose(r.to_vector(WickQuery(0.3, x, "*", sp)), x[0])


def test_two_annihilators_two_creators_example():
    sp = HilbertSpaceSpec(2, "diag:+,-")
    q = 0.35
    x = random_vectors(4, 2, 9)
    bar = sp.bar
    expect = (q * ip(x[0], x[2]) * ip(x[1], x[3]) + q * ip(x[0], bar(x[2])) * ip(x[1], bar(x[3]))
              + ip(x[0], x[3]) * ip(x[1], x[2]) + q ** 2 * ip(x[0], bar(x[3])) * ip(x[1], bar(x[2])))
    query = WickQuery(q, x, "11**", sp)
    res = wick_vector(query)
    assert res.level == 0
    assert np.isclose(res.to_vector(query)[0], expect)
    assert {(t.partition.to_text(), t.weight_exponent) for t in res.terms} == {
        ("1-3:+|2-4:+", 1), ("1-3:-|2-4:-", 1), ("1-4:+|2-3:+", 0), ("1-4:-|2-3:-", 2)}
    assert np.isclose(wick_vacuum(query).value, expect)
    assert np.isclose(oracle_vacuum(query), expect)


@given(eps_strings, st.sampled_from([-0.6, 0.0, 0.4, 0.8]), st.sampled_from(SPACES), st.integers(0, 2**31))
def test_vector_formula_equals_oracle(eps, q, space, seed):
    n = len(eps)
    x = random_vectors(n, 2, seed)
    query = WickQuery(q, x, eps, space)
    tr = FockTruncation(space, max(n, 1), q)
    diff = (wick_oracle(query, tr) - wick_vector(query).to_state(query, tr)).max_abs()
    assert diff <= 1e-9


@pytest.mark.parametrize("space", SPACES[:2])
@pytest.mark.parametrize("q", [-0.5, 0.3, 0.7])
def test_gaussian_word_vacuum_vs_oracle_up_to_eight(space, q):
    for n in range(0, 9):
        x = random_vectors(n, 2, 100 + n)
        query = WickQuery(q, x, None, space)
        assert abs(wick_vacuum(query).value - oracle_vacuum(query)) <= 1e-9 * max(1.0, abs(oracle_vacuum(query)))


def test_odd_words_vanish():
    for n in (1, 3, 5):
        assert wick_vacuum(WickQuery(0.5, np.ones((n, 1)))).value == 0


def test_catalan_at_q_zero_from_pairings():
    for k in range(1, 6):
        count = sum(is_noncrossing(m) for m in all_pairings(list(range(2 * k))))
        assert gaussian_moment_exact(2 * k)(0) == count == catalan(k)


def test_exact_moments_equal_jacobi():
    table = moments_from_jacobi(10)
    for k in range(6):
        assert gaussian_moment_exact(2 * k) == table.moments[2 * k]
    sp = HilbertSpaceSpec(2, "diag:+,-")
    # the negative eigenvector gives the same law
    assert gaussian_moment_exact(6, sp, basis_index=1) == table.moments[6]


def test_q_one_pair_sum():
    assert q_one_pair_sum(4) == 5 == gaussian_moment_exact(4)(1)
    assert q_one_pair_sum(6) == gaussian_moment_exact(6)(1)
    assert q_one_pair_sum(3) == 0


def test_exact_mode_needs_integral_products():
    with pytest.raises(ValueError):
        wick_vacuum(WickQuery(0.2, np.full((2, 1), 0.5)), exact=True)


def test_traciality_defect():
    e = np.eye(2)
    sp = HilbertSpaceSpec(2, "identity")
    assert traciality_defect([e[0], e[0], e[1], e[1]], sp, 0.0, exact=True) == IntPolynomial([0, 0, -1])
    sd = HilbertSpaceSpec(2, "diag:+,-")
    assert traciality_defect([e[0], e[0], e[1], e[1]], sd, 0.0, exact=True) == IntPolynomial([0, 0, 1])


@given(st.sampled_from([-0.7, 0.0, 0.45]), st.sampled_from(SPACES[:2]), st.integers(0, 2**31))
def test_traciality_defect_formula_real_vectors(q, space, seed):
    x = np.random.default_rng(seed).standard_normal((4, 2))
    assert np.isclose(traciality_defect(x, space, q), traciality_defect_formula(x, space, q), atol=1e-10)


def test_moment_symmetry_under_involution():
    sp = HilbertSpaceSpec(2, "swap")
    x = random_vectors(6, 2, 2)
    a = wick_vacuum(WickQuery(0.4, x, None, sp)).value
    b = wick_vacuum(WickQuery(0.4, (sp.involution @ x.T).T, None, sp)).value
    assert np.isclose(a, b)


@given(st.integers(0, 2**31), st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_linearity_types(seed, c):
    sp = HilbertSpaceSpec(2, "diag:+,-")
    x = random_vectors(4, 2, seed)
    base = wick_vacuum(WickQuery(0.3, x, "1*1*", sp)).value
    xa, xc = x.copy(), x.copy()
    xa[0] *= c  # annihilation slot: conjugate-linear
    xc[1] *= c  # creation slot: linear
    assert np.isclose(wick_vacuum(WickQuery(0.3, xa, "1*1*", sp)).value, np.conj(c) * base, atol=1e-9)
    assert np.isclose(wick_vacuum(WickQuery(0.3, xc, "1*1*", sp)).value, c * base, atol=1e-9)


@given(eps_strings, st.sampled_from([-1.0, -0.6, 0.0, 0.4, 1.0]), st.integers(0, 2**31), st.booleans())
def test_identity_involution_form(eps, q, seed, real):
    n = len(eps)
    sp = HilbertSpaceSpec(2)
    x = np.random.default_rng(seed).standard_normal((n, 2)) if real else random_vectors(n, 2, seed)
    query = WickQuery(q, x, eps, sp)
    a = wick_vector(query).to_vector(query)
    b = wick_identity_involution(query).to_vector(query)
    assert np.allclose(a, b, atol=1e-9)


def test_identity_involution_rejects_other_involutions():
    with pytest.raises(ValueError):
        wick_identity_involution(WickQuery(0.1, np.ones((2, 2)), "1*", HilbertSpaceSpec(2, "swap")))


def test_identity_involution_at_q_zero_counts_noncrossing_pairings():
    sp = HilbertSpaceSpec(1)
    for k in range(1, 5):
        pattern = "1" * k + "*" * k
        query = WickQuery(0.0, np.ones((2 * k, 1)), pattern, sp)
        v = wick_identity_involution(query).to_vector(query)[0]
        assert np.isclose(v, 1.0)  # only the fully nested pairing survives


def test_query_validation():
    with pytest.raises(ValueError):
        WickQuery(1.5, np.ones((1, 1)))
    with pytest.raises(ValueError):
        WickQuery(0.1, np.ones((2, 1)), "1")
    with pytest.raises(ValueError):
        wick_oracle(WickQuery(1.0, np.ones((2, 1)), "1*"), FockTruncation(HilbertSpaceSpec(1), 2, 0.5))
    with pytest.raises(CapError):
        wick_vector(WickQuery(0.1, np.ones((11, 1)), "1" * 11))


def test_explain_terms_json():
    res = wick_vacuum(WickQuery(0.5, np.ones((2, 1)), None, HilbertSpaceSpec(1)), exact=True)
    assert res.to_json(explain=True) == {
        "poly": ["1"], "value": [1.0, 0.0],
        "terms": [{"partition": "1-2:+", "exponent": 0, "scalar": [1.0, 0.0]}],
    }


def test_all_patterns_level_bookkeeping():
    sp = HilbertSpaceSpec(1)
    for eps in itertools.product("1*", repeat=4):
        res = wick_vector(WickQuery(0.2, np.ones((4, 1)), "".join(eps), sp))
        for t in res.terms:
            assert len(t.partition.base.singletons) == res.level
