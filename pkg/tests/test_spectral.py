import numpy as np
import pytest

from fockd.coxeter import product_formula, enumerate_group, poincare_polynomial
from fockd.numerics import IntPolynomial
from fockd.spectral import (
    catalan,
    evaluate_tpoly,
    gamma,
    gamma_product,
    gauss_quadrature,
    jacobi_matrix,
    jacobi_params,
    moments_from_jacobi,
    polynomial_sequence,
    quadrature_moment,
    spectrum_approx,
    tpoly_to_str,
    type_b_gamma,
)


def test_gammas():
    assert gamma(0) == IntPolynomial([1])
    assert gamma(1) == IntPolynomial([1, 2, 1])
    assert gamma(2) == IntPolynomial([1, 1, 1]) * IntPolynomial([1, 0, 1])
    jp = jacobi_params(5)
    assert jp.betas == (0,) * 5
    assert all(v > 0 for v in jp.gammas_at(-0.95))
    with pytest.raises(ValueError):
        jacobi_params(0)


def test_t_transform_relation():
    assert type_b_gamma(0) == IntPolynomial([2])
    assert all(type_b_gamma(i) == gamma(i) for i in range(1, 8))


def test_polynomials():
    p = polynomial_sequence(5)
    assert tpoly_to_str(p[2]) == "t^2 - 1"
    assert p[3][1] == -(IntPolynomial([1]) + IntPolynomial([1, 1]) ** 2)
    assert tpoly_to_str(polynomial_sequence(2)[1]) == "t"
    # q = 0: monic Chebyshev of the second kind on [-2, 2]
    for n in range(5):
        for t in (-1.3, 0.4, 1.7):
            th = np.arccos(t / 2)
            assert np.isclose(evaluate_tpoly(p[n], t, 0.0), np.sin((n + 1) * th) / np.sin(th))


def test_polynomials_are_orthogonal_under_quadrature():
    q = 0.45
    nodes, weights = gauss_quadrature(q, 30)
    p = polynomial_sequence(6)
    vals = np.array([[evaluate_tpoly(pk, t, q) for t in nodes] for pk in p])
    gram = (vals * weights) @ vals.T
    norms = [float(gamma_product(k)(q)) for k in range(6)]
    assert np.allclose(gram, np.diag(norms), atol=1e-8)


def test_moments():
    m = moments_from_jacobi(8).moments
    assert m[0] == IntPolynomial([1]) and m[2] == IntPolynomial([1])
    assert m[4] == IntPolynomial([2, 2, 1])
    assert all(m[k].is_zero() for k in (1, 3, 5, 7))
    assert m[4](1) == 5
    assert [moments_from_jacobi(12).moments[2 * k](0) for k in range(7)] == [catalan(k) for k in range(7)]
    with pytest.raises(ValueError):
        moments_from_jacobi(17)


def test_moment_recursion_equals_matrix_power():
    q = -0.35
    j = jacobi_matrix(q, 10)
    m = moments_from_jacobi(16).moments
    for k in range(0, 17, 2):
        assert np.isclose(np.linalg.matrix_power(j, k)[0, 0], float(m[k](q)))


@pytest.mark.parametrize("n", range(1, 7))
def test_gamma_product_is_poincare(n):
    assert gamma_product(n) == poincare_polynomial(enumerate_group("D", n)) == product_formula(n)


def test_spectrum_window():
    ev = spectrum_approx(0.0, 40)
    assert ev.min() >= -2 - 1e-6 and ev.max() <= 2 + 1e-6
    for q in (-0.6, 0.5, 0.9):
        ev = spectrum_approx(q, 40)
        assert np.allclose(np.sort(ev), -np.sort(ev)[::-1], atol=1e-10)
    with pytest.raises(ValueError):
        spectrum_approx(1.0)


def test_quadrature_moments():
    exact = moments_from_jacobi(6).moments
    for k in (2, 4, 6):
        assert abs(quadrature_moment(k, 0.5, 40) - float(exact[k](0.5))) <= 1e-8
