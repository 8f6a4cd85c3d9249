"""Jacobi parameters, orthogonal polynomials and moments of the type-D Gaussian law.

The law has ``beta_n = 0``, ``gamma_0 = 1`` and ``gamma_{n-1} = [n]_q (1 + q**(n-1))``
for ``n >= 2``. Everything here is exact in ``q`` except the truncated
Jacobi-matrix spectrum, which is a numerical window only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numerics import IntPolynomial, hermitian_eigh, poly_product, qnumber

MAX_MOMENT_ORDER = 16
DEFAULT_TRUNCATION = 40


@dataclass(frozen=True)
class JacobiParams:
    betas: tuple
    gammas: tuple  # IntPolynomial entries

    def gammas_at(self, q: float) -> np.ndarray:
        return np.array([float(g(q)) for g in self.gammas])


def gamma(i: int) -> IntPolynomial:
    if i < 0:
        raise ValueError("gamma index must be >= 0")
    if i == 0:
        return IntPolynomial([1])
    n = i + 1
    return qnumber(n) * (IntPolynomial([1]) + IntPolynomial.monomial(n - 1))


def jacobi_params(count: int) -> JacobiParams:
    if count < 1:
        raise ValueError("count must be >= 1")
    return JacobiParams((0,) * count, tuple(gamma(i) for i in range(count)))


def type_b_gamma(i: int) -> IntPolynomial:
    """Jacobi parameters of the type-B Gaussian with ``alpha = 1``: ``gamma'_0 = 2``."""
    n = i + 1
    return qnumber(n) * (IntPolynomial([1]) + IntPolynomial.monomial(n - 1))


def gamma_product(n: int) -> IntPolynomial:
    return poly_product(gamma(i) for i in range(n))


# polynomials in t with IntPolynomial coefficients: list index = power of t


def _tpoly_sub(a: list, b: list) -> list:
    out = list(a) + [IntPolynomial()] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = out[i] - c
    return out


def polynomial_sequence(count: int) -> list:
    """Monic ``P_0..P_{count-1}`` from ``t P_n = P_{n+1} + gamma_{n-1} P_{n-1}``."""
    if count < 1:
        raise ValueError("count must be >= 1")
    one = IntPolynomial([1])
    seq = [[one], [IntPolynomial(), one]]
    while len(seq) < count:
        n = len(seq) - 1
        shifted = [IntPolynomial()] + seq[n]
        g = gamma(n - 1)
        seq.append(_tpoly_sub(shifted, [g * c for c in seq[n - 1]]))
    return seq[:count]


def evaluate_tpoly(p: list, t: float, q: float) -> float:
    acc = 0.0
    for c in reversed(p):
        acc = acc * t + c(q)
    return acc


def tpoly_to_str(p: list) -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if c.is_zero():
            continue
        mon = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        cs = str(c)
        if mon and cs == "1":
            terms.append(mon)
        elif mon and cs == "-1":
            terms.append("-" + mon)
        else:
            terms.append(f"({cs})*{mon}" if mon else cs)
    return " + ".join(terms).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class MomentTable:
    order: int
    moments: tuple  # IntPolynomial per degree 0..order

    def rows(self):
        for k, m in enumerate(self.moments):
            yield k, m


def moments_from_jacobi(order: int, gammas=None) -> MomentTable:
    """Exact moments ``m_0..m_order`` by summing weighted Dyck paths.

    A down step from height ``h`` carries ``gamma_{h-1}``. Custom ``gammas``
    (a sequence of IntPolynomial) may be passed to reuse the recursion.
    """
    if order < 0 or order > MAX_MOMENT_ORDER:
        raise ValueError(f"order must be in 0..{MAX_MOMENT_ORDER}")
    depth = order // 2 + 1
    g = list(gammas) if gammas is not None else [gamma(i) for i in range(depth)]
    zero = IntPolynomial()
    weights = [IntPolynomial([1])] + [zero] * depth
    moments = [IntPolynomial([1])]
    for _ in range(order):
        nxt = [zero] * (depth + 1)
        for h, w in enumerate(weights):
            if w.is_zero():
                continue
            if h + 1 <= depth:
                nxt[h + 1] = nxt[h + 1] + w
            if h >= 1:
                nxt[h - 1] = nxt[h - 1] + g[h - 1] * w
        weights = nxt
        moments.append(weights[0])
    return MomentTable(order, tuple(moments))


def jacobi_matrix(q: float, size: int = DEFAULT_TRUNCATION) -> np.ndarray:
    if not -1.0 < q < 1.0:
        raise ValueError("spectral window needs |q| < 1")
    if size < 1:
        raise ValueError("size must be >= 1")
    g = np.array([float(gamma(i)(q)) for i in range(size - 1)])
    if np.any(g < 0):
        raise ValueError("negative Jacobi parameter")
    off = np.sqrt(g)
    return np.diag(off, 1) + np.diag(off, -1)


def gauss_quadrature(q: float, size: int = DEFAULT_TRUNCATION):
    """Nodes and weights of the ``size``-point Gauss rule of the law (heuristic window)."""
    vals, vecs = hermitian_eigh(jacobi_matrix(q, size).astype(np.complex128))
    weights = np.abs(vecs[0, :]) ** 2
    return vals, weights


def spectrum_approx(q: float, size: int = DEFAULT_TRUNCATION) -> np.ndarray:
    """Eigenvalues (ascending) of the truncated Jacobi matrix."""
    return gauss_quadrature(q, size)[0]


def quadrature_moment(k: int, q: float, size: int = DEFAULT_TRUNCATION) -> float:
    nodes, weights = gauss_quadrature(q, size)
    return float(np.sum(weights * nodes ** k))


def catalan(k: int) -> int:
    from math import comb

    return comb(2 * k, k) // (k + 1)
