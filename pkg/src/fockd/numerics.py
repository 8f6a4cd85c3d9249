"""Exact polynomials in q and the small dense linear-algebra kernel.

Integer polynomials are exact (Python ints); operator matrices are plain
``numpy`` complex arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


class IntPolynomial:
    """Polynomial in ``q`` with arbitrary-precision integer coefficients.

    ``coeffs[k]`` is the coefficient of ``q**k``. Trailing zeros are stripped,
    so the zero polynomial has ``coeffs == ()``.

    >>> IntPolynomial([1, 1]) * IntPolynomial([1, 1])
    IntPolynomial([1, 2, 1])
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = []
        for a in coeffs:
            if isinstance(a, float) and not a.is_integer():
                raise ValueError(f"non-integer coefficient {a!r}")
            c.append(int(a))
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def monomial(cls, k: int, coeff: int = 1) -> "IntPolynomial":
        return cls([0] * k + [coeff])

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def __call__(self, q):
        # Horner's rule; works for int, Fraction, float, complex
        acc = 0
        for a in reversed(self._c):
            acc = acc * q + a
        return acc

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __add__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        res = list(a)
        for i, x in enumerate(b):
            res[i] += x
        return IntPolynomial(res)

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial([-a for a in self._c])

    def __sub__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([a * other for a in self._c])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        res, base = IntPolynomial([1]), self
        while k:
            if k & 1:
                res = res * base
            base = base * base
            k >>= 1
        return res

    def __repr__(self):
        return f"IntPolynomial({list(self._c)})"

    def __str__(self):
        if not self._c:
            return "0"
        terms = []
        for k, a in enumerate(self._c):
            if a == 0:
                continue
            mon = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mon and a in (1, -1):
                s = ("-" if a < 0 else "") + mon
            else:
                s = f"{a}{'*' + mon if mon else ''}"
            terms.append(s)
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> list:
        """Decimal-string coefficients, lowest degree first."""
        return [str(a) for a in self._c] if self._c else ["0"]

    @classmethod
    def from_json(cls, data) -> "IntPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(s) for s in data)


def qnumber(n: int) -> IntPolynomial:
    """The q-number ``[n]_q = 1 + q + ... + q**(n-1)``."""
    if n < 1:
        raise ValueError(f"q-number needs n >= 1, got {n}")
    return IntPolynomial([1] * n)


def poly_mul(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Exact convolution product."""
    ca, cb = a.coeffs, b.coeffs
    if not ca or not cb:
        return IntPolynomial()
    res = [0] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        if x:
            for j, y in enumerate(cb):
                res[i + j] += x * y
    return IntPolynomial(res)


def poly_product(polys: Iterable[IntPolynomial]) -> IntPolynomial:
    acc = IntPolynomial([1])
    for p in polys:
        acc = poly_mul(acc, p)
    return acc


def exponent_sum_to_poly(terms: dict) -> IntPolynomial:
    """Collect ``{exponent: coefficient}`` into an IntPolynomial.

    Coefficients must be integral (ints, integral Fractions, or complex/float
    values within 1e-9 of an integer with zero imaginary part).
    """
    deg = max(terms, default=-1)
    c = [0] * (deg + 1)
    for k, v in terms.items():
        c[k] += _as_int(v)
    return IntPolynomial(c)


def _as_int(v) -> int:
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        if v.denominator != 1:
            raise ValueError(f"non-integral coefficient {v}")
        return int(v)
    z = complex(v)
    r = round(z.real)
    if abs(z.imag) > 1e-9 or abs(z.real - r) > 1e-9:
        raise ValueError(f"non-integral coefficient {v}")
    return int(r)


# ---------------------------------------------------------------------------
# floating point


@dataclass(frozen=True)
class Tolerance:
    abs_eps: float = 1e-10
    rel_eps: float = 1e-9

    def __post_init__(self):
        if not (self.abs_eps > 0 and self.rel_eps > 0):
            raise ValueError("tolerances must be strictly positive")


DEFAULT_TOL = Tolerance()


class NotHermitianError(ValueError):
    pass


def max_asymmetry(m: np.ndarray) -> float:
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def hermitian_eigh(m: np.ndarray, tol: Tolerance = DEFAULT_TOL):
    """Eigen-decomposition of a Hermitian matrix, ascending eigenvalues.

    Raises :class:`NotHermitianError` when ``max|m - m^H|`` exceeds
    ``tol.abs_eps`` and ``RuntimeError`` when the reconstruction residual
    exceeds ``tol.rel_eps * ||m||``.
    """
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"square matrix required, got shape {m.shape}")
    asym = max_asymmetry(m)
    if asym > tol.abs_eps:
        raise NotHermitianError(f"matrix is not Hermitian: max |m - m^H| = {asym:.3e}")
    h = 0.5 * (m + m.conj().T)
    vals, vecs = np.linalg.eigh(h)
    scale = max(np.linalg.norm(m, 2), 1.0) if m.size else 1.0
    resid = np.linalg.norm(vecs @ np.diag(vals) @ vecs.conj().T - m, 2) if m.size else 0.0
    if resid > tol.rel_eps * scale:
        raise RuntimeError(f"eigen-decomposition residual {resid:.3e} too large")
    return vals, vecs


def hermitian_eigenvalues(m: np.ndarray, tol: Tolerance = DEFAULT_TOL) -> list:
    vals, _ = hermitian_eigh(m, tol)
    return [float(v) for v in vals]


def psd_sqrt(m: np.ndarray, inverse: bool = False, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Principal square root (or inverse square root) of a positive definite matrix."""
    vals, vecs = hermitian_eigh(m, tol)
    if inverse:
        if vals[0] <= 0:
            raise ValueError(f"matrix is not positive definite (min eigenvalue {vals[0]:.3e})")
        f = 1.0 / np.sqrt(vals)
    else:
        f = np.sqrt(np.clip(vals, 0.0, None))
    return (vecs * f) @ vecs.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product, left factor on the slow index."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    acc = np.ones((1, 1), dtype=np.complex128)
    for m in mats:
        acc = np.kron(acc, m)
    return acc


def adjoint(m: np.ndarray) -> np.ndarray:
    return np.asarray(m).conj().T
