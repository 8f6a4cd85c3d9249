"""Type-D Wick formulas: combinatorial sums over colored partitions and the operator oracle.

A word ``d^{eps_1}(x_1) ... d^{eps_n}(x_n)`` applied to the vacuum expands over
epsilon-compatible type-D colored partitions. A pair ``{i < j}`` contributes
``<x_i, x_j>`` when positive and ``<x_i, bar x_j>`` when negative. The
singletons, read left to right, form the surviving tensor, and the rightmost
one is barred when its color is negative.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from dataclasses import dataclass, field

import numpy as np

from .fock import (
    FockState,
    FockTruncation,
    HilbertSpaceSpec,
    annihilation,
    creation,
    integer_gram,
)
from .numerics import IntPolynomial, exponent_sum_to_poly, kron_all
from .partitions import (
    ANNIHILATE,
    CAP_COLORED,
    ColoredPartition,
    CapError,
    EpsilonPattern,
    compute_stats,
    iter_partitions_12,
    iter_type_d_colorings,
)

log = logging.getLogger(__name__)

# pair-only sums stay cheap further out than general colored listings
CAP_PAIRS = 12


@dataclass
class WickQuery:
    q: float
    vectors: np.ndarray
    eps: EpsilonPattern | None = None
    space: HilbertSpaceSpec | None = None

    def __post_init__(self):
        if not -1.0 <= self.q <= 1.0:
            raise ValueError(f"q must lie in [-1, 1], got {self.q}")
        self.vectors = np.atleast_2d(np.asarray(self.vectors, dtype=np.complex128))
        if self.vectors.size == 0:
            self.vectors = self.vectors.reshape(0, self.space.dim if self.space else 1)
        if self.space is None:
            self.space = HilbertSpaceSpec(self.vectors.shape[1])
        if self.vectors.shape[1] != self.space.dim:
            raise ValueError(f"vectors have dimension {self.vectors.shape[1]}, space has {self.space.dim}")
        if isinstance(self.eps, str):
            self.eps = EpsilonPattern.parse(self.eps)
        if self.eps is not None and len(self.eps) != self.n:
            raise ValueError(f"{self.n} vectors but epsilon pattern of length {len(self.eps)}")

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


@dataclass(frozen=True)
class WickTerm:
    partition: ColoredPartition
    weight_exponent: int
    scalar: complex

    def to_json(self) -> dict:
        return {
            "partition": self.partition.to_text(),
            "exponent": self.weight_exponent,
            "scalar": [float(self.scalar.real), float(self.scalar.imag)],
        }


@dataclass
class VectorWickResult:
    """Symbolic state: ``components[(singletons, bar_last)]`` is a polynomial-weighted coefficient.

    ``singletons`` lists the vector indices (1-based) forming the tensor in
    slot order; ``bar_last`` marks the involution on the last slot.
    """

    q: float
    level: int
    terms: list = field(default_factory=list)

    @property
    def components(self) -> dict:
        out: dict = {}
        for t in self.terms:
            key = _singleton_key(t.partition)
            out[key] = out.get(key, 0j) + t.scalar * self.q ** t.weight_exponent
        return out

    def to_vector(self, query: WickQuery) -> np.ndarray:
        d = query.space.dim
        vec = np.zeros(d ** self.level, dtype=np.complex128)
        for (sing, bar_last), c in self.components.items():
            factors = [query.vectors[i - 1] for i in sing]
            if bar_last:
                factors[-1] = query.space.bar(factors[-1])
            vec += c * kron_all([f.reshape(-1, 1) for f in factors]).reshape(-1)
        return vec

    def to_state(self, query: WickQuery, trunc: FockTruncation) -> FockState:
        if self.level > trunc.max_level:
            state = FockState.zeros(trunc)
            if self.terms:
                from .fock import TruncationOverflow

                raise TruncationOverflow(f"result lives on level {self.level} > max_level {trunc.max_level}")
            return state
        return FockState.at_level(trunc, self.level, self.to_vector(query))


@dataclass
class VacuumWickResult:
    value: complex
    poly: IntPolynomial | None
    terms: list

    def to_json(self, explain: bool = False) -> dict:
        out: dict = {}
        if self.poly is not None:
            out["poly"] = self.poly.to_json()
        out["value"] = [float(self.value.real), float(self.value.imag)]
        if explain:
            out["terms"] = [t.to_json() for t in self.terms]
        return out


def _singleton_key(p: ColoredPartition):
    sing = [(b[0], c) for b, c in zip(p.blocks, p.colors) if len(b) == 1]
    sing.sort()
    return tuple(s for s, _ in sing), bool(sing) and sing[-1][1] == -1


def _colored_terms(base, vector_form: bool):
    """Yield ``(colors, exponent)`` for every type-D coloring of ``base``.

    The base statistics are computed once; a negative pair adds twice its
    cover count and, in the vector form, twice its strict-right singletons.
    """
    st = compute_stats(base)
    fixed = st.cr + (st.cs if vector_form else 0)
    per_block = [2 * st.cover[i] + (2 * st.ssr[i] if vector_form else 0) for i in range(len(base.blocks))]
    for colors in iter_type_d_colorings(base):
        extra = sum(per_block[i] for i, (b, c) in enumerate(zip(base.blocks, colors)) if c == -1 and len(b) == 2)
        yield colors, fixed + extra


def _pair_scalar(query: WickQuery, blocks, colors, plain, barred) -> complex:
    s = 1 + 0j
    for b, c in zip(blocks, colors):
        if len(b) == 2:
            s *= (plain if c == 1 else barred)[b[0] - 1, b[1] - 1]
    return s


def _grams(query: WickQuery):
    x = query.vectors
    plain = np.conj(x) @ x.T
    barred = np.conj(x) @ (query.space.involution @ x.T)
    return plain, barred


def wick_vector(query: WickQuery, cap: int = CAP_COLORED) -> VectorWickResult:
    """Combinatorial value of ``d^{eps_1}(x_1) ... d^{eps_n}(x_n) Omega``."""
    if query.eps is None:
        raise ValueError("wick_vector needs an epsilon pattern")
    n = query.n
    if n > cap:
        raise CapError(f"n = {n} exceeds the colored enumeration cap {cap}")
    level = sum(1 for s in query.eps.symbols if s != ANNIHILATE) - sum(1 for s in query.eps.symbols if s == ANNIHILATE)
    plain, barred = _grams(query)
    res = VectorWickResult(query.q, max(level, 0))
    for base in iter_partitions_12(n, eps=query.eps):
        for colors, k in _colored_terms(base, vector_form=True):
            p = ColoredPartition(base, colors)
            term = WickTerm(p, k, _pair_scalar(query, base.blocks, colors, plain, barred))
            log.debug("term %s q^%d scalar %s", p.to_text(), k, term.scalar)
            res.terms.append(term)
    return res


def wick_vacuum(query: WickQuery, exact: bool = False, cap: int = CAP_PAIRS) -> VacuumWickResult:
    """``<Omega, word Omega>``; the Gaussian word ``G(x_1)...G(x_n)`` when no pattern is given.

    With ``exact=True`` the inner products must be integers and the result
    carries an exact polynomial in ``q``.
    """
    n = query.n
    if n > cap:
        raise CapError(f"n = {n} exceeds the pair-partition cap {cap}")
    plain, barred = _grams(query)
    ints = None
    if exact:
        ints = integer_gram(query.space, query.vectors, query.vectors)
        if ints is None:
            raise ValueError("exact mode needs integral inner products (basis eigenvectors of the involution)")
    terms = []
    coeffs: dict = {}
    if n % 2 == 0:
        for base in iter_partitions_12(n, pairs_only=True, eps=query.eps):
            for colors, k in _colored_terms(base, vector_form=False):
                scalar = _pair_scalar(query, base.blocks, colors, plain, barred)
                terms.append(WickTerm(ColoredPartition(base, colors), k, scalar))
                if ints is not None:
                    coeffs[k] = coeffs.get(k, 0) + int(_pair_scalar(query, base.blocks, colors, *ints).real)
    value = sum((t.scalar * query.q ** t.weight_exponent for t in terms), 0j)
    poly = exponent_sum_to_poly(coeffs) if exact else None
    return VacuumWickResult(complex(value), poly, terms)


def wick_identity_involution(query: WickQuery, cap: int = CAP_COLORED) -> VectorWickResult:
    """Uncolored form of :func:`wick_vector`, valid when the involution is the identity.

    Each uncolored partition carries
    ``2**-outsr * q**(Cr + cs) * prod_pairs (1 + q**(2 cover + 2 ssr))``.
    The returned terms use the all-positive coloring as a label and fold the
    weight into ``scalar`` with exponent 0.
    """
    if query.eps is None:
        raise ValueError("an epsilon pattern is required")
    if not np.array_equal(query.space.involution, np.eye(query.space.dim)):
        raise ValueError("the uncolored reformulation needs the identity involution")
    if query.n > cap:
        raise CapError(f"n = {query.n} exceeds the enumeration cap {cap}")
    q = query.q
    plain, _ = _grams(query)
    level = max(0, sum(1 if s != ANNIHILATE else -1 for s in query.eps.symbols))
    res = VectorWickResult(q, level)
    for base in iter_partitions_12(query.n, eps=query.eps):
        st = compute_stats(base)
        w = 2.0 ** (-st.outsr) * q ** (st.cr + st.cs)
        for i, b in enumerate(base.blocks):
            if len(b) == 2:
                w *= (1 + q ** (2 * st.cover[i] + 2 * st.ssr[i])) * plain[b[0] - 1, b[1] - 1]
        res.terms.append(WickTerm(ColoredPartition(base, (1,) * len(base.blocks)), 0, complex(w)))
    return res


def q_one_pair_sum(n: int) -> int:
    """``sum_pi 2**(m - out(pi))`` over pair partitions of ``[n]`` with ``m = n/2``."""
    if n % 2:
        return 0
    return sum(2 ** (n // 2 - compute_stats(p).out) for p in iter_partitions_12(n, pairs_only=True))


# ---------------------------------------------------------------------------
# operator side


class _OperatorCache:
    def __init__(self, trunc):
        self.trunc = trunc
        self._d: dict = {}
        self._c: dict = {}

    def ann(self, i, x):
        if i not in self._d:
            self._d[i] = annihilation(self.trunc, x)
        return self._d[i]

    def cre(self, i, x):
        if i not in self._c:
            self._c[i] = creation(self.trunc, x)
        return self._c[i]


def wick_oracle(query: WickQuery, trunc: FockTruncation) -> FockState:
    """Apply the actual level matrices of the word to the vacuum, rightmost operator first."""
    if not -1.0 < query.q < 1.0:
        raise ValueError("the operator oracle needs |q| < 1")
    if trunc.q != query.q or trunc.space.dim != query.space.dim:
        raise ValueError("truncation does not match the query")
    ops = _OperatorCache(trunc)
    state = FockState.vacuum(trunc)
    for i in range(query.n - 1, -1, -1):
        x = query.vectors[i]
        sym = query.eps.symbols[i] if query.eps is not None else None
        if sym == ANNIHILATE:
            state = ops.ann(i, x).apply(state)
        elif sym is None:
            state = ops.ann(i, x).apply(state) + ops.cre(i, x).apply(state)
        else:
            state = ops.cre(i, x).apply(state)
    return state


def oracle_vacuum(query: WickQuery, max_level: int | None = None) -> complex:
    trunc = FockTruncation(query.space, max(query.n, 1) if max_level is None else max_level, query.q)
    return wick_oracle(query, trunc).omega


def traciality_defect(vectors, space: HilbertSpaceSpec, q: float, exact: bool = False):
    """``<G1 G2 G3 G4> - <G2 G3 G4 G1>`` in the vacuum state."""
    v = np.asarray(vectors, dtype=np.complex128)
    if v.shape[0] != 4:
        raise ValueError("four vectors required")
    a = wick_vacuum(WickQuery(q, v, None, space), exact=exact)
    b = wick_vacuum(WickQuery(q, v[[1, 2, 3, 0]], None, space), exact=exact)
    if exact:
        return a.poly - b.poly
    return a.value - b.value


def traciality_defect_formula(vectors, space: HilbertSpaceSpec, q: float) -> complex:
    x = np.asarray(vectors, dtype=np.complex128)

    def ip_bar(i, j):
        return np.vdot(x[i], space.bar(x[j]))

    return complex(q ** 2 * (ip_bar(0, 3) * ip_bar(1, 2) - ip_bar(0, 1) * ip_bar(2, 3)))


@lru_cache(maxsize=64)
def _gaussian_moment_cached(k: int, dim: int, inv_key: tuple, basis_index: int) -> IntPolynomial:
    space = HilbertSpaceSpec(dim, np.array(inv_key, dtype=np.complex128).reshape(dim, dim))
    e = np.zeros(dim, dtype=np.complex128)
    e[basis_index] = 1.0
    return wick_vacuum(WickQuery(0.0, np.tile(e, (k, 1)), None, space), exact=True).poly


def gaussian_moment_exact(k: int, space: HilbertSpaceSpec | None = None, basis_index: int = 0) -> IntPolynomial:
    """``<Omega, G(e)^k Omega>`` exactly, for a basis eigenvector ``e`` of the involution."""
    space = space or HilbertSpaceSpec(1)
    key = tuple(complex(z) for z in space.involution.reshape(-1))
    return _gaussian_moment_cached(k, space.dim, key, basis_index)
