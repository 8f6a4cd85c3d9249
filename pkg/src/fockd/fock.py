"""Truncated type-D Fock space over C^d with a selfadjoint involution.

Level ``n`` is ``(C^d)^{(x) n}`` in the lexicographic tensor basis (slot 1 is
the slowest index), so ``numpy.kron(A, B)`` has ``A`` acting on the left
slots. Operators are stored level by level: ``blocks[n]`` maps level ``n`` to
level ``n + shift``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .coxeter import SignedPermutation, coset_representatives, enumerate_group
from .numerics import DEFAULT_TOL, IntPolynomial, Tolerance, hermitian_eigenvalues, kron, max_asymmetry, psd_sqrt


class TruncationOverflow(RuntimeError):
    pass


class InternalConsistencyError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# one-particle space


def parse_involution(value, dim: int) -> np.ndarray:
    """Involution from shorthand ``identity``, ``diag:+,-,...``, ``swap`` or a nested list.

    ``swap`` reverses the basis, ``e_i <-> e_{d+1-i}``.
    """
    if isinstance(value, str):
        s = value.strip()
        if s == "identity":
            return np.eye(dim, dtype=np.complex128)
        if s == "swap":
            return np.eye(dim, dtype=np.complex128)[::-1].copy()
        if s.startswith("diag:"):
            signs = [t.strip() for t in s[5:].split(",") if t.strip()]
            if len(signs) != dim or any(t not in ("+", "-", "+1", "-1", "1") for t in signs):
                raise ValueError(f"bad diagonal involution {value!r} for dim {dim}")
            return np.diag([-1.0 if t.startswith("-") else 1.0 for t in signs]).astype(np.complex128)
        raise ValueError(f"unknown involution shorthand {value!r}")
    m = np.asarray(value)
    if m.ndim == 3:  # rows of [re, im] pairs
        m = m[..., 0] + 1j * m[..., 1]
    return np.asarray(m, dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class HilbertSpaceSpec:
    dim: int
    involution: np.ndarray = None
    tol: Tolerance = DEFAULT_TOL

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dim must be positive")
        inv = np.eye(self.dim, dtype=np.complex128) if self.involution is None else parse_involution(self.involution, self.dim)
        if inv.shape != (self.dim, self.dim):
            raise ValueError(f"involution has shape {inv.shape}, expected {(self.dim, self.dim)}")
        if max_asymmetry(inv) > self.tol.abs_eps:
            raise ValueError("involution is not selfadjoint")
        if np.max(np.abs(inv @ inv - np.eye(self.dim))) > self.tol.abs_eps:
            raise ValueError("involution does not square to the identity")
        inv = inv.copy()
        inv.setflags(write=False)
        object.__setattr__(self, "involution", inv)

    def bar(self, x) -> np.ndarray:
        return self.involution @ np.asarray(x, dtype=np.complex128)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "involution": [[[float(z.real), float(z.imag)] for z in row] for row in self.involution],
        }

    @classmethod
    def from_json(cls, data: dict) -> "HilbertSpaceSpec":
        return cls(int(data["dim"]), data.get("involution", "identity"))


def vector_from_json(data) -> np.ndarray:
    """Vector from a list of ``[re, im]`` pairs (plain numbers also accepted)."""
    out = []
    for z in data:
        if isinstance(z, (list, tuple)):
            out.append(complex(z[0], z[1] if len(z) > 1 else 0.0))
        else:
            out.append(complex(z))
    return np.array(out, dtype=np.complex128)


def vector_to_json(v) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(v, dtype=np.complex128).reshape(-1)]


def random_vectors(count: int, dim: int, seed: int = 0) -> np.ndarray:
    """Complex Gaussian vectors, ``(a + i b) / sqrt(2)`` with ``a, b`` standard normal.

    Drawn from ``numpy.random.default_rng(seed)`` (PCG64), real parts first.
    """
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((count, dim))
    b = rng.standard_normal((count, dim))
    return (a + 1j * b) / math.sqrt(2.0)


# ---------------------------------------------------------------------------
# truncation, states, level operators


@dataclass(frozen=True, eq=False)
class FockTruncation:
    space: HilbertSpaceSpec
    max_level: int
    q: float
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not -1.0 < self.q < 1.0:
            raise ValueError(f"operator mode needs q strictly inside (-1, 1), got {self.q}")
        if self.max_level < 0:
            raise ValueError("max_level must be >= 0")

    @property
    def d(self) -> int:
        return self.space.dim

    def level_dim(self, n: int) -> int:
        return self.d ** n

    def symmetrizer(self, n: int) -> np.ndarray:
        """Symmetrizer at level ``n`` by the recursive factorization (cached)."""
        key = ("P", n)
        if key not in self._cache:
            self._cache[key] = build_symmetrizer_recursive(self, n)
        return self._cache[key]

    def r_operator(self, n: int) -> np.ndarray:
        key = ("R", n)
        if key not in self._cache:
            self._cache[key] = build_r_operator(self, n)
        return self._cache[key]

    def sqrt_symmetrizer(self, n: int, inverse: bool = False) -> np.ndarray:
        key = ("S", n, inverse)
        if key not in self._cache:
            self._cache[key] = psd_sqrt(self.symmetrizer(n), inverse=inverse)
        return self._cache[key]


@dataclass
class FockState:
    levels: list  # levels[n] is a complex vector of length d**n

    @classmethod
    def zeros(cls, trunc: FockTruncation) -> "FockState":
        return cls([np.zeros(trunc.level_dim(n), dtype=np.complex128) for n in range(trunc.max_level + 1)])

    @classmethod
    def vacuum(cls, trunc: FockTruncation) -> "FockState":
        s = cls.zeros(trunc)
        s.levels[0][0] = 1.0
        return s

    @classmethod
    def at_level(cls, trunc: FockTruncation, n: int, vec) -> "FockState":
        s = cls.zeros(trunc)
        s.levels[n] = np.asarray(vec, dtype=np.complex128).reshape(trunc.level_dim(n)).copy()
        return s

    @property
    def omega(self) -> complex:
        return complex(self.levels[0][0])

    def __add__(self, other):
        return FockState([a + b for a, b in zip(self.levels, other.levels)])

    def __sub__(self, other):
        return FockState([a - b for a, b in zip(self.levels, other.levels)])

    def scale(self, c) -> "FockState":
        return FockState([c * a for a in self.levels])

    def max_abs(self) -> float:
        return max((float(np.max(np.abs(a))) for a in self.levels if a.size), default=0.0)


@dataclass
class LevelOperator:
    kind: str
    shift: int
    blocks: dict  # level n -> matrix from level n to level n + shift
    max_level: int

    def block(self, n: int) -> np.ndarray:
        return self.blocks[n]

    def apply(self, state: FockState) -> FockState:
        out = [np.zeros_like(a) for a in state.levels]
        for n, v in enumerate(state.levels):
            target = n + self.shift
            if target < 0:
                continue  # annihilation below the vacuum is exactly zero
            if n not in self.blocks:
                if np.any(v != 0):
                    raise TruncationOverflow(
                        f"{self.kind} operator maps level {n} to {target}, beyond max_level {self.max_level}"
                    )
                continue
            out[target] = out[target] + self.blocks[n] @ v
        return FockState(out)

    def __matmul__(self, state: FockState) -> FockState:
        return self.apply(state)


# ---------------------------------------------------------------------------
# Coxeter actions and symmetrizers


def coxeter_action(g: SignedPermutation, n: int, space: HilbertSpaceSpec) -> np.ndarray:
    """Matrix of a signed permutation acting on level ``n``."""
    if g.n != n:
        raise ValueError(f"element of rank {g.n} cannot act on level {n}")
    return kernels.action_sum(np.array([g.window]), np.ones(1), space.involution)


def pi_matrix(i: int, n: int, space: HilbertSpaceSpec) -> np.ndarray:
    """``pi_i`` exchanging tensor slots ``i`` and ``i+1``."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"pi_{i} does not act on level {n}")
    d = space.dim
    swap = np.zeros((d * d, d * d), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            swap[b * d + a, a * d + b] = 1.0
    return kron(kron(np.eye(d ** (i - 1)), swap), np.eye(d ** (n - i - 1)))


def pihat_matrix(n: int, space: HilbertSpaceSpec) -> np.ndarray:
    """``pihat_{n-1}``: ``... x_{n-1} (x) x_n -> ... bar(x_n) (x) bar(x_{n-1})``."""
    if n < 2:
        raise ValueError("pihat acts on levels >= 2")
    d = space.dim
    s = space.involution
    last_two = pi_matrix(1, 2, space) @ kron(s, s)
    return kron(np.eye(d ** (n - 2)), last_two)


def build_symmetrizer_direct(trunc: FockTruncation, n: int) -> np.ndarray:
    """Sum of ``q**len(s) * s`` over all of D(n)."""
    if n == 0:
        return np.ones((1, 1), dtype=np.complex128)
    table = enumerate_group("D", n)
    weights = np.power(float(trunc.q), table.lengths.astype(float)) if trunc.q != 0 else (table.lengths == 0).astype(float)
    return kernels.action_sum(table.windows, weights, trunc.space.involution)


def build_r_operator(trunc: FockTruncation, n: int) -> np.ndarray:
    """The coset operator R^(n), assembled from products of generator matrices."""
    if n < 1:
        raise ValueError("R is defined for levels >= 1")
    dim = trunc.level_dim(n)
    eye = np.eye(dim, dtype=np.complex128)
    if n == 1:
        return eye
    q, space = trunc.q, trunc.space
    p = [None] + [pi_matrix(i, n, space) for i in range(1, n)]
    head = eye.copy()
    acc = eye.copy()
    for k in range(1, n):
        acc = acc @ p[k]
        head += q ** k * acc
    tail = eye.copy()
    acc = eye.copy()
    for k in range(1, n):
        acc = acc @ p[n - k]
        tail += q ** k * acc
    prefix = eye.copy()
    for i in range(1, n - 1):
        prefix = prefix @ p[i]
    return head + q ** (n - 1) * (prefix @ pihat_matrix(n, space) @ tail)


def r_operator_from_cosets(trunc: FockTruncation, n: int) -> np.ndarray:
    """Sum of ``q**len(w(k)) * w(k)`` over the minimal coset representatives."""
    if n == 1:
        return np.eye(trunc.d, dtype=np.complex128)
    table = enumerate_group("D", n)
    reps = coset_representatives(n)
    lengths = np.array([table.length(w) for w in reps], dtype=float)
    windows = np.array([w.window for w in reps])
    return kernels.action_sum(windows, trunc.q ** lengths, trunc.space.involution)


def build_symmetrizer_recursive(trunc: FockTruncation, n: int) -> np.ndarray:
    """``P^(n) = (I (x) P^(n-1)) R^(n)`` seeded by ``P^(1) = R^(1)``."""
    if n == 0:
        return np.ones((1, 1), dtype=np.complex128)
    p = np.ones((1, 1), dtype=np.complex128)
    for k in range(1, n + 1):
        r = trunc.r_operator(k)
        p = kron(np.eye(trunc.d), p) @ r if k > 1 else r.copy()
    return p


def deformed_inner_product(trunc: FockTruncation, f: FockState, g: FockState) -> complex:
    """``<f, g>_q``: antilinear in ``f``, linear in ``g``."""
    total = 0j
    for n, (a, b) in enumerate(zip(f.levels, g.levels)):
        if np.any(a) and np.any(b):
            total += np.vdot(a, trunc.symmetrizer(n) @ b)
    return complex(total)


# ---------------------------------------------------------------------------
# creation, annihilation, J, N


def _left_removal(x, n, d, slot) -> np.ndarray:
    """Contract slot ``slot`` (1-based) of level ``n`` against ``x``."""
    row = np.conj(np.asarray(x, dtype=np.complex128)).reshape(1, d)
    return kron(kron(np.eye(d ** (slot - 1)), row), np.eye(d ** (n - slot)))


def free_annihilation_block(x, n: int, d: int) -> np.ndarray:
    return _left_removal(x, n, d, 1)


def lq_block(x, n: int, d: int, q: float) -> np.ndarray:
    """Left q-derivative on level ``n``: ``sum_k q**(k-1) <x, x_k>`` with slot ``k`` removed."""
    return sum(q ** (k - 1) * _left_removal(x, n, d, k) for k in range(1, n + 1))


def rq_block(x, n: int, d: int, q: float) -> np.ndarray:
    """Right q-derivative on level ``n``: weight ``q**(n-s)`` for removing slot ``s``."""
    return sum(q ** (n - s) * _left_removal(x, n, d, s) for s in range(1, n + 1))


def j_block(n: int, space: HilbertSpaceSpec) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 1), dtype=np.complex128)
    return kron(np.eye(space.dim ** (n - 1)), space.involution)


def creation(trunc: FockTruncation, x) -> LevelOperator:
    x = np.asarray(x, dtype=np.complex128).reshape(trunc.d, 1)
    blocks = {n: kron(x, np.eye(trunc.level_dim(n))) for n in range(trunc.max_level)}
    return LevelOperator("creation", +1, blocks, trunc.max_level)


def annihilation_via_r(trunc: FockTruncation, x) -> dict:
    return {
        n: free_annihilation_block(x, n, trunc.d) @ trunc.r_operator(n) for n in range(1, trunc.max_level + 1)
    }


def annihilation_closed_form(trunc: FockTruncation, x) -> dict:
    """``l_q(x) + q**N J r_q(bar x)`` level by level."""
    d, q = trunc.d, trunc.q
    xbar = trunc.space.bar(x)
    out = {}
    for n in range(1, trunc.max_level + 1):
        out[n] = lq_block(x, n, d, q) + q ** (n - 1) * (j_block(n - 1, trunc.space) @ rq_block(xbar, n, d, q))
    return out


def annihilation(trunc: FockTruncation, x, tol: float = 1e-10) -> LevelOperator:
    """Annihilator built two ways; raises if they disagree beyond ``tol`` (relative to entry size)."""
    a = annihilation_via_r(trunc, x)
    b = annihilation_closed_form(trunc, x)
    for n in a:
        scale = max(1.0, float(np.max(np.abs(a[n]))))
        err = float(np.max(np.abs(a[n] - b[n])))
        if err > tol * scale:
            raise InternalConsistencyError(f"annihilator constructions disagree at level {n}: {err:.3e}")
    return LevelOperator("annihilation", -1, a, trunc.max_level)


def j_operator(trunc: FockTruncation) -> LevelOperator:
    return LevelOperator("J", 0, {n: j_block(n, trunc.space) for n in range(trunc.max_level + 1)}, trunc.max_level)


def number_operator(trunc: FockTruncation) -> LevelOperator:
    blocks = {n: n * np.eye(trunc.level_dim(n), dtype=np.complex128) for n in range(trunc.max_level + 1)}
    return LevelOperator("number", 0, blocks, trunc.max_level)


def gaussian_apply(trunc: FockTruncation, x, state: FockState) -> FockState:
    """``G(x) = d(x) + d*(x)`` applied to ``state``."""
    return annihilation(trunc, x).apply(state) + creation(trunc, x).apply(state)


# ---------------------------------------------------------------------------
# checks


@dataclass
class CommutationReport:
    residuals: dict  # level -> max entrywise residual
    tol: float

    @property
    def ok(self) -> bool:
        return all(r <= self.tol for r in self.residuals.values())

    @property
    def worst_level(self):
        return max(self.residuals, key=self.residuals.get) if self.residuals else None


def check_commutation(trunc: FockTruncation, x, y, tol: float = 1e-10) -> CommutationReport:
    """Residuals of ``d(x) d*(y) - q d*(y) d(x)`` against the closed forms, per level.

    Level 1 uses the three-term identity; all other levels use
    ``<x,y> + <x, bar y> q**(2n) J``.
    """
    if trunc.max_level < 3:
        raise ValueError("commutation check needs max_level >= 3")
    q, d, space = trunc.q, trunc.d, trunc.space
    x = np.asarray(x, dtype=np.complex128)
    y = np.asarray(y, dtype=np.complex128)
    cr = creation(trunc, y).blocks
    an = annihilation(trunc, x).blocks
    xy = np.vdot(x, y)
    xybar = np.vdot(x, space.bar(y))
    res = {}
    for n in range(trunc.max_level):
        lhs = an[n + 1] @ cr[n]
        if n >= 1:
            lhs = lhs - q * (cr[n - 1] @ an[n])
        eye = np.eye(trunc.level_dim(n))
        if n == 1:
            s = space.involution
            ybar = space.bar(y).reshape(d, 1)
            rhs = xy * eye + q * (ybar @ (np.conj(x).reshape(1, d) @ s)) + q ** 2 * xybar * s
        else:
            rhs = xy * eye + xybar * q ** (2 * n) * j_block(n, space)
        res[n] = float(np.max(np.abs(lhs - rhs)))
    return CommutationReport(res, tol)


def q_geometry_block(trunc: FockTruncation, matrix: np.ndarray, src: int, dst: int) -> np.ndarray:
    """``P_dst^{1/2} M P_src^{-1/2}``: the block as a map between q-normed levels."""
    return trunc.sqrt_symmetrizer(dst) @ matrix @ trunc.sqrt_symmetrizer(src, inverse=True)


def q_operator_norm(trunc: FockTruncation, op: LevelOperator) -> float:
    """Exact spectral norm in the q-geometry (max over level blocks)."""
    best = 0.0
    for n, m in op.blocks.items():
        t = q_geometry_block(trunc, m, n, n + op.shift)
        best = max(best, float(np.linalg.norm(t, 2)))
    return best


def power_iteration_norm(
    trunc: FockTruncation, op: LevelOperator, iters: int = 20000, rtol: float = 1e-14, seed: int = 0
) -> float:
    """Power-iteration estimate of the q-norm of ``op`` on the truncated space."""
    blocks = {n: q_geometry_block(trunc, m, n, n + op.shift) for n, m in op.blocks.items()}
    rng = np.random.default_rng(seed)
    v = {n: rng.standard_normal(b.shape[1]) + 1j * rng.standard_normal(b.shape[1]) for n, b in blocks.items()}
    est = 0.0
    for _ in range(iters):
        w = {n: blocks[n].conj().T @ (blocks[n] @ v[n]) for n in blocks}
        num = sum(float(np.vdot(v[n], w[n]).real) for n in blocks)
        den = sum(float(np.vdot(v[n], v[n]).real) for n in blocks)
        new = num / den
        norm = math.sqrt(sum(float(np.vdot(w[n], w[n]).real) for n in blocks))
        if norm == 0.0:
            return 0.0
        v = {n: w[n] / norm for n in blocks}
        if abs(new - est) <= rtol * max(new, 1e-300):
            est = new
            break
        est = new
    return math.sqrt(max(est, 0.0))


def creation_norm_bounds(q: float, xnorm: float = 1.0) -> tuple:
    """Lower and upper bounds on the creation-operator q-norm."""
    lower = xnorm / math.sqrt(1.0 - q)
    if q >= 0:
        upper = math.sqrt(2.0 / (1.0 - q)) * xnorm
    else:
        upper = math.sqrt(1.0 + abs(q) + q * q) * xnorm
    return lower, upper


def min_symmetrizer_eigenvalue(trunc: FockTruncation, n: int, direct: bool = True) -> float:
    p = build_symmetrizer_direct(trunc, n) if direct else trunc.symmetrizer(n)
    return hermitian_eigenvalues(p)[0]


def integer_gram(space: HilbertSpaceSpec, ys, xs):
    """Integer matrices ``<y_a, x_b>`` and ``<y_a, bar x_b>``, or ``None`` if any entry is not an integer."""
    ys = np.asarray(ys, dtype=np.complex128).reshape(-1, space.dim)
    xs = np.asarray(xs, dtype=np.complex128).reshape(-1, space.dim)
    plain = np.conj(ys) @ xs.T
    barred = np.conj(ys) @ (space.involution @ xs.T)
    out = []
    for m in (plain, barred):
        r = np.round(m.real)
        if np.any(m.imag != 0) or np.any(m.real != r):
            return None
        out.append(r.astype(np.int64))
    return out[0], out[1]


def exact_product_gram(space: HilbertSpaceSpec, ys, xs) -> IntPolynomial:
    """``<y_1 (x) ... (x) y_n, x_1 (x) ... (x) x_n>_q`` as an exact polynomial.

    Sums ``q**len(s) * prod_k <y_{|s(k)|}, x_k or bar x_k>`` over D(n); needs
    integral inner products.
    """
    n = len(xs)
    if len(ys) != n:
        raise ValueError("tensor lengths differ")
    if n == 0:
        return IntPolynomial([1])
    grams = integer_gram(space, ys, xs)
    if grams is None:
        raise ValueError("inner products are not all integers; exact mode unavailable")
    plain, barred = grams
    table = enumerate_group("D", n)
    w = table.windows
    rows = np.abs(w) - 1
    cols = np.broadcast_to(np.arange(n), w.shape)
    factors = np.where(w > 0, plain[rows, cols], barred[rows, cols])
    vals = [int(v) for v in np.prod(factors, axis=1)]
    coeffs = [0] * (int(table.lengths.max()) + 1)
    for ln, v in zip(table.lengths, vals):
        coeffs[int(ln)] += v
    return IntPolynomial(coeffs)
