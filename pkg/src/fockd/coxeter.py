"""Coxeter groups S(n), B(n), D(n) as signed permutations.

Composition is ``(s * t)(i) = s(t(i))`` with ``s(-i) = -s(i)``. Lengths are
Cayley-graph distances from the identity over the Coxeter generators.

Generators, in window notation (images of 1..n):

* ``pi_i = (i, i+1)(-i, -i-1)``: positions ``i`` and ``i+1`` swapped
* ``pibar_n = (n, -n)``: last entry negated
* ``pihat_{n-1} = pibar_n pi_{n-1} pibar_n``: ``[..., -n, -(n-1)]``
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import kernels
from .numerics import IntPolynomial, poly_product, qnumber

FAMILIES = ("A", "B", "D")
RANK_CAPS = {"A": 9, "B": 7, "D": 7}


class RankCapError(ValueError):
    pass


@dataclass(frozen=True)
class SignedPermutation:
    window: tuple
    family: str = "B"

    def __post_init__(self):
        w = tuple(int(x) for x in self.window)
        object.__setattr__(self, "window", w)
        n = len(w)
        if sorted(abs(x) for x in w) != list(range(1, n + 1)):
            raise ValueError(f"{w} is not a signed permutation of 1..{n}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        neg = sum(x < 0 for x in w)
        if self.family == "A" and neg:
            raise ValueError(f"{w} has negative entries but family is A")
        if self.family == "D" and neg % 2:
            raise ValueError(f"{w} has an odd number of negative entries but family is D")

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        return self.window[i - 1] if i > 0 else -self.window[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        if other.n != self.n:
            raise ValueError("rank mismatch")
        return SignedPermutation(tuple(self(t) for t in other.window), _join(self.family, other.family))

    def inverse(self) -> "SignedPermutation":
        inv = [0] * self.n
        for i, x in enumerate(self.window, start=1):
            inv[abs(x) - 1] = i if x > 0 else -i
        return SignedPermutation(tuple(inv), self.family)

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def to_text(self) -> str:
        return ",".join(str(x) for x in self.window)

    @classmethod
    def from_text(cls, text: str, family: str = "B") -> "SignedPermutation":
        return cls(tuple(int(t) for t in text.split(",") if t.strip()), family)

    def __repr__(self):
        return f"SignedPermutation([{self.to_text()}], {self.family!r})"


def _join(a: str, b: str) -> str:
    # smallest family containing both
    order = {"A": 0, "D": 1, "B": 2}
    return a if order[a] >= order[b] else b


def identity(n: int, family: str = "A") -> SignedPermutation:
    return SignedPermutation(tuple(range(1, n + 1)), family)


def pi(i: int, n: int) -> SignedPermutation:
    """Adjacent transposition ``pi_i`` in rank ``n`` (1 <= i <= n-1)."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"pi_{i} undefined in rank {n}")
    w = list(range(1, n + 1))
    w[i - 1], w[i] = w[i], w[i - 1]
    return SignedPermutation(tuple(w), "A")


def pibar(n: int) -> SignedPermutation:
    w = list(range(1, n + 1))
    w[-1] = -n
    return SignedPermutation(tuple(w), "B")


def pihat(n: int) -> SignedPermutation:
    """``pihat_{n-1} = pibar_n pi_{n-1} pibar_n`` in rank ``n >= 2``."""
    if n < 2:
        raise ValueError("pihat needs rank >= 2")
    w = list(range(1, n + 1))
    w[-2], w[-1] = -n, -(n - 1)
    return SignedPermutation(tuple(w), "D")


def generators(family: str, n: int) -> list:
    if n < 1:
        raise ValueError("rank must be >= 1")
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    gens = [SignedPermutation(pi(i, n).window, family) for i in range(1, n)]
    if family == "B":
        gens.append(pibar(n))
    elif family == "D" and n >= 2:
        gens.append(pihat(n))
    return gens


def group_order(family: str, n: int) -> int:
    from math import factorial

    return {"A": factorial(n), "B": 2 ** n * factorial(n), "D": 2 ** (n - 1) * factorial(n)}[family]


@dataclass(frozen=True, eq=False)
class GroupTable:
    family: str
    n: int
    windows: np.ndarray
    lengths: np.ndarray
    _index: dict = field(default=None, repr=False, compare=False)

    def __len__(self):
        return self.windows.shape[0]

    @property
    def elements(self) -> list:
        return [SignedPermutation(tuple(w), self.family) for w in self.windows]

    def __iter__(self) -> Iterator:
        for w, ln in zip(self.windows, self.lengths):
            yield SignedPermutation(tuple(w), self.family), int(ln)

    def length(self, s: SignedPermutation) -> int:
        if self._index is None:
            object.__setattr__(
                self, "_index", {tuple(int(x) for x in w): int(ln) for w, ln in zip(self.windows, self.lengths)}
            )
        return self._index[s.window]

    def dump_jsonl(self) -> str:
        return "\n".join(
            json.dumps({"window": [int(x) for x in w], "length": int(ln)})
            for w, ln in zip(self.windows, self.lengths)
        )


def enumerate_group(family: str, n: int, cap: int | None = None) -> GroupTable:
    """All elements of the group with their lengths, by Cayley-graph BFS."""
    return _enumerate_cached(family, n, RANK_CAPS[family] if cap is None else cap)


@lru_cache(maxsize=32)
def _enumerate_cached(family, n, cap):
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    if n < 1:
        raise ValueError("rank must be >= 1")
    signed = family != "A"
    if n > cap:
        states = kernels.bfs_state_count(n, signed)
        est = states * 8 * (n + 2)
        raise RankCapError(
            f"rank {n} exceeds the cap {cap} for family {family}: "
            f"BFS would need about {est / 2**20:.0f} MiB"
        )
    gens = generators(family, n)
    if not gens:
        w = np.arange(1, n + 1, dtype=np.int64)[None, :]
        ln = np.zeros(1, dtype=np.int64)
    else:
        w, ln = kernels.bfs_lengths(np.array([g.window for g in gens]), n, signed=signed)
    w.setflags(write=False)
    ln.setflags(write=False)
    return GroupTable(family, n, w, ln)


def poincare_polynomial(table: GroupTable) -> IntPolynomial:
    counts = np.bincount(table.lengths)
    return IntPolynomial(int(c) for c in counts)


def product_formula(n: int) -> IntPolynomial:
    """``[2]_q [4]_q ... [2n-2]_q [n]_q``, the Poincare polynomial of D(n)."""
    if n == 1:
        return IntPolynomial([1])
    return poly_product([qnumber(2 * k) for k in range(1, n)] + [qnumber(n)])


def product(word, n: int) -> SignedPermutation:
    acc = identity(n, "D")
    for g in word:
        acc = acc * g
    return acc


def coset_words(n: int) -> list:
    """Generator words for the minimal representatives ``w(0..2n-1)`` of D(n-1)\\D(n)."""
    if n < 2:
        raise ValueError("coset representatives need rank >= 2")
    p = [None] + [SignedPermutation(pi(i, n).window, "D") for i in range(1, n)]
    hat = pihat(n)
    words = []
    for k in range(2 * n):
        if k <= n - 1:
            words.append([p[i] for i in range(1, k + 1)])
        elif k == n:
            words.append([p[i] for i in range(1, n - 1)] + [hat])
        else:
            words.append([p[i] for i in range(1, n - 1)] + [hat] + [p[i] for i in range(n - 1, 2 * n - k - 1, -1)])
    return words


def coset_representatives(n: int) -> list:
    return [product(w, n) for w in coset_words(n)]


def embed(s: SignedPermutation) -> SignedPermutation:
    """D(n-1) -> D(n) by the index shift ``pi_k -> pi_{k+1}``."""
    return SignedPermutation((1,) + tuple(x + 1 if x > 0 else x - 1 for x in s.window), s.family)


def factor_coset(s: SignedPermutation, reps: list | None = None):
    """Unique ``(s', k)`` with ``s = embed(s') * w(k)``."""
    reps = coset_representatives(s.n) if reps is None else reps
    found = []
    for k, w in enumerate(reps):
        t = s * w.inverse()
        if t.window[0] == 1:
            found.append((SignedPermutation(tuple(x - 1 if x > 0 else x + 1 for x in t.window[1:]), "D"), k))
    if len(found) != 1:
        raise ValueError(f"{s} has {len(found)} coset factorizations")
    return found[0]
