"""Small independent reference implementations used only by the tests.

Nothing here imports the package kernels: lengths come from a plain
Python BFS over tuples, operators from explicit basis-vector loops.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations, product

import numpy as np


def naive_group_lengths(family: str, n: int) -> dict:
    """window -> length, by BFS over Python tuples."""
    ident = tuple(range(1, n + 1))
    gens = []
    for i in range(n - 1):
        w = list(ident)
        w[i], w[i + 1] = w[i + 1], w[i]
        gens.append(tuple(w))
    if family == "B":
        gens.append(ident[:-1] + (-n,))
    elif family == "D" and n >= 2:
        gens.append(ident[:-2] + (-n, -(n - 1)))

    def mul(s, t):
        return tuple(s[x - 1] if x > 0 else -s[-x - 1] for x in t)

    dist = {ident: 0}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for g in gens:
            c = mul(w, g)
            if c not in dist:
                dist[c] = dist[w] + 1
                queue.append(c)
    return dist


def type_d_length_formula(w) -> int:
    """Inversions plus negative-sum pairs, for the generator set acting on the last two slots.

    Reversing positions and values turns our generators into the textbook
    ones (``s_0`` on the first two slots), where
    ``l(w) = inv(w) + #{i < j : w(i) + w(j) < 0}``.
    """
    n = len(w)
    v = [(n + 1 - abs(x)) * (1 if x > 0 else -1) for x in reversed(w)]
    inv = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] > v[j])
    nsp = sum(1 for i in range(n) for j in range(i + 1, n) if v[i] + v[j] < 0)
    return inv + nsp


def naive_action(window, inv: np.ndarray) -> np.ndarray:
    """Matrix of a signed permutation by acting on every product basis tensor."""
    n = len(window)
    d = inv.shape[0]
    dim = d ** n
    out = np.zeros((dim, dim), dtype=np.complex128)
    eye = np.eye(d)
    for col, idx in enumerate(product(range(d), repeat=n)):
        slots = [None] * n
        for k, x in enumerate(window):
            v = eye[idx[k]]
            slots[abs(x) - 1] = inv @ v if x < 0 else v
        t = np.ones(1, dtype=np.complex128)
        for s in slots:
            t = np.kron(t, s)
        out[:, col] = t
    return out


def naive_symmetrizer(n: int, q: float, inv: np.ndarray) -> np.ndarray:
    d = inv.shape[0]
    if n == 0:
        return np.ones((1, 1), dtype=np.complex128)
    out = np.zeros((d ** n, d ** n), dtype=np.complex128)
    for w, ln in naive_group_lengths("D", n).items():
        out += q ** ln * naive_action(w, inv)
    return out


def all_pairings(points):
    """All perfect matchings of a list of points."""
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in all_pairings(rest):
            yield [(a, points[i])] + m


def is_noncrossing(pairs) -> bool:
    for (a, b) in pairs:
        for (c, d) in pairs:
            if a < c < b < d:
                return False
    return True


def signed_perm_count(family, n):
    total = 0
    for p in permutations(range(1, n + 1)):
        for s in product((1, -1), repeat=n):
            neg = s.count(-1)
            if family == "B" or (family == "D" and neg % 2 == 0) or (family == "A" and neg == 0):
                total += 1
    return total
