"""Numeric inner loops, each with a numba and a pure-numpy implementation.

Signed permutations are int64 rows in window notation (entry ``k`` is the
image of ``k + 1``). A window is encoded as a single integer

    code = lehmer_rank(|window|) * 2**n + sign_mask

where bit ``k`` of ``sign_mask`` is set when ``window[k] < 0``. Codes index
dense arrays of size ``n! * 2**n``.

The public functions dispatch on :func:`fockd._backend.backend`.
"""

from math import factorial

import numpy as np

from ._backend import backend, njit

# ---------------------------------------------------------------------------
# window encoding


@njit(cache=True)
def _encode_one(w):
    n = w.shape[0]
    rank = 0
    for i in range(n):
        ai = abs(w[i])
        smaller = 0
        for j in range(i + 1, n):
            if abs(w[j]) < ai:
                smaller += 1
        rank = rank * (n - i) + smaller
    mask = 0
    for i in range(n):
        if w[i] < 0:
            mask |= 1 << i
    return rank * (1 << n) + mask


def encode_windows(windows: np.ndarray) -> np.ndarray:
    """Vectorized window -> code over the rows of ``windows``."""
    windows = np.asarray(windows, dtype=np.int64)
    m, n = windows.shape
    a = np.abs(windows)
    rank = np.zeros(m, dtype=np.int64)
    for i in range(n):
        smaller = (a[:, i + 1:] < a[:, i:i + 1]).sum(axis=1)
        rank = rank * (n - i) + smaller
    mask = ((windows < 0).astype(np.int64) << np.arange(n, dtype=np.int64)).sum(axis=1)
    return rank * (1 << n) + mask


# ---------------------------------------------------------------------------
# Cayley-graph BFS


@njit(cache=True)
def _bfs_numba(gens, n, size, shift):
    dist = np.full(size, -1, np.int64)
    queue = np.empty((size, n), np.int64)
    qlen = np.empty(size, np.int64)
    for i in range(n):
        queue[0, i] = i + 1
    dist[_encode_one(queue[0]) >> shift] = 0
    qlen[0] = 0
    head = 0
    tail = 1
    child = np.empty(n, np.int64)
    while head < tail:
        for g in range(gens.shape[0]):
            for i in range(n):
                gi = gens[g, i]
                if gi > 0:
                    child[i] = queue[head, gi - 1]
                else:
                    child[i] = -queue[head, -gi - 1]
            c = _encode_one(child) >> shift
            if dist[c] < 0:
                dist[c] = qlen[head] + 1
                queue[tail, :] = child
                qlen[tail] = dist[c]
                tail += 1
        head += 1
    return queue[:tail].copy(), qlen[:tail].copy()


def _bfs_numpy(gens, n, size, shift):
    seen = np.zeros(size, dtype=bool)
    frontier = np.arange(1, n + 1, dtype=np.int64)[None, :]
    seen[encode_windows(frontier) >> shift] = True
    out_w = [frontier]
    out_l = [np.zeros(1, dtype=np.int64)]
    depth = 0
    cols = np.abs(gens) - 1
    signs = np.sign(gens)
    while frontier.shape[0]:
        depth += 1
        # right multiplication: (s o g)(i) = s(g(i))
        children = np.concatenate(
            [frontier[:, cols[g]] * signs[g] for g in range(gens.shape[0])], axis=0
        )
        codes = encode_windows(children) >> shift
        codes, first = np.unique(codes, return_index=True)
        fresh = ~seen[codes]
        seen[codes[fresh]] = True
        frontier = children[first[fresh]]
        if frontier.shape[0]:
            out_w.append(frontier)
            out_l.append(np.full(frontier.shape[0], depth, dtype=np.int64))
    return np.concatenate(out_w), np.concatenate(out_l)


def bfs_state_count(n: int, signed: bool = True) -> int:
    """Size of the dense visited array used by :func:`bfs_lengths`."""
    return factorial(n) * ((1 << n) if signed else 1)


def bfs_lengths(gens: np.ndarray, n: int, signed: bool = True):
    """All products of ``gens`` (windows) with their Cayley-graph distance.

    With ``signed=False`` the generators must be unsigned and the visited
    array shrinks to ``n!`` entries. Returns ``(windows, lengths)`` sorted by
    ``(length, code)`` so both backends agree row for row.
    """
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, n)
    if not signed and (gens < 0).any():
        raise ValueError("signed generators passed with signed=False")
    size = bfs_state_count(n, signed)
    shift = 0 if signed else n
    if backend() == "numba":
        w, ln = _bfs_numba(gens, n, size, shift)
    else:
        w, ln = _bfs_numpy(gens, n, size, shift)
    order = np.lexsort((encode_windows(w), ln))
    return w[order], ln[order]


# ---------------------------------------------------------------------------
# weighted sum of signed-permutation actions on (C^d)^{(x) n}


@njit(cache=True)
def _action_sum_numba(windows, weights, inv, d):
    m, n = windows.shape
    dim = d ** n
    out = np.zeros((dim, dim), np.complex128)
    ind = np.empty(n, np.int64)
    outd = np.empty(n, np.int64)
    choice = np.zeros(n, np.int64)
    negs = np.empty(n, np.int64)
    stride = np.empty(n, np.int64)
    s = 1
    for p in range(n - 1, -1, -1):
        stride[p] = s
        s *= d
    for e in range(m):
        w = windows[e]
        wt = weights[e]
        nneg = 0
        for k in range(n):
            if w[k] < 0:
                negs[nneg] = k
                nneg += 1
        for col in range(dim):
            r = col
            for k in range(n - 1, -1, -1):
                ind[k] = r % d
                r //= d
            for k in range(n):
                outd[abs(w[k]) - 1] = ind[k]
            # odometer over the output digits of the barred slots
            for t in range(nneg):
                choice[t] = 0
            while True:
                val = wt
                for t in range(nneg):
                    k = negs[t]
                    val *= inv[choice[t], ind[k]]
                    outd[-w[k] - 1] = choice[t]
                if val != 0.0:
                    row = 0
                    for p in range(n):
                        row += outd[p] * stride[p]
                    out[row, col] += val
                t = 0
                while t < nneg:
                    choice[t] += 1
                    if choice[t] < d:
                        break
                    choice[t] = 0
                    t += 1
                if t == nneg:
                    break
    return out


def _action_matrix_numpy(window, inv, d):
    n = window.shape[0]
    eye = np.eye(d, dtype=np.complex128)
    m = np.ones((1, 1), dtype=np.complex128)
    for k in range(n):
        m = np.kron(m, inv if window[k] < 0 else eye)
    if n == 0:
        return m
    # input slot k lands in output slot |w[k]|
    axes = np.empty(n, dtype=np.int64)
    axes[np.abs(window) - 1] = np.arange(n)
    t = m.reshape((d,) * n + (d ** n,))
    t = np.transpose(t, tuple(axes) + (n,))
    return t.reshape(d ** n, d ** n)


def _action_sum_numpy(windows, weights, inv, d):
    m, n = windows.shape
    out = np.zeros((d ** n, d ** n), dtype=np.complex128)
    for e in range(m):
        if weights[e] != 0:
            out += weights[e] * _action_matrix_numpy(windows[e], inv, d)
    return out


def action_sum(windows: np.ndarray, weights: np.ndarray, involution: np.ndarray) -> np.ndarray:
    """``sum_e weights[e] * rho(windows[e])`` as a dense ``d**n`` square matrix.

    ``rho(w)`` sends ``x_1 (x) ... (x) x_n`` to the tensor whose slot ``|w(k)|``
    holds ``x_k``, with the involution applied when ``w(k) < 0``. This is a
    group homomorphism for the composition ``(s o t)(i) = s(t(i))``.
    """
    windows = np.ascontiguousarray(np.asarray(windows, dtype=np.int64))
    if windows.ndim == 1:
        windows = windows[None, :]
    weights = np.ascontiguousarray(np.asarray(weights, dtype=np.complex128).reshape(-1))
    inv = np.ascontiguousarray(np.asarray(involution, dtype=np.complex128))
    d = inv.shape[0]
    if windows.shape[1] == 0:
        return np.array([[weights.sum()]], dtype=np.complex128)
    if backend() == "numba":
        return _action_sum_numba(windows, weights, inv, d)
    return _action_sum_numpy(windows, weights, inv, d)
