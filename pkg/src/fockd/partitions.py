"""Set partitions with blocks of size 1 and 2, their type-D colorings and statistics.

Blocks are sorted tuples, and a partition keeps its blocks ordered by their
minimum. That canonical form makes the different enumeration routes directly
comparable as Python sets.

Relations between subsets ``A``, ``B`` of ``[n]``:

* ``B`` is on the right of ``A`` when ``min A < min B``; on the strict right
  when ``max A < min B``.
* ``A`` covers ``B`` when some ``i, j`` in ``A`` satisfy ``i < k < j`` for all
  ``k`` in ``B``.
* ``W`` crosses ``V`` from the left when ``k < i < l < j`` for some
  ``k, l`` in ``W`` and ``i, j`` in ``V``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Iterator

CAP_UNCOLORED = 12
CAP_COLORED = 10

ANNIHILATE = "1"
CREATE = "*"


class CapError(ValueError):
    pass


@dataclass(frozen=True)
class SetPartition:
    """A partition of ``{1..n}`` into arbitrary nonempty blocks."""

    n: int
    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(int(x) for x in b)) for b in self.blocks), key=lambda b: b[0]))
        object.__setattr__(self, "blocks", blocks)
        seen = [x for b in blocks for x in b]
        if any(not b for b in blocks) or sorted(seen) != list(range(1, self.n + 1)):
            raise ValueError(f"{blocks} is not a partition of 1..{self.n}")

    @property
    def pairs(self) -> list:
        return [b for b in self.blocks if len(b) == 2]

    @property
    def singletons(self) -> list:
        return [b for b in self.blocks if len(b) == 1]

    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def to_text(self) -> str:
        return "|".join("-".join(map(str, b)) for b in self.blocks)


class Partition12(SetPartition):
    """A partition whose blocks all have size 1 or 2."""

    def __post_init__(self):
        super().__post_init__()
        if any(len(b) > 2 for b in self.blocks):
            raise ValueError(f"blocks of size > 2 in {self.blocks}")

    @classmethod
    def from_text(cls, text: str) -> "Partition12":
        blocks = [tuple(int(x) for x in part.split("-")) for part in text.split("|") if part]
        return cls(sum(len(b) for b in blocks), tuple(blocks))


@dataclass(frozen=True)
class ColoredPartition:
    base: Partition12
    colors: tuple  # aligned with base.blocks, entries +1 / -1

    def __post_init__(self):
        if not isinstance(self.base, Partition12):
            raise TypeError("colorings are only defined for partitions with blocks of size <= 2")
        cols = tuple(int(c) for c in self.colors)
        if len(cols) != len(self.base.blocks) or any(c not in (1, -1) for c in cols):
            raise ValueError(f"bad coloring {self.colors} for {self.base.blocks}")
        object.__setattr__(self, "colors", cols)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def blocks(self) -> tuple:
        return self.base.blocks

    def color_of(self, block) -> int:
        return self.colors[self.base.blocks.index(tuple(block))]

    @property
    def negative_pairs(self) -> list:
        return [b for b, c in zip(self.blocks, self.colors) if len(b) == 2 and c == -1]

    def to_text(self) -> str:
        return "|".join("-".join(map(str, b)) + (":+" if c == 1 else ":-") for b, c in zip(self.blocks, self.colors))

    @classmethod
    def from_text(cls, text: str) -> "ColoredPartition":
        blocks, colors = [], []
        for part in text.split("|"):
            if not part:
                continue
            body, sign = part.rsplit(":", 1)
            if sign not in "+-" or len(sign) != 1:
                raise ValueError(f"bad color suffix in {part!r}")
            blocks.append(tuple(int(x) for x in body.split("-")))
            colors.append(1 if sign == "+" else -1)
        n = sum(len(b) for b in blocks)
        base = Partition12(n, tuple(blocks))
        order = {b: c for b, c in zip((tuple(sorted(b)) for b in blocks), colors)}
        return cls(base, tuple(order[b] for b in base.blocks))

    def to_json(self, with_stats: bool = True) -> dict:
        out = {"blocks": [list(b) for b in self.blocks], "colors": list(self.colors)}
        if with_stats:
            out["stats"] = compute_stats(self).to_json()
        return out


@dataclass(frozen=True)
class EpsilonPattern:
    """A word in {annihilate ``1``, create ``*``}."""

    symbols: tuple

    def __post_init__(self):
        if any(s not in (ANNIHILATE, CREATE) for s in self.symbols):
            raise ValueError(f"epsilon symbols must be '1' or '*', got {self.symbols}")

    @classmethod
    def parse(cls, text: str) -> "EpsilonPattern":
        text = text.strip()
        bad = set(text) - {ANNIHILATE, CREATE}
        if bad:
            raise ValueError(f"malformed epsilon pattern {text!r}: unexpected {sorted(bad)}")
        return cls(tuple(text))

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        return "".join(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]


# ---------------------------------------------------------------------------
# relations and statistics


def covers(a, b) -> bool:
    return min(a) < min(b) and max(b) < max(a)


def left_crosses(w, v) -> bool:
    """True when ``w`` crosses ``v`` from the left."""
    for k in w:
        for l in w:
            if k < l and any(k < i < l < j for i in v for j in v):
                return True
    return False


def crosses(v, w) -> bool:
    return left_crosses(v, w) or left_crosses(w, v)


def connected_components(p) -> list:
    """Crossing-closure components as sorted tuples, ordered by minimum."""
    blocks = list(p.blocks)
    parent = list(range(len(blocks)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            if crosses(blocks[i], blocks[j]):
                parent[find(i)] = find(j)
    groups = {}
    for i, b in enumerate(blocks):
        groups.setdefault(find(i), []).append(b)
    comps = [(tuple(sorted(x for b in bs for x in b)), len(bs)) for bs in groups.values()]
    return sorted(comps)


def outer_components(p) -> list:
    """Outer components as ``(support, block_count)`` tuples."""
    comps = connected_components(p)
    return [c for c in comps if not any(o is not c and covers(o[0], c[0]) for o in comps)]


@dataclass(frozen=True)
class PartitionStats:
    cr: int
    cs: int
    np: int
    cnp: int
    npssr: int
    out: int
    outsr: int
    cover: tuple
    sr: tuple
    ssr: tuple
    lcr: tuple
    npr: tuple

    def to_json(self) -> dict:
        return {
            "cr": self.cr, "cs": self.cs, "np": self.np, "cnp": self.cnp,
            "npssr": self.npssr, "out": self.out, "outsr": self.outsr,
            "cover": list(self.cover), "sr": list(self.sr), "ssr": list(self.ssr),
            "lcr": list(self.lcr), "npr": list(self.npr),
        }


def compute_stats(p) -> PartitionStats:
    """All statistics of a (colored) partition.

    Uncolored input counts every pair as positive, so ``np``, ``cnp``,
    ``npssr`` and ``npr`` are zero. Blocks of any size are accepted here.
    """
    if isinstance(p, ColoredPartition):
        blocks, colors = p.blocks, p.colors
    else:
        blocks, colors = p.blocks, (1,) * len(p.blocks)
    sing = [b for b in blocks if len(b) == 1]
    neg = [b for b, c in zip(blocks, colors) if len(b) == 2 and c == -1]
    pairs = [b for b in blocks if len(b) == 2]

    cover = tuple(sum(covers(w, v) for w in blocks) for v in blocks)
    sr = tuple(sum(min(s) > min(v) for s in sing) for v in blocks)
    ssr = tuple(sum(min(s) > max(v) for s in sing) for v in blocks)
    lcr = tuple(sum(left_crosses(w, v) for w in blocks) for v in blocks)
    npr = tuple(sum(min(w) > min(v) for w in neg) for v in blocks)
    cs = sum(c for b, c in zip(blocks, cover) if len(b) == 1)
    cnp = sum(covers(w, v) for v in neg for w in pairs)
    npssr = sum(min(s) > max(v) for v in neg for s in sing)

    outer = outer_components(p)
    nonsing = [c for c in outer if not (c[1] == 1 and len(c[0]) == 1)]
    outsr = sum(not any(min(s) > min(c[0]) for s in sing) for c in nonsing)
    return PartitionStats(
        cr=sum(lcr), cs=cs, np=len(neg), cnp=cnp, npssr=npssr,
        out=len(nonsing), outsr=outsr, cover=cover, sr=sr, ssr=ssr, lcr=lcr, npr=npr,
    )


# ---------------------------------------------------------------------------
# enumeration


def _check_cap(n, cap):
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > cap:
        raise CapError(f"n = {n} exceeds the enumeration cap {cap}")


def _compatible(eps, i, role) -> bool:
    # role: "left" leg of a pair, "right" leg, or "single"
    if eps is None:
        return True
    want = ANNIHILATE if role == "left" else CREATE
    return eps[i - 1] == want


def iter_partitions_12(n: int, pairs_only: bool = False, eps=None) -> Iterator:
    if eps is not None and len(eps) != n:
        raise ValueError(f"epsilon pattern has length {len(eps)}, expected {n}")
    free = list(range(1, n + 1))

    def rec(remaining, acc):
        if not remaining:
            yield Partition12(n, tuple(acc))
            return
        first, rest = remaining[0], remaining[1:]
        if not pairs_only and _compatible(eps, first, "single"):
            yield from rec(rest, acc + [(first,)])
        if _compatible(eps, first, "left"):
            for idx, j in enumerate(rest):
                if _compatible(eps, j, "right"):
                    yield from rec(rest[:idx] + rest[idx + 1:], acc + [(first, j)])

    yield from rec(free, [])


def enumerate_partitions_12(n: int, pairs_only: bool = False, eps=None, cap: int = CAP_UNCOLORED) -> list:
    _check_cap(n, cap)
    return list(iter_partitions_12(n, pairs_only, eps))


def _forced_pairs(base: Partition12) -> list:
    """Per block: True when the block is a pair whose color is forced by rule (A)(1)."""
    st = compute_stats(base)
    return [len(b) == 2 and st.sr[i] == 0 and st.lcr[i] == 0 and st.cover[i] == 0 for i, b in enumerate(base.blocks)]


def iter_type_d_colorings(base: Partition12) -> Iterator:
    """Color tuples of the type-D colorings of ``base``, by the defining rules.

    Pairs are colored from the largest left leg down; a forced pair takes
    ``(-1)**npr``. Singletons are colored last.
    """
    blocks = base.blocks
    forced = _forced_pairs(base)
    pair_idx = [i for i, b in enumerate(blocks) if len(b) == 2]
    pair_idx.sort(key=lambda i: blocks[i][0], reverse=True)
    sing_idx = [i for i, b in enumerate(blocks) if len(b) == 1]

    def rec(k, colors, negatives):
        if k == len(pair_idx):
            out = list(colors)
            for i in sing_idx:
                out[i] = 1
            if sing_idx:
                out[sing_idx[-1]] = -1 if negatives % 2 else 1
            yield tuple(out)
            return
        i = pair_idx[k]
        choices = [-1 if negatives % 2 else 1] if forced[i] else [1, -1]
        for c in choices:
            colors[i] = c
            yield from rec(k + 1, colors, negatives + (c == -1))
        colors[i] = 0

    yield from rec(0, [0] * len(blocks), 0)


def enumerate_type_d(n: int, eps=None, pairs_only: bool = False, cap: int = CAP_COLORED) -> list:
    """All type-D colored partitions of ``[n]`` (optionally epsilon-compatible)."""
    _check_cap(n, cap)
    out = []
    for base in iter_partitions_12(n, pairs_only, eps):
        for cols in iter_type_d_colorings(base):
            out.append(ColoredPartition(base, cols))
    return out


def validate_type_d(p: ColoredPartition) -> bool:
    """Check a coloring against the type-D rules directly."""
    st = compute_stats(p)
    for i, (b, c) in enumerate(zip(p.blocks, p.colors)):
        if len(b) == 2 and st.sr[i] == st.lcr[i] == st.cover[i] == 0:
            if c != (-1) ** st.npr[i]:
                return False
    sing = [i for i, b in enumerate(p.blocks) if len(b) == 1]
    for i in sing[:-1]:
        if p.colors[i] != 1:
            return False
    if sing and p.colors[sing[-1]] != (-1) ** st.np:
        return False
    return True


def brute_force_type_d(n: int, eps=None, pairs_only: bool = False) -> list:
    """Filter every possible coloring through :func:`validate_type_d`."""
    out = []
    for base in iter_partitions_12(n, pairs_only, eps):
        for cols in product((1, -1), repeat=len(base.blocks)):
            cp = ColoredPartition(base, cols)
            if validate_type_d(cp):
                out.append(cp)
    return out


def type_d_characterization(p: ColoredPartition) -> bool:
    """Even number of negative pairs under every outer component (pair partitions only)."""
    if not p.base.is_pair_partition():
        raise ValueError("the characterization applies to pair partitions")
    for support, _ in outer_components(p.base):
        lo, hi = support[0], support[-1]
        inside = [b for b, c in zip(p.blocks, p.colors) if lo <= b[0] and b[-1] <= hi and c == -1]
        if len(inside) % 2:
            return False
    return True


def characterized_pair_partitions(n: int) -> list:
    """``PD_2(n)`` as all colored pair partitions passing :func:`type_d_characterization`."""
    _check_cap(n, CAP_COLORED)
    out = []
    for base in iter_partitions_12(n, pairs_only=True):
        for cols in product((1, -1), repeat=len(base.blocks)):
            cp = ColoredPartition(base, cols)
            if type_d_characterization(cp):
                out.append(cp)
    return out


def extend_recursive(p: ColoredPartition) -> list:
    """Type-D partitions of ``[m+1]`` grown from a type-D partition of ``{2..m+1}``.

    ``p`` is given on ``[m]`` and read as living on ``{2..m+1}``. The new
    point 1 is either added as a positive singleton, or paired with one of
    the singletons, with the rightmost remaining singleton recolored.
    """
    shifted = [tuple(x + 1 for x in b) for b in p.blocks]
    colors = list(p.colors)
    m1 = p.n + 1
    np_old = sum(1 for b, c in zip(shifted, colors) if len(b) == 2 and c == -1)
    sing = [i for i, b in enumerate(shifted) if len(b) == 1]
    out = [_make(m1, [(1,)] + shifted, [1] + colors)]
    if len(sing) >= 2:
        for i in sing:
            rest = [j for j in sing if j != i]
            last = max(rest, key=lambda j: shifted[j][0])
            for c in (1, -1):
                blocks = [b for j, b in enumerate(shifted) if j != i] + [(1,) + shifted[i]]
                cols = [col for j, col in enumerate(colors) if j != i] + [c]
                np_new = np_old + (c == -1)
                pos = [j for j in range(len(shifted)) if j != i].index(last)
                cols[pos] = -1 if np_new % 2 else 1
                out.append(_make(m1, blocks, cols))
    elif len(sing) == 1:
        i = sing[0]
        blocks = [b for j, b in enumerate(shifted) if j != i] + [(1,) + shifted[i]]
        cols = [col for j, col in enumerate(colors) if j != i] + [-1 if np_old % 2 else 1]
        out.append(_make(m1, blocks, cols))
    return out


def _make(n, blocks, colors) -> ColoredPartition:
    base = Partition12(n, tuple(blocks))
    lookup = {tuple(sorted(b)): c for b, c in zip(blocks, colors)}
    return ColoredPartition(base, tuple(lookup[b] for b in base.blocks))


def recursive_type_d(n: int) -> list:
    """All of ``PD_{1,2}(n)`` built by repeated :func:`extend_recursive` from the empty partition."""
    level = [ColoredPartition(Partition12(0, ()), ())]
    for _ in range(n):
        level = [q for p in level for q in extend_recursive(p)]
    return level


def dumps_jsonl(parts) -> str:
    return "\n".join(json.dumps(p.to_json()) for p in parts)
