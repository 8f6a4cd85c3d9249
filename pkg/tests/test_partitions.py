import pytest
from hypothesis import given
from hypothesis import strategies as st

from fockd.partitions import (
    CapError,
    ColoredPartition,
    EpsilonPattern,
    Partition12,
    SetPartition,
    brute_force_type_d,
    characterized_pair_partitions,
    compute_stats,
    connected_components,
    covers,
    crosses,
    dumps_jsonl,
    enumerate_partitions_12,
    enumerate_type_d,
    iter_type_d_colorings,
    outer_components,
    recursive_type_d,
    type_d_characterization,
    validate_type_d,
)
from fockd.spectral import moments_from_jacobi


@st.composite
def partitions_12(draw, max_n=8):
    n = draw(st.integers(0, max_n))
    order = draw(st.permutations(list(range(1, n + 1))))
    blocks, i = [], 0
    while i < n:
        if i + 1 < n and draw(st.booleans()):
            blocks.append((order[i], order[i + 1]))
            i += 2
        else:
            blocks.append((order[i],))
            i += 1
    return Partition12(n, tuple(blocks))


def test_involution_numbers():
    # |P_{1,2}(n)| are the involution numbers, |P_2(2k)| = (2k-1)!!
    assert [len(enumerate_partitions_12(n)) for n in range(8)] == [1, 1, 2, 4, 10, 26, 76, 232]
    assert [len(enumerate_partitions_12(n, pairs_only=True)) for n in range(0, 11, 2)] == [1, 1, 3, 15, 105, 945]


def test_pd2_of_four():
    got = {p.to_text() for p in enumerate_type_d(4, pairs_only=True)}
    assert got == {"1-2:+|3-4:+", "1-3:+|2-4:+", "1-3:-|2-4:-", "1-4:+|2-3:+", "1-4:-|2-3:-"}
    assert len(enumerate_type_d(4, eps=EpsilonPattern.parse("11**"), pairs_only=True)) == 4


def test_frozen_type_d_counts():
    # oracle: three independent constructions, agreeing through n = 8
    assert [len(enumerate_type_d(n)) for n in range(9)] == [1, 1, 2, 6, 17, 69, 242, 1138, 4633]
    pd2 = [len(enumerate_type_d(n, pairs_only=True)) for n in (0, 2, 4, 6, 8)]
    # with every inner product 1 the vacuum moment at q = 1 counts PD_2(2k)
    assert pd2 == [int(m(1)) for m in moments_from_jacobi(8).moments[::2]] == [1, 1, 5, 49, 701]


def test_odd_pair_set_is_empty():
    assert enumerate_type_d(3, pairs_only=True) == []


def test_coloring_example_with_singletons():
    base = Partition12(6, ((1,), (2, 5), (3,), (4, 6)))
    cols = list(iter_type_d_colorings(base))
    assert len(cols) == 4
    for c in cols:
        p = ColoredPartition(base, c)
        assert p.color_of((1,)) == 1
        assert p.color_of((3,)) == (-1) ** len(p.negative_pairs)


def test_forced_colors_examples():
    crossing = Partition12(4, ((1, 3), (2, 4)))
    assert {c for c in iter_type_d_colorings(crossing)} == {(1, 1), (-1, -1)}
    nested_single = Partition12(3, ((1, 3), (2,)))
    assert {c for c in iter_type_d_colorings(nested_single)} == {(1, 1), (-1, -1)}


def test_component_examples():
    p = SetPartition(8, ((1, 3, 7), (2, 8), (4, 5, 6)))
    comps = {c[0] for c in connected_components(p)}
    assert comps == {(1, 2, 3, 7, 8), (4, 5, 6)}
    assert [c[0] for c in outer_components(p)] == [(1, 2, 3, 7, 8)]
    q = SetPartition(8, ((1, 3, 6), (2, 5), (4,), (7, 8)))
    st_q = compute_stats(q)
    assert st_q.outsr == 1 and st_q.out == 2


def test_cover_and_cross_relations():
    assert covers((1, 4), (2, 3)) and not covers((2, 3), (1, 4))
    assert covers((1, 3), (2,))
    assert crosses((1, 3), (2, 4)) and crosses((2, 4), (1, 3))
    assert not crosses((1, 2), (3, 4))


@given(partitions_12())
def test_coloring_count_matches_forced_pairs(base):
    cols = list(iter_type_d_colorings(base))
    st_ = compute_stats(base)
    assert len(cols) == 2 ** (len(base.pairs) - st_.outsr)
    assert len(set(cols)) == len(cols)
    assert all(validate_type_d(ColoredPartition(base, c)) for c in cols)


@given(partitions_12())
def test_statistics_sanity(base):
    s = compute_stats(base)
    assert s.np == s.cnp == s.npssr == 0
    assert s.outsr <= s.out
    assert sum(s.cover[i] for i, b in enumerate(base.blocks) if len(b) == 1) == s.cs
    sup = sorted(x for c in connected_components(base) for x in c[0])
    assert sup == list(range(1, base.n + 1))
    if s.cr == 0:
        assert all(c[1] == 1 for c in connected_components(base))


@given(partitions_12(max_n=7))
def test_pair_characterization_matches_rules(base):
    if not base.is_pair_partition():
        return
    from itertools import product

    rule = set(iter_type_d_colorings(base))
    for c in product((1, -1), repeat=len(base.blocks)):
        assert (c in rule) == type_d_characterization(ColoredPartition(base, c))


@given(partitions_12())
def test_text_round_trip(base):
    assert Partition12.from_text(base.to_text()) == base
    for c in iter_type_d_colorings(base):
        p = ColoredPartition(base, c)
        assert ColoredPartition.from_text(p.to_text()) == p


@pytest.mark.parametrize("n", range(0, 8))
def test_three_routes(n):
    rule = set(enumerate_type_d(n))
    rec = recursive_type_d(n)
    assert len(rec) == len(set(rec)) == len(rule)
    assert set(rec) == rule == set(brute_force_type_d(n))
    assert set(characterized_pair_partitions(n)) == {p for p in rule if p.base.is_pair_partition()}


def test_epsilon_compatibility():
    eps = EpsilonPattern.parse("1*1*")
    parts = enumerate_partitions_12(4, eps=eps)
    for p in parts:
        for b in p.blocks:
            if len(b) == 2:
                assert eps[b[0] - 1] == "1" and eps[b[1] - 1] == "*"
            else:
                assert eps[b[0] - 1] == "*"
    assert [p.to_text() for p in parts] == ["1-2|3-4"]
    assert {p.to_text() for p in enumerate_partitions_12(3, eps=EpsilonPattern.parse("1**"))} == {"1-2|3", "1-3|2"}


def test_epsilon_parse_errors():
    with pytest.raises(ValueError):
        EpsilonPattern.parse("1x*")
    with pytest.raises(ValueError):
        enumerate_partitions_12(3, eps=EpsilonPattern.parse("11"))


def test_caps():
    with pytest.raises(CapError):
        enumerate_type_d(11)
    with pytest.raises(CapError):
        enumerate_partitions_12(13)


def test_validation_errors():
    with pytest.raises(ValueError):
        Partition12(3, ((1, 2, 3),))
    with pytest.raises(ValueError):
        SetPartition(3, ((1, 2),))
    with pytest.raises(ValueError):
        ColoredPartition(Partition12(2, ((1, 2),)), (2,))
    with pytest.raises(TypeError):
        ColoredPartition(SetPartition(3, ((1, 2, 3),)), (1,))
    with pytest.raises(ValueError):
        ColoredPartition.from_text("1-2:x")


def test_jsonl_dump():
    text = dumps_jsonl(enumerate_type_d(2, pairs_only=True))
    assert text.startswith('{"blocks": [[1, 2]], "colors": [1], "stats": {"cr": 0')


def test_total_weight_at_q_one():
    # each base contributes 2**(pairs - outsr) colorings; sums agree with the listing
    for n in range(7):
        total = sum(2 ** (len(b.pairs) - compute_stats(b).outsr) for b in enumerate_partitions_12(n))
        assert total == len(enumerate_type_d(n))
