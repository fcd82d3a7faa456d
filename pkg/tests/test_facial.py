import random

import pytest
from hypothesis import given, settings, strategies as st

from facial_thue.errors import (
    EdgeNotOnPath,
    InvalidDescriptor,
    NotFacial,
    OddLength,
    UncolouredEdge,
)
from facial_thue.facial import (
    FacialPath,
    PathDescriptor,
    decode_path,
    encode_path,
    enumerate_facial_paths,
    find_repetition,
    verify_coloring,
)

from conftest import family_graph, small_families

D = PathDescriptor


def oracle_find(g, colouring, e):
    """Smallest canonical descriptor among repetitive even paths through e."""
    best = None
    for path in enumerate_facial_paths(g, g.max_walk_length):
        if len(path) % 2 or e not in path.edges:
            continue
        cols = [colouring[x - 1] for x in path.edges]
        h = len(cols) // 2
        if 0 in cols or cols[:h] != cols[h:]:
            continue
        d = encode_path(g, e, path)
        if best is None or d < best[1]:
            best = (path, d)
    return best


def test_descriptor_validation():
    with pytest.raises(InvalidDescriptor):
        D(1, 1, 1, 1)
    with pytest.raises(InvalidDescriptor):
        D(2, 5, 1, 1)
    with pytest.raises(InvalidDescriptor):
        D(1, 2, 3, 1)
    assert D(1, 2, 1, 1) < D(1, 2, 1, 2) < D(2, 3, 1, 1)


def test_descriptor_count_per_h():
    for h in range(1, 6):
        ds = {(h, q, a, o) for q in range(h + 1, 2 * h + 1) for a in (1, 2) for o in (1, 2)}
        assert len(ds) == 4 * h
        for d in ds:
            D(*d)


def test_decode_p4_examples(p4):
    assert decode_path(p4, 2, D(1, 2, 1, 1)).edges == (1, 2)
    rev = decode_path(p4, 2, D(1, 2, 2, 2))
    assert rev.edges == (1, 2)
    assert rev.witness == (0, 4, "reverse")


def test_decode_turning_point_is_not_a_path(p4):
    # appearance 2 of e3 sits right after appearance 1: the window is e3 e3
    with pytest.raises(InvalidDescriptor):
        decode_path(p4, 3, D(1, 2, 2, 1))
    assert decode_path(p4, 3, D(1, 2, 1, 1)).edges == (2, 3)


def test_decode_window_longer_than_walk():
    g = family_graph("cycle", 3)
    with pytest.raises(InvalidDescriptor):
        decode_path(g, 1, D(2, 3, 1, 1))


def test_encode_p4_prefers_smallest_realization(p4):
    assert encode_path(p4, 2, (1, 2)) == D(1, 2, 1, 1)
    assert encode_path(p4, 2, (2, 1)) == D(1, 2, 1, 1)


def test_encode_length_two_forces_q2(p4):
    d = encode_path(p4, 1, (1, 2))
    assert (d.h, d.q) == (1, 2)


def test_encode_cycle6_third_position():
    g = family_graph("cycle", 6)
    assert g.walk_edges[0] == (1, 2, 3, 4, 5, 6)
    assert encode_path(g, 3, (1, 2, 3, 4)) == D(2, 3, 1, 1)


def test_encode_errors(p4):
    with pytest.raises(OddLength):
        encode_path(p4, 2, (1, 2, 3))
    with pytest.raises(EdgeNotOnPath):
        encode_path(p4, 3, (1, 2))
    g = family_graph("grid", 3, 3)
    with pytest.raises(NotFacial):
        encode_path(g, 1, (1, 12))


def test_enumerate_p4(p4):
    paths = enumerate_facial_paths(p4, 6)
    assert [p.edges for p in paths] == [(1,), (2,), (3,), (1, 2), (2, 3), (1, 2, 3)]


def test_enumerate_c3_stops_at_two():
    paths = enumerate_facial_paths(family_graph("cycle", 3), 3)
    assert sorted(len(p) for p in paths) == [1, 1, 1, 2, 2, 2]


@pytest.mark.parametrize("fam", [("wheel", 6), ("grid", 3, 4), ("cycle", 7)])
def test_enumerate_single_edges(fam):
    g = family_graph(*fam)
    assert len(enumerate_facial_paths(g, 1)) == g.m


def test_enumerated_witnesses_hold(p4):
    g = family_graph("grid", 3, 3)
    for p in enumerate_facial_paths(g, g.max_walk_length):
        f, start, direction = p.witness
        walk = g.walk_edges[f]
        window = tuple(walk[(start + i) % len(walk)] for i in range(len(p)))
        assert p.edges == (window if direction == "forward" else window[::-1])


def test_find_repetition_p3(p3):
    path, d = find_repetition(p3, [5, 5], 2)
    assert path.edges == (1, 2)
    assert d == D(1, 2, 1, 1)
    assert find_repetition(p3, [5, 7], 2) is None
    with pytest.raises(UncolouredEdge):
        find_repetition(p3, [5, 0], 2)


def test_find_repetition_prefers_short_repetition():
    g = family_graph("grid", 3, 3)
    outer = g.walk_edges[1]
    assert outer == (1, 2, 7, 11, 12, 10, 5, 3)
    c = [0] * g.m
    # outer walk 1 2 7 11 | 12 ... coloured x y x y | y so e11 closes (1,2,7,11) and (11,12)
    for e, col in zip((1, 2, 7, 11, 12, 10, 5, 3), (1, 2, 1, 2, 2, 3, 4, 5)):
        c[e - 1] = col
    for e, col in zip((4, 6, 8, 9), (6, 7, 8, 9)):
        c[e - 1] = col
    path, d = find_repetition(g, c, 11)
    assert d.h == 1 and set(path.edges) == {11, 12}
    c[12 - 1] = 9
    path, d = find_repetition(g, c, 11)
    assert d.h == 2 and path.edges == (1, 2, 7, 11)
    assert d == oracle_find(g, c, 11)[1]


def test_verify_examples(p4):
    L = [range(1, 13)] * 3
    assert verify_coloring(p4, L, [1, 2, 1]).ok
    bad = verify_coloring(p4, L, [1, 1, 2])
    assert [p.edges for p in bad.repetitive_paths] == [(1, 2)]
    rep = verify_coloring(p4, [[2, 3]] * 3, [1, 2, 3])
    assert rep.list_violations == [1]
    assert verify_coloring(p4, L, [1, 0, 1]).uncoloured == [2]


@given(st.lists(st.integers(1, 3), min_size=1, max_size=8))
def test_reversal_closure_of_repetitions(half):
    seq = half + half
    rev = seq[::-1]
    h = len(half)
    assert rev[:h] == rev[h:]


@pytest.mark.parametrize("fam", [("path", 7), ("cycle", 9), ("wheel", 6), ("grid", 3, 4)])
def test_encode_decode_roundtrip(fam):
    g = family_graph(*fam)
    for p in enumerate_facial_paths(g, g.max_walk_length):
        if len(p) % 2:
            continue
        for e in p.edges:
            d = encode_path(g, e, p)
            assert p.same_path(decode_path(g, e, d))


@pytest.mark.parametrize("fam", [("path", 8), ("cycle", 8), ("wheel", 7), ("grid", 3, 3)])
def test_decodable_descriptors_at_most_4h(fam):
    g = family_graph(*fam)
    for e in range(1, g.m + 1):
        for h in range(1, g.max_walk_length // 2 + 1):
            ok = 0
            for q in range(h + 1, 2 * h + 1):
                for a in (1, 2):
                    for o in (1, 2):
                        try:
                            decode_path(g, e, D(h, q, a, o))
                            ok += 1
                        except InvalidDescriptor:
                            pass
            assert ok <= 4 * h


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(small_families(20)), st.integers(0, 2**32 - 1))
def test_find_repetition_matches_oracle(fam, seed):
    g = family_graph(*fam)
    rng = random.Random(seed)
    c = [0 if rng.random() < 0.25 else rng.randint(1, 3) for _ in range(g.m)]
    e = rng.randint(1, g.m)
    c[e - 1] = c[e - 1] or 1
    got, want = find_repetition(g, c, e), oracle_find(g, c, e)
    if want is None:
        assert got is None
    else:
        assert got[1] == want[1]
        assert want[0].same_path(got[0])
