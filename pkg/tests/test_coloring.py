import random

import pytest
from hypothesis import given, settings, strategies as st

from facial_thue.coloring import (
    DieRoller,
    ListAssignment,
    Status,
    format_trace,
    log_from_json,
    log_to_json,
    parse_trace,
    run_deterministic,
    run_randomized,
)
from facial_thue.errors import ColoringError, EmptyInput, InvalidDescriptor, ListSizeMismatch
from facial_thue.facial import PathDescriptor, decode_path, verify_coloring

from conftest import family_graph, small_families


def test_p3_hand_simulation(p3):
    L = ListAssignment.uniform(2, 12)
    out = run_deterministic(p3, L, (3, 3, 4), trace=True)
    assert out.status is Status.COMPLETED
    assert out.coloring == (3, 4)
    assert out.record == (None, PathDescriptor(1, 2, 1, 1), None)
    assert out.uncoloured == ()
    assert [(s.step, s.edge, s.colour) for s in out.trace] == [(1, 1, 3), (2, 2, 3), (3, 2, 4)]


def test_single_edge_completes_in_one_step():
    g = family_graph("path", 2)
    L = ListAssignment([tuple(range(20, 32))])
    out = run_deterministic(g, L, (7,))
    assert out.completed and out.steps_used == 1
    assert out.coloring == (26,)
    assert out.record == (None,)


def test_p3_truncated_is_exhausted(p3):
    out = run_deterministic(p3, ListAssignment.uniform(2), (3, 3))
    assert out.status is Status.EXHAUSTED
    assert out.uncoloured == (2,)
    assert out.coloring == (3, 0)


def test_randomized_is_reproducible():
    g = family_graph("grid", 4, 4)
    L = ListAssignment.uniform(g.m, 12)
    assert run_randomized(g, L, 99) == run_randomized(g, L, 99)


def test_randomized_replays_deterministically():
    g = family_graph("wheel", 9)
    L = ListAssignment.random_distinct(g.m, 5, seed=3)
    out = run_randomized(g, L, 4, 500)
    again = run_deterministic(g, L, out.inputs)
    assert again == out


def test_path100_completes_and_verifies():
    g = family_graph("path", 100)
    L = ListAssignment.uniform(g.m)
    out = run_randomized(g, L, 11)
    assert out.completed
    assert verify_coloring(g, L, out.coloring).ok


def test_one_step_colours_one_edge():
    g = family_graph("wheel", 20)
    out = run_randomized(g, ListAssignment.uniform(g.m), 0, max_steps=1)
    assert out.status is Status.EXHAUSTED
    assert sum(1 for c in out.coloring if c) == 1


def test_die_roller_stream_is_frozen():
    d = DieRoller(0, 12)
    assert [d() for _ in range(10)] == [7, 7, 1, 5, 9, 8, 7, 5, 8, 6]
    d = DieRoller(2026, 4)
    assert [d() for _ in range(10)] == [1, 2, 3, 4, 3, 3, 4, 4, 1, 4]
    d = DieRoller(5, 1)
    assert [d(), d()] == [1, 1]


def test_die_roller_is_roughly_uniform():
    d = DieRoller(1, 12)
    counts = [0] * 12
    for _ in range(12000):
        counts[d() - 1] += 1
    assert min(counts) > 850 and max(counts) < 1150


def test_input_errors(p3):
    L = ListAssignment.uniform(2)
    with pytest.raises(EmptyInput):
        run_deterministic(p3, L, ())
    with pytest.raises(ListSizeMismatch):
        run_deterministic(p3, ListAssignment.uniform(3), (1,))
    with pytest.raises(ColoringError):
        run_deterministic(p3, L, (13,))
    with pytest.raises(ListSizeMismatch):
        ListAssignment([(1, 2), (1, 2, 3)])
    with pytest.raises(ListSizeMismatch):
        ListAssignment([(1, 1)])
    with pytest.raises(ListSizeMismatch):
        ListAssignment([(0, 1)])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(small_families(16)), st.integers(0, 10**6), st.integers(2, 5))
def test_loop_invariants_hold(fam, seed, k):
    g = family_graph(*fam)
    L = ListAssignment.uniform(g.m, k)
    # check_invariants raises InvariantBreach on a repetitive pre-step colouring or J drift
    out = run_randomized(g, L, seed, 30 * g.m, trace=True, check_invariants=True)
    used = 0
    for s in out.trace:
        used += s.descriptor.h if s.descriptor else 0
        assert s.coloured == s.step - used
        assert s.coloured >= 1


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(small_families(12)), st.integers(0, 10**6))
def test_every_record_entry_decodes_to_a_repetition(fam, seed):
    g = family_graph(*fam)
    L = ListAssignment.uniform(g.m, 3)
    out = run_randomized(g, L, seed, 10 * g.m, trace=True)
    for s in out.trace:
        if s.descriptor is None:
            continue
        before = run_deterministic(g, L, out.inputs[: s.step - 1]).coloring if s.step > 1 else (0,) * g.m
        state = list(before)
        state[s.edge - 1] = s.colour
        path = decode_path(g, s.edge, s.descriptor)
        cols = [state[x - 1] for x in path.edges]
        h = s.descriptor.h
        assert 0 not in cols and cols[:h] == cols[h:]


def test_trace_and_log_roundtrip():
    g = family_graph("grid", 3, 3)
    L = ListAssignment.uniform(g.m, 4)
    out = run_randomized(g, L, 8, 200, trace=True)
    rows = parse_trace(format_trace(out.trace))
    assert [r[3] for r in rows] == list(out.record)
    assert [(r[0], r[1], r[2]) for r in rows] == [(s.step, s.edge, s.colour) for s in out.trace]
    assert log_from_json(log_to_json(out)) == out.log


def test_trace_uses_null_marker():
    g = family_graph("path", 3)
    out = run_deterministic(g, ListAssignment.uniform(2), (3, 3, 4), trace=True)
    assert format_trace(out.trace).splitlines() == [
        "step\tedge\tcolour\trecord", "1\t1\t3\tnull", "2\t2\t3\t1,2,1,1", "3\t2\t4\tnull",
    ]
    with pytest.raises(InvalidDescriptor):
        parse_trace("step\tedge\tcolour\trecord\n1\t1\t3\t1,2\n")


def test_random_distinct_lists():
    L = ListAssignment.random_distinct(10, 5, seed=1, palette=9)
    assert all(len(set(x)) == 5 and max(x) <= 9 for x in L)
