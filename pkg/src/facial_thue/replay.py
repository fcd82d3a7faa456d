"""Recover the input vector of a run from its log.

A log is the final colouring together with the record. A forward pass over
the record alone rebuilds the sets of uncoloured edges at the start of every
step (the edge handled in step ``i`` is the minimum of that set). A backward
pass then undoes the steps one at a time: a plain step gives away the colour
the edge received, and a step that hit a repetition tells us the colour the
edge must have had to complete it, namely the colour of its partner in the
first half of the named path.
"""

from __future__ import annotations

from typing import Sequence

from facial_thue.coloring import ListAssignment, Log
from facial_thue.errors import CorruptRecord, InconsistentLog, InvalidDescriptor
from facial_thue.facial import FacialPath, PathDescriptor, decode_path
from facial_thue.plane_graph import PlaneGraph


def _trim_padding(record: Sequence[PathDescriptor | None], t: int | None):
    record = tuple(record)
    if t is None:
        t = len(record)
    if t > len(record):
        raise CorruptRecord(f"record has {len(record)} entries, t={t} requested")
    return record[:t]


def _forward(g: PlaneGraph, record: Sequence[PathDescriptor | None]):
    """Uncoloured sets J_1.. and the decoded path of every non-empty step."""
    current = set(range(1, g.m + 1))
    sets = [frozenset(current)]
    paths: list[FacialPath | None] = []
    for i, d in enumerate(record, start=1):
        if not current:
            if any(r is not None for r in record[i - 1:]):
                raise CorruptRecord(f"step {i}: all edges coloured but the record goes on")
            break
        j = min(current)
        if d is None:
            current.discard(j)
            paths.append(None)
        else:
            try:
                path = decode_path(g, j, d)
            except InvalidDescriptor as exc:
                raise CorruptRecord(f"step {i}: {exc}") from None
            stray = [x for x in path.edges if x in current and x != j]
            if stray:
                raise CorruptRecord(
                    f"step {i}: path {path.edges} uses uncoloured edges {stray}"
                )
            current.update(path.edges[d.h:])
            paths.append(path)
        sets.append(frozenset(current))
    return sets, paths


def reconstruct_uncolored_sets(
    g: PlaneGraph, record: Sequence[PathDescriptor | None], t: int | None = None
) -> list[frozenset[int]]:
    """Uncoloured edge sets ``[J_1, ..., J_{s+1}]`` for the ``s`` executed steps.

    Empty entries after every edge got coloured are accepted as padding
    and dropped, so ``s`` may be smaller than ``t``.
    """
    sets, _ = _forward(g, _trim_padding(record, t))
    return sets


def invert_log(
    g: PlaneGraph, lists: ListAssignment, log: Log, t: int | None = None
) -> tuple[int, ...]:
    """The unique input vector whose run produced ``log``.

    ``t`` defaults to the record length; trailing padding is truncated to
    the steps actually executed.
    """
    coloring, record = log
    if len(coloring) != g.m:
        raise InconsistentLog(f"colouring has {len(coloring)} entries for {g.m} edges")
    record = _trim_padding(record, t)
    sets, paths = _forward(g, record)
    steps = len(paths)

    colour = list(coloring)
    for x in sets[-1]:
        if colour[x - 1]:
            raise InconsistentLog(f"edge {x} should be uncoloured but has colour {colour[x - 1]}")
    inputs = [0] * steps
    for i in range(steps, 0, -1):
        j = min(sets[i - 1])
        d = record[i - 1]
        if d is None:
            c = colour[j - 1]
            pos = lists.position(j, c)
            if pos is None:
                raise InconsistentLog(f"step {i}: colour {c} of edge {j} is not in its list")
            colour[j - 1] = 0
        else:
            path = paths[i - 1].edges
            h = d.h
            first, second = path[:h], path[h:]
            if any(colour[x - 1] for x in second):
                raise InconsistentLog(f"step {i}: second half of {path} should be uncoloured")
            mirror = colour[first[d.q - h - 1] - 1]
            pos = lists.position(j, mirror)
            if pos is None:
                raise InconsistentLog(f"step {i}: colour {mirror} is not in the list of edge {j}")
            for x, y in zip(first, second):
                if y != j:
                    if not colour[x - 1]:
                        raise InconsistentLog(f"step {i}: first-half edge {x} is uncoloured")
                    colour[y - 1] = colour[x - 1]
        inputs[i - 1] = pos
    if any(colour):
        raise InconsistentLog("undoing every step leaves coloured edges behind")
    return tuple(inputs)
