"""The resampling colourer.

Edges are processed in index order. Each step colours the uncoloured edge
of smallest index with the colour at a given position of its list; if that
creates a repetitively coloured facial path, the half of the path holding
the edge is uncoloured again and the path's descriptor is written to the
record. The positions come either from an explicit input vector
(:func:`run_deterministic`) or from a seeded generator
(:func:`run_randomized`).

Random positions are drawn by ``mt19937-rejection-v1``: Python's
``random.Random(seed)`` (MT19937) supplies ``getrandbits(b)`` with
``b = (k - 1).bit_length()``, values ``>= k`` are rejected, and the accepted
value plus one is the list position. The stream is fixed by the seed alone.
"""

from __future__ import annotations

import enum
import heapq
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, NamedTuple, Sequence

from facial_thue.errors import (
    ColoringError,
    EmptyInput,
    InvalidDescriptor,
    InvariantBreach,
    ListSizeMismatch,
)
from facial_thue.facial import (
    PathDescriptor,
    enumerate_facial_paths,
    find_repetition,
    verify_coloring,
)
from facial_thue.plane_graph import PlaneGraph

RNG_NAME = "mt19937-rejection-v1"
MAX_K = 64


class ListAssignment(Sequence):
    """Ordered colour lists, one per edge, all of the same size ``k``.

    The order inside a list is the order in which input positions address
    colours: position 1 is ``lists[e - 1][0]``.
    """

    def __init__(self, lists: Sequence[Sequence[int]]):
        lists = tuple(tuple(x) for x in lists)
        if not lists:
            raise ListSizeMismatch("no lists given")
        k = len(lists[0])
        for e, lst in enumerate(lists, start=1):
            if len(lst) != k:
                raise ListSizeMismatch(f"list of edge {e} has {len(lst)} colours, expected {k}")
            if len(set(lst)) != k:
                raise ListSizeMismatch(f"list of edge {e} repeats a colour")
            if any(not isinstance(c, int) or isinstance(c, bool) or c <= 0 for c in lst):
                raise ListSizeMismatch(f"list of edge {e} holds a non-positive colour")
        if not 1 <= k <= MAX_K:
            raise ListSizeMismatch(f"list size {k} outside 1..{MAX_K}")
        self.lists = lists
        self.k = k
        self._position = [{c: i for i, c in enumerate(lst, start=1)} for lst in lists]

    @classmethod
    def uniform(cls, m: int, k: int = 12) -> "ListAssignment":
        return cls([tuple(range(1, k + 1))] * m)

    @classmethod
    def random_distinct(
        cls, m: int, k: int = 12, seed: int = 0, palette: int | None = None
    ) -> "ListAssignment":
        """Each edge gets ``k`` distinct colours sampled from ``1..palette``."""
        palette = palette or 3 * k
        if palette < k:
            raise ListSizeMismatch(f"palette {palette} smaller than k={k}")
        rng = random.Random(seed)
        return cls([tuple(rng.sample(range(1, palette + 1), k)) for _ in range(m)])

    def __getitem__(self, i):
        return self.lists[i]

    def __len__(self) -> int:
        return len(self.lists)

    def colour(self, edge: int, position: int) -> int:
        return self.lists[edge - 1][position - 1]

    def position(self, edge: int, colour: int) -> int | None:
        return self._position[edge - 1].get(colour)


class Status(str, enum.Enum):
    COMPLETED = "Completed"
    EXHAUSTED = "Exhausted"


class Log(NamedTuple):
    coloring: tuple[int, ...]
    record: tuple[PathDescriptor | None, ...]


class TraceStep(NamedTuple):
    step: int
    edge: int
    colour: int
    descriptor: PathDescriptor | None
    coloured: int


@dataclass
class Outcome:
    """Result of a run.

    ``record`` has one entry per executed step; steps a longer input
    vector did not reach are left out (they would be empty).
    ``inputs`` is the prefix of the input vector actually consumed.
    """

    status: Status
    coloring: tuple[int, ...]
    record: tuple[PathDescriptor | None, ...]
    steps_used: int
    uncoloured: tuple[int, ...]
    inputs: tuple[int, ...]
    trace: list[TraceStep] | None = field(default=None, repr=False)

    @property
    def completed(self) -> bool:
        return self.status is Status.COMPLETED

    @property
    def log(self) -> Log:
        return Log(self.coloring, self.record)

    @property
    def repetitions(self) -> int:
        return sum(1 for r in self.record if r is not None)


class DieRoller:
    """Seeded source of list positions in ``1..k``."""

    name = RNG_NAME

    def __init__(self, seed: int, k: int):
        self._rng = random.Random(seed)
        self.k = k
        self._bits = (k - 1).bit_length()

    def __call__(self) -> int:
        while True:
            r = self._rng.getrandbits(self._bits) if self._bits else 0
            if r < self.k:
                return r + 1

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self()


def _check_step_invariants(g, colour, heap, paths, step):
    open_set = set(heap)
    blank = {e for e in range(1, g.m + 1) if not colour[e - 1]}
    if open_set != blank:
        raise InvariantBreach(f"step {step}: uncoloured set {sorted(blank)} != J {sorted(open_set)}")
    bad = verify_coloring(g, None, colour, paths).repetitive_paths
    if bad:
        raise InvariantBreach(f"step {step}: repetitive facial path {bad[0].edges} before colouring")


def _run(
    g: PlaneGraph,
    lists: ListAssignment,
    draw: Callable[[], int],
    limit: int | None,
    trace: bool,
    check_invariants: bool,
) -> Outcome:
    if len(lists) != g.m:
        raise ListSizeMismatch(f"{len(lists)} lists for {g.m} edges")
    colour = [0] * g.m
    heap = list(range(1, g.m + 1))
    record: list[PathDescriptor | None] = []
    inputs: list[int] = []
    steps: list[TraceStep] | None = [] if trace else None
    paths = enumerate_facial_paths(g, g.max_walk_length) if check_invariants else None

    while heap and (limit is None or len(inputs) < limit):
        step = len(inputs) + 1
        if check_invariants:
            _check_step_invariants(g, colour, heap, paths, step)
        pos = draw()
        if not 1 <= pos <= lists.k:
            raise ColoringError(f"input entry {pos} at step {step} outside 1..{lists.k}")
        inputs.append(pos)
        j = heap[0]
        colour[j - 1] = lists.colour(j, pos)
        hit = find_repetition(g, colour, j)
        if hit is None:
            heapq.heappop(heap)
            record.append(None)
        else:
            path, d = hit
            for x in path.edges[d.h:]:
                colour[x - 1] = 0
                if x != j:
                    heapq.heappush(heap, x)
            record.append(d)
        if steps is not None:
            steps.append(
                TraceStep(step, j, lists.colour(j, pos), record[-1], sum(1 for c in colour if c))
            )

    return Outcome(
        status=Status.EXHAUSTED if heap else Status.COMPLETED,
        coloring=tuple(colour),
        record=tuple(record),
        steps_used=len(inputs),
        uncoloured=tuple(sorted(heap)),
        inputs=tuple(inputs),
        trace=steps,
    )


def run_deterministic(
    g: PlaneGraph,
    lists: ListAssignment,
    inputs: Sequence[int],
    *,
    trace: bool = False,
    check_invariants: bool = False,
) -> Outcome:
    """Run the colourer on an explicit input vector of list positions."""
    if not len(inputs):
        raise EmptyInput("input vector is empty")
    it = iter(inputs)
    return _run(g, lists, lambda: next(it), len(inputs), trace, check_invariants)


def run_randomized(
    g: PlaneGraph,
    lists: ListAssignment,
    seed: int,
    max_steps: int | None = None,
    *,
    trace: bool = False,
    check_invariants: bool = False,
) -> Outcome:
    """Run the colourer on positions drawn lazily from a seeded generator.

    ``max_steps=None`` runs until every edge is coloured. The consumed
    positions are returned in ``Outcome.inputs``, so feeding them to
    :func:`run_deterministic` reproduces the run.
    """
    if max_steps is not None and max_steps < 1:
        raise EmptyInput("max_steps must be at least 1")
    return _run(g, lists, DieRoller(seed, lists.k), max_steps, trace, check_invariants)


# serialization

def descriptor_to_json(d: PathDescriptor | None):
    return None if d is None else list(d.as_tuple())


def descriptor_from_json(value) -> PathDescriptor | None:
    if value is None:
        return None
    if not isinstance(value, list):
        raise InvalidDescriptor(f"record entry {value!r} is neither null nor a 4-tuple")
    return PathDescriptor.from_sequence(value)


def format_trace(steps: Sequence[TraceStep]) -> str:
    """Tab-separated trace, one line per step: step, edge, colour, record."""
    lines = ["step\tedge\tcolour\trecord"]
    for s in steps:
        rec = "null" if s.descriptor is None else ",".join(map(str, s.descriptor.as_tuple()))
        lines.append(f"{s.step}\t{s.edge}\t{s.colour}\t{rec}")
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> list[tuple[int, int, int, PathDescriptor | None]]:
    rows = []
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].split("\t") != ["step", "edge", "colour", "record"]:
        raise InvalidDescriptor("trace must start with the header step/edge/colour/record")
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split("\t")
        try:
            step, edge, colour = (int(x) for x in parts[:3])
            rec = parts[3]
            d = None if rec == "null" else PathDescriptor.from_sequence(
                [int(x) for x in rec.split(",")]
            )
        except (ValueError, IndexError):
            raise InvalidDescriptor(f"malformed trace line {lineno}: {line!r}") from None
        rows.append((step, edge, colour, d))
    return rows


def log_to_json(outcome: Outcome, **extra) -> str:
    doc = {
        "status": outcome.status.value,
        "steps_used": outcome.steps_used,
        "coloring": list(outcome.coloring),
        "record": [descriptor_to_json(r) for r in outcome.record],
    }
    doc.update(extra)
    return json.dumps(doc, indent=1) + "\n"


def log_from_json(text: str) -> Log:
    data = json.loads(text)
    try:
        coloring = tuple(int(c) for c in data["coloring"])
        record = tuple(descriptor_from_json(r) for r in data["record"])
    except (KeyError, TypeError):
        raise InvalidDescriptor("log document needs 'coloring' and 'record' arrays") from None
    return Log(coloring, record)
