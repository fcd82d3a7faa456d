"""Facial paths, their descriptors, and repetition search.

A facial path is a vertex-simple path whose edges occur contiguously (with
wrap-around) in one face walk, read in either direction. Relative to an edge
``e`` on a path of even length ``2h``, the path is named by a descriptor
``(h, q, a, o)``: the path is oriented so that ``e`` sits at position
``q`` in the second half, ``a`` is the appearance of ``e`` used to locate the
path in a face walk and ``o`` is 1 when the oriented path runs along the walk
and 2 when it runs against it.

Colourings are sequences indexed by ``edge - 1``; colour 0 means uncoloured.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from facial_thue.errors import (
    EdgeNotOnPath,
    InvalidDescriptor,
    NotFacial,
    OddLength,
    UncolouredEdge,
)
from facial_thue.plane_graph import PlaneGraph

FORWARD = "forward"
REVERSE = "reverse"


@dataclass(frozen=True, order=True)
class PathDescriptor:
    h: int
    q: int
    a: int
    o: int

    def __post_init__(self):
        if not (
            self.h >= 1
            and self.h + 1 <= self.q <= 2 * self.h
            and self.a in (1, 2)
            and self.o in (1, 2)
        ):
            raise InvalidDescriptor(f"malformed descriptor {self.as_tuple()}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.h, self.q, self.a, self.o)

    @classmethod
    def from_sequence(cls, values: Sequence[int]) -> "PathDescriptor":
        if len(values) != 4 or not all(isinstance(v, int) for v in values):
            raise InvalidDescriptor(f"descriptor must be four integers, got {values!r}")
        return cls(*values)


@dataclass(frozen=True)
class FacialPath:
    """Edge sequence of a facial path plus one place where it occurs.

    ``witness`` is ``(face_index, start, direction)``: the path's edges are
    the walk slice of ``len(edges)`` darts from ``start``, read forward or
    reversed.
    """

    edges: tuple[int, ...]
    witness: tuple[int, int, str] = field(compare=False)

    def __len__(self) -> int:
        return len(self.edges)

    def same_path(self, other: "FacialPath | Sequence[int]") -> bool:
        seq = tuple(other.edges if isinstance(other, FacialPath) else other)
        return seq == self.edges or seq[::-1] == self.edges


def _window_is_simple(tails: Sequence[int], start: int, length: int) -> bool:
    n = len(tails)
    verts = {tails[(start + i) % n] for i in range(length + 1)}
    return len(verts) == length + 1


def decode_path(g: PlaneGraph, e: int, d: PathDescriptor) -> FacialPath:
    """Reconstruct the facial path named by ``d`` relative to edge ``e``.

    The returned path is oriented so that ``e`` is at 1-based position ``d.q``.
    """
    f, p = g.appearance[(e, d.a)]
    walk = g.walk_edges[f]
    size = len(walk)
    length = 2 * d.h
    if length > size:
        raise InvalidDescriptor(f"window of {length} edges exceeds face walk of {size}")
    if d.o == 1:
        start = (p - (d.q - 1)) % size
    else:
        start = (p - (length - d.q)) % size
    if not _window_is_simple(g.walk_tails[f], start, length):
        raise InvalidDescriptor(
            f"descriptor {d.as_tuple()} at edge {e} names a window that is not a path"
        )
    window = tuple(walk[(start + i) % size] for i in range(length))
    if d.o == 1:
        return FacialPath(window, (f, start, FORWARD))
    return FacialPath(window[::-1], (f, start, REVERSE))


def encode_path(g: PlaneGraph, e: int, path: FacialPath | Sequence[int]) -> PathDescriptor:
    """Canonical descriptor of an even facial path relative to one of its edges.

    Among the realizations of the path (it may occur twice in the walks)
    the lexicographically smallest ``(h, q, a, o)`` is returned.
    """
    seq = tuple(path.edges if isinstance(path, FacialPath) else path)
    if len(seq) % 2:
        raise OddLength(f"path of length {len(seq)} has no descriptor")
    if e not in seq:
        raise EdgeNotOnPath(f"edge {e} is not on path {seq}")
    if seq.count(e) != 1:
        raise NotFacial(f"path {seq} repeats edge {e}")
    h = len(seq) // 2
    idx = seq.index(e)
    if idx >= h:
        oriented, q = seq, idx + 1
    else:
        oriented, q = seq[::-1], 2 * h - idx
    for a in (1, 2):
        for o in (1, 2):
            d = PathDescriptor(h, q, a, o)
            try:
                if decode_path(g, e, d).edges == oriented:
                    return d
            except InvalidDescriptor:
                continue
    raise NotFacial(f"{seq} is not a facial path")


def enumerate_facial_paths(g: PlaneGraph, max_len: int) -> list[FacialPath]:
    """All facial paths with at most ``max_len`` edges, each exactly once.

    A path and its reversal count once; the stored orientation is the
    lexicographically smaller of the two. Sorted by (length, edges).
    """
    found: dict[tuple[int, ...], FacialPath] = {}
    for f, walk in enumerate(g.walk_edges):
        tails = g.walk_tails[f]
        size = len(walk)
        for start in range(size):
            verts = {tails[start]}
            seq: list[int] = []
            for length in range(1, min(max_len, size - 1) + 1):
                pos = (start + length - 1) % size
                head = tails[(pos + 1) % size]
                if head in verts:
                    break
                verts.add(head)
                seq.append(walk[pos])
                fwd = tuple(seq)
                rev = fwd[::-1]
                if fwd <= rev:
                    key, direction = fwd, FORWARD
                else:
                    key, direction = rev, REVERSE
                if key not in found:
                    found[key] = FacialPath(key, (f, start, direction))
    return sorted(found.values(), key=lambda p: (len(p.edges), p.edges))


def _coloured_run(cols: Sequence[int], walk: Sequence[int], p: int, step: int) -> int:
    size = len(walk)
    count = 0
    i = p + step
    while count < size - 1 and cols[walk[i % size] - 1]:
        count += 1
        i += step
    return count


def find_repetition(
    g: PlaneGraph, colouring: Sequence[int], e: int
) -> tuple[FacialPath, PathDescriptor] | None:
    """Repetitively coloured even facial path through ``e`` with the smallest descriptor.

    Only fully coloured paths count. The search walks descriptors in
    lexicographic order, so the first hit is the preferred path and its
    descriptor is canonical.
    """
    if not colouring[e - 1]:
        raise UncolouredEdge(f"edge {e} is uncoloured")

    slots = []
    hmax = 0
    for a in (1, 2):
        f, p = g.appearance[(e, a)]
        walk = g.walk_edges[f]
        size = len(walk)
        left = _coloured_run(colouring, walk, p, -1)
        right = _coloured_run(colouring, walk, p, +1)
        # a simple window has at most size - 1 darts
        cap = min((size - 1) // 2, (left + right + 1) // 2)
        slots.append((f, p, walk, size, left, right, cap))
        hmax = max(hmax, cap)

    for h in range(1, hmax + 1):
        two_h = 2 * h
        ranges = []
        lo_all, hi_all = two_h + 1, 0
        for f, p, walk, size, left, right, cap in slots:
            if h > cap:
                ranges.append(((1, 0), (1, 0)))
                continue
            fwd = (max(h + 1, two_h - right), min(two_h, left + 1))
            bwd = (max(h + 1, two_h - left), min(two_h, right + 1))
            ranges.append((fwd, bwd))
            for lo, hi in (fwd, bwd):
                if lo <= hi:
                    lo_all = min(lo_all, lo)
                    hi_all = max(hi_all, hi)
        for q in range(lo_all, hi_all + 1):
            for a in (1, 2):
                f, p, walk, size, _, _, _ = slots[a - 1]
                for o in (1, 2):
                    lo, hi = ranges[a - 1][o - 1]
                    if not lo <= q <= hi:
                        continue
                    start = p - (q - 1) if o == 1 else p - (two_h - q)
                    for i in range(h):
                        if colouring[walk[(start + i) % size] - 1] != colouring[
                            walk[(start + h + i) % size] - 1
                        ]:
                            break
                    else:
                        if _window_is_simple(g.walk_tails[f], start % size, two_h):
                            d = PathDescriptor(h, q, a, o)
                            return decode_path(g, e, d), d
    return None


@dataclass
class VerificationReport:
    repetitive_paths: list[FacialPath]
    list_violations: list[int]
    uncoloured: list[int]

    @property
    def ok(self) -> bool:
        return not (self.repetitive_paths or self.list_violations or self.uncoloured)

    def describe(self) -> str:
        if self.ok:
            return "valid facial nonrepetitive list colouring"
        parts = []
        if self.uncoloured:
            parts.append(f"{len(self.uncoloured)} uncoloured edge(s)")
        if self.list_violations:
            parts.append(f"list violations at edges {self.list_violations}")
        if self.repetitive_paths:
            first = self.repetitive_paths[0].edges
            parts.append(f"{len(self.repetitive_paths)} repetitive facial path(s), e.g. {first}")
        return "; ".join(parts)


def verify_coloring(
    g: PlaneGraph,
    lists: Sequence[Iterable[int]] | None,
    colouring: Sequence[int],
    paths: Sequence[FacialPath] | None = None,
) -> VerificationReport:
    """Brute-force check of a colouring over every facial path.

    ``paths`` may pass a precomputed ``enumerate_facial_paths(g, g.max_walk_length)``
    when many colourings of one graph are checked. Paths touching an
    uncoloured edge are skipped.
    """
    if paths is None:
        paths = enumerate_facial_paths(g, g.max_walk_length)
    uncoloured = [e for e in range(1, g.m + 1) if not colouring[e - 1]]
    violations = []
    if lists is not None:
        violations = [
            e
            for e in range(1, g.m + 1)
            if colouring[e - 1] and colouring[e - 1] not in set(lists[e - 1])
        ]
    bad = []
    for path in paths:
        if len(path.edges) % 2:
            continue
        cols = [colouring[x - 1] for x in path.edges]
        if 0 in cols:
            continue
        half = len(cols) // 2
        if cols[:half] == cols[half:]:
            bad.append(path)
    return VerificationReport(bad, violations, uncoloured)
