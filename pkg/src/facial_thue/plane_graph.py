"""Plane graphs given by rotation systems.

A plane embedding is described combinatorially: every vertex lists its
incident edges in cyclic order. Faces are not part of the input. They are
traced from the rotations, and Euler's formula certifies that the rotations
describe a genus-0 embedding.

Conventions used throughout the package:

* vertices are ``1..n`` and edges are ``1..m``, numbered by their position
  in :attr:`RotationSystem.edges`;
* a dart is an edge traversed in one direction, and the successor of a dart
  ``d = (u -> v)`` on its face is the dart leaving ``v`` along the edge that
  follows ``d``'s edge in the rotation at ``v``;
* the walk of a face is recorded in tracing order, which fixes one of its
  two orientations;
* each edge occurs twice over all walks; the occurrence with the smaller
  ``(face_index, position)`` carries appearance label 1, the other label 2.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Sequence

from facial_thue.errors import (
    EulerViolation,
    GraphSyntaxError,
    HasLoop,
    HasParallelEdge,
    NotConnected,
    ParamOutOfRange,
    SemanticError,
    UnknownFamily,
)

FAMILIES = ("path", "cycle", "wheel", "grid")


class Dart(NamedTuple):
    edge: int
    tail: int
    head: int


@dataclass(frozen=True)
class RotationSystem:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        object.__setattr__(self, "rotations", tuple(tuple(r) for r in self.rotations))

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class FaceWalk:
    face_index: int
    darts: tuple[Dart, ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d.edge for d in self.darts)


@dataclass(frozen=True, eq=False)
class PlaneGraph:
    """A connected simple plane graph with its traced faces.

    Instances are immutable and only produced by :func:`build_graph`.
    ``appearance[(e, a)]`` is the ``(face_index, position)`` of appearance
    ``a`` of edge ``e``.
    """

    rotation: RotationSystem
    faces: tuple[FaceWalk, ...]
    appearance: dict[tuple[int, int], tuple[int, int]]

    @property
    def n(self) -> int:
        return self.rotation.vertex_count

    @property
    def m(self) -> int:
        return self.rotation.edge_count

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def endpoints(self, edge: int) -> tuple[int, int]:
        return self.rotation.edges[edge - 1]

    @cached_property
    def walk_edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(f.edges for f in self.faces)

    @cached_property
    def walk_tails(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(d.tail for d in f.darts) for f in self.faces)

    @property
    def max_walk_length(self) -> int:
        return max(len(f) for f in self.faces)

    def summary(self) -> tuple[int, int, int]:
        return self.n, self.m, self.face_count

    def __repr__(self) -> str:
        return f"PlaneGraph(V={self.n}, E={self.m}, F={self.face_count})"


def _validate(spec: RotationSystem) -> None:
    n = spec.vertex_count
    if n < 1:
        raise SemanticError("vertex count must be positive", "vertices")
    if not spec.edges:
        raise SemanticError("graph has no edges", "edges")

    seen: dict[frozenset[int], int] = {}
    for eid, (u, v) in enumerate(spec.edges, start=1):
        for x in (u, v):
            if not (isinstance(x, int) and 1 <= x <= n):
                raise SemanticError(f"endpoint {x!r} out of range 1..{n}", f"edge {eid}")
        if u == v:
            raise HasLoop(f"loop at vertex {u}", f"edge {eid}")
        key = frozenset((u, v))
        if key in seen:
            raise HasParallelEdge(
                f"edge {{{u},{v}}} duplicates edge {seen[key]}", f"edge {eid}"
            )
        seen[key] = eid

    if len(spec.rotations) != n:
        raise SemanticError(
            f"expected {n} rotations, got {len(spec.rotations)}", "rotations"
        )
    incident: list[set[int]] = [set() for _ in range(n + 1)]
    for eid, (u, v) in enumerate(spec.edges, start=1):
        incident[u].add(eid)
        incident[v].add(eid)
    for v, rot in enumerate(spec.rotations, start=1):
        where = f"rotation of vertex {v}"
        if len(set(rot)) != len(rot):
            raise SemanticError("edge listed more than once", where)
        if set(rot) != incident[v]:
            missing = sorted(incident[v] - set(rot))
            extra = sorted(set(rot) - incident[v])
            raise SemanticError(f"missing edges {missing}, foreign edges {extra}", where)

    adj: list[list[int]] = [[] for _ in range(n + 1)]
    for u, v in spec.edges:
        adj[u].append(v)
        adj[v].append(u)
    reached = {1}
    queue = deque([1])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in reached:
                reached.add(y)
                queue.append(y)
    if len(reached) != n:
        lost = min(set(range(1, n + 1)) - reached)
        raise NotConnected("vertex not reachable from vertex 1", f"vertex {lost}")


def _trace_faces(spec: RotationSystem) -> list[list[Dart]]:
    # dart id 2(e-1) is u->v for edges[e-1] == (u, v); its twin is id ^ 1
    m = spec.edge_count
    succ: dict[tuple[int, int], int] = {}
    for v, rot in enumerate(spec.rotations, start=1):
        for i, e in enumerate(rot):
            succ[(v, e)] = rot[(i + 1) % len(rot)]

    def dart(d: int) -> Dart:
        u, v = spec.edges[d >> 1]
        return Dart(d // 2 + 1, u, v) if d % 2 == 0 else Dart(d // 2 + 1, v, u)

    def leaving(e: int, v: int) -> int:
        return 2 * (e - 1) + (0 if spec.edges[e - 1][0] == v else 1)

    seen = [False] * (2 * m)
    walks = []
    for start in range(2 * m):
        if seen[start]:
            continue
        walk = []
        d = start
        while not seen[d]:
            seen[d] = True
            cur = dart(d)
            walk.append(cur)
            d = leaving(succ[(cur.head, cur.edge)], cur.head)
        walks.append(walk)
    return walks


def build_graph(spec: RotationSystem) -> PlaneGraph:
    """Validate a rotation system and trace its faces.

    Raises:
        HasLoop, HasParallelEdge, NotConnected: simple connected graphs only.
        SemanticError: a rotation does not list exactly the incident edges.
        EulerViolation: the rotations describe an embedding of higher genus.
    """
    _validate(spec)
    walks = _trace_faces(spec)
    n, m, f = spec.vertex_count, spec.edge_count, len(walks)
    if n - m + f != 2:
        raise EulerViolation(
            f"V - E + F = {n} - {m} + {f} = {n - m + f}, rotation system is not planar",
            "rotations",
        )
    faces = tuple(FaceWalk(i, tuple(w)) for i, w in enumerate(walks))

    slots: dict[int, list[tuple[int, int]]] = {e: [] for e in range(1, m + 1)}
    for face in faces:
        for pos, d in enumerate(face.darts):
            slots[d.edge].append((face.face_index, pos))
    appearance = {}
    for e, pair in slots.items():
        first, second = sorted(pair)
        appearance[(e, 1)] = first
        appearance[(e, 2)] = second
    return PlaneGraph(spec, faces, appearance)


# families

def _rotations_from_coordinates(
    n: int, edges: Sequence[tuple[int, int]], coords: dict[int, tuple[float, float]]
) -> list[tuple[int, ...]]:
    around: list[list[tuple[float, int]]] = [[] for _ in range(n + 1)]
    for eid, (u, v) in enumerate(edges, start=1):
        for a, b in ((u, v), (v, u)):
            dx = coords[b][0] - coords[a][0]
            dy = coords[b][1] - coords[a][1]
            around[a].append((math.atan2(dy, dx), eid))
    return [tuple(e for _, e in sorted(around[v])) for v in range(1, n + 1)]


def _circle(count: int) -> dict[int, tuple[float, float]]:
    return {
        i + 1: (math.cos(2 * math.pi * i / count), math.sin(2 * math.pi * i / count))
        for i in range(count)
    }


def generate(kind: str, *params: int) -> RotationSystem:
    """Rotation system of a standard planar family with a straight-line layout.

    ``path n`` has n vertices, ``cycle n`` n vertices, ``wheel n`` a rim of
    n vertices plus a hub (vertex n+1), and ``grid a b`` is the a-by-b grid
    with vertex ``r*b + c + 1`` at row r, column c.
    """
    arity = {"path": 1, "cycle": 1, "wheel": 1, "grid": 2}
    if kind not in arity:
        raise UnknownFamily(f"unknown graph family {kind!r}; expected one of {FAMILIES}")
    if len(params) != arity[kind]:
        raise ParamOutOfRange(f"{kind} takes {arity[kind]} parameter(s), got {len(params)}")

    if kind == "path":
        (n,) = params
        if n < 2:
            raise ParamOutOfRange("path needs n >= 2")
        edges = [(i, i + 1) for i in range(1, n)]
        coords = {i: (float(i), 0.0) for i in range(1, n + 1)}
    elif kind == "cycle":
        (n,) = params
        if n < 3:
            raise ParamOutOfRange("cycle needs n >= 3")
        edges = [(i, i + 1) for i in range(1, n)] + [(n, 1)]
        coords = _circle(n)
    elif kind == "wheel":
        (rim,) = params
        if rim < 3:
            raise ParamOutOfRange("wheel needs n >= 3")
        hub = rim + 1
        n = rim + 1
        edges = [(i, i + 1) for i in range(1, rim)] + [(rim, 1)]
        edges += [(i, hub) for i in range(1, rim + 1)]
        coords = _circle(rim)
        coords[hub] = (0.0, 0.0)
    else:
        a, b = params
        if a < 2 or b < 2:
            raise ParamOutOfRange("grid needs a, b >= 2")
        n = a * b
        edges = []
        coords = {}
        for r in range(a):
            for c in range(b):
                v = r * b + c + 1
                coords[v] = (float(c), float(-r))
                if c + 1 < b:
                    edges.append((v, v + 1))
                if r + 1 < a:
                    edges.append((v, v + b))
    return RotationSystem(n, tuple(edges), tuple(_rotations_from_coordinates(n, edges, coords)))


def parse_family(text: str) -> RotationSystem:
    """Parse the ``name:params`` shorthand, e.g. ``wheel:10`` or ``grid:4x4``."""
    name, sep, rest = text.partition(":")
    if not sep or not rest:
        raise GraphSyntaxError(f"family shorthand {text!r} must look like name:params")
    try:
        params = [int(x) for x in rest.lower().split("x")]
    except ValueError:
        raise GraphSyntaxError(f"non-integer parameter in {text!r}") from None
    return generate(name.strip().lower(), *params)


def family_counts(kind: str, *params: int) -> tuple[int, int, int]:
    """Closed-form (V, E, F) of a family instance."""
    if kind == "path":
        (n,) = params
        return n, n - 1, 1
    if kind == "cycle":
        (n,) = params
        return n, n, 2
    if kind == "wheel":
        (n,) = params
        return n + 1, 2 * n, n + 1
    if kind == "grid":
        a, b = params
        return a * b, a * (b - 1) + b * (a - 1), (a - 1) * (b - 1) + 1
    raise UnknownFamily(kind)


# documents

def serialize(g: PlaneGraph | RotationSystem, lists: Sequence[Sequence[int]] | None = None) -> str:
    """Canonical document: fields ``vertices``, ``edges``, ``rotations``, ``lists``."""
    rs = g.rotation if isinstance(g, PlaneGraph) else g
    lines = [
        "{",
        f'  "vertices": {rs.vertex_count},',
        f'  "edges": {json.dumps([list(e) for e in rs.edges])},',
    ]
    rot = f'  "rotations": {json.dumps([list(r) for r in rs.rotations])}'
    if lists is None:
        lines.append(rot)
    else:
        lines.append(rot + ",")
        lines.append(f'  "lists": {json.dumps([list(x) for x in lists])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _int_array(value, field: str):
    ok = isinstance(value, list) and all(
        isinstance(x, list) and all(isinstance(y, int) and not isinstance(y, bool) for y in x)
        for x in value
    )
    if not ok:
        raise SemanticError(f"{field} must be an array of integer arrays", field)
    return value


def parse_document(document: str) -> tuple[RotationSystem, list[list[int]] | None]:
    """Parse a graph document into a validated rotation system and optional lists."""
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        raise GraphSyntaxError(exc.msg, exc.lineno) from None
    if not isinstance(data, dict):
        raise GraphSyntaxError("document must be an object", 1)
    unknown = set(data) - {"vertices", "edges", "rotations", "lists"}
    if unknown:
        raise SemanticError(f"unknown fields {sorted(unknown)}", "document")
    for field in ("vertices", "edges", "rotations"):
        if field not in data:
            raise SemanticError("missing field", field)
    n = data["vertices"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise SemanticError("vertices must be an integer", "vertices")
    edges = _int_array(data["edges"], "edges")
    for i, e in enumerate(edges, start=1):
        if len(e) != 2:
            raise SemanticError("edge must have two endpoints", f"edge {i}")
    rotations = _int_array(data["rotations"], "rotations")
    spec = RotationSystem(n, tuple(map(tuple, edges)), tuple(map(tuple, rotations)))
    _validate(spec)
    lists = None
    if "lists" in data:
        lists = _int_array(data["lists"], "lists")
        if len(lists) != len(edges):
            raise SemanticError(f"expected {len(edges)} lists, got {len(lists)}", "lists")
    return spec, lists


def parse(document: str) -> RotationSystem:
    return parse_document(document)[0]
