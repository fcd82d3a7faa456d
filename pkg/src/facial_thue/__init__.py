"""Facial nonrepetitive edge colouring of plane graphs from lists.

The package builds plane graphs from rotation systems, colours their edges
with a resampling algorithm whose execution log determines its random input,
inverts such logs, and reproduces the counting bounds behind the method.
"""

from facial_thue.errors import FacialThueError
from facial_thue.plane_graph import PlaneGraph, RotationSystem, build_graph, generate
from facial_thue.facial import (
    FacialPath,
    PathDescriptor,
    decode_path,
    encode_path,
    enumerate_facial_paths,
    find_repetition,
    verify_coloring,
)
from facial_thue.coloring import (
    ListAssignment,
    Outcome,
    Status,
    run_deterministic,
    run_randomized,
)
from facial_thue.replay import invert_log, reconstruct_uncolored_sets

__version__ = "0.1.0"

__all__ = [
    "FacialThueError",
    "PlaneGraph",
    "RotationSystem",
    "build_graph",
    "generate",
    "FacialPath",
    "PathDescriptor",
    "decode_path",
    "encode_path",
    "enumerate_facial_paths",
    "find_repetition",
    "verify_coloring",
    "ListAssignment",
    "Outcome",
    "Status",
    "run_deterministic",
    "run_randomized",
    "invert_log",
    "reconstruct_uncolored_sets",
]
