"""Nonrepetitive words.

``is_nonrepetitive`` is the plain reference scan that the graph-level code
is checked against; it shares nothing with the facial search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from facial_thue.coloring import ListAssignment, Outcome, run_randomized
from facial_thue.plane_graph import build_graph, generate

THUE_MORPHISM = {1: (1, 2, 3), 2: (1, 3), 3: (2,)}


def is_nonrepetitive(word: Sequence[int]) -> tuple[int, int] | None:
    """``None`` if ``word`` has no square, else the first ``(offset, h)`` witness.

    Witnesses are ordered by offset, then by half-length.
    """
    w = list(word)
    n = len(w)
    for s in range(n - 1):
        for h in range(1, (n - s) // 2 + 1):
            if w[s] == w[s + h] and w[s : s + h] == w[s + h : s + 2 * h]:
                return (s, h)
    return None


def thue_ternary(n: int) -> list[int]:
    """First ``n`` letters of the fixed point of 1->123, 2->13, 3->2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    word = [1]
    while len(word) < n:
        word = [y for x in word for y in THUE_MORPHISM[x]]
    return word[:n]


@dataclass
class SequenceResult:
    word: list[int]
    outcome: Outcome

    @property
    def completed(self) -> bool:
        return self.outcome.completed


def sequence_from_lists(
    lists: Sequence[Sequence[int]], seed: int, max_steps: int | None = None
) -> SequenceResult:
    """Choose one symbol per list so that the word is square-free.

    The lists become the edges of a path and the randomized colourer picks
    the symbols; ``word[i]`` is 0 where the run stopped before reaching it.
    """
    la = ListAssignment(lists)
    g = build_graph(generate("path", len(la) + 1))
    outcome = run_randomized(g, la, seed, max_steps)
    return SequenceResult(list(outcome.coloring), outcome)
