"""Exact counting behind the termination argument.

Each step of a run contributes ``+1`` to a sign sequence, followed by ``h``
copies of ``-1`` when it cancelled a repetition of size ``h``. A sign
sequence with maximal ``-1`` runs of lengths ``h_1, ..., h_r`` can come from
at most ``g = 4h_1 * ... * 4h_r`` records, and ``a_n`` sums ``g`` over all
``2^n`` sign sequences of length ``n``. Comparing ``(k+1)^m * a_{2t}`` with
the ``k^t`` input vectors gives the number of steps after which some input
must have finished the colouring.

All counts are Python integers; floats appear only in roots and growth
estimates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

from facial_thue.errors import InvariantBreach, KTooSmall, NTooLarge, OverflowingRecord
from facial_thue.facial import PathDescriptor

BRUTEFORCE_MAX_N = 24
SEEDS = (5, 17, 57)


def sign_sequence(
    record: Sequence[PathDescriptor | None], t: int, *, padded: bool = True
) -> tuple[int, ...]:
    """Sign sequence of a record, padded with ``+1`` to length ``2t``."""
    out: list[int] = []
    for d in record:
        out.append(1)
        if d is not None:
            out.extend([-1] * d.h)
    if len(out) > 2 * t:
        raise OverflowingRecord(f"sign sequence of length {len(out)} exceeds 2t = {2 * t}")
    if padded:
        out.extend([1] * (2 * t - len(out)))
    return tuple(out)


def prefix_sums(seq: Iterable[int]) -> list[int]:
    return list(itertools.accumulate(seq))


def dyck_completion(record: Sequence[PathDescriptor | None], t: int) -> tuple[int, ...]:
    """Unpadded sign sequence completed with ``-1`` to length ``2t``."""
    head = sign_sequence(record, t, padded=False)
    return head + (-1,) * (2 * t - len(head))


def is_dyck_word(seq: Sequence[int]) -> bool:
    total = 0
    for x in seq:
        total += x
        if total < 0:
            return False
    return total == 0


def g_weight(seq: Iterable[int]) -> int:
    """Product of ``4 * run`` over the maximal runs of ``-1``; 1 if there are none."""
    weight = 1
    run = 0
    for x in seq:
        if x == -1:
            run += 1
        else:
            if run:
                weight *= 4 * run
            run = 0
    if run:
        weight *= 4 * run
    return weight


def a_bruteforce(n: int) -> int:
    """Sum of :func:`g_weight` over all ``2^n`` sign sequences of length ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > BRUTEFORCE_MAX_N:
        raise NTooLarge(f"n={n} > {BRUTEFORCE_MAX_N}: 2^n enumeration refused")
    return sum(g_weight(s) for s in itertools.product((1, -1), repeat=n))


def a_sequence(n_max: int) -> list[int]:
    """``[a_1, ..., a_{n_max}]`` by the three-term recurrence."""
    a = list(SEEDS[:n_max])
    while len(a) < n_max:
        a.append(3 * a[-1] + a[-2] + a[-3])
    return a


def a_recurrence(n: int, form: Literal["compact", "convolution"] = "compact") -> int:
    """``a_n`` from the three-term recurrence or from the full convolution.

    The convolution splits sequences by their trailing block: a final ``+1``
    leaves ``a_{n-1}``, a final ``+1`` followed by ``h`` minus ones leaves
    ``4h * a_{n-1-h}``, and the two sequences ``1(-1)^{n-1}`` and ``(-1)^n``
    add ``4(n-1) + 4n``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if form == "compact":
        return a_sequence(n)[-1]
    if form != "convolution":
        raise ValueError(f"unknown form {form!r}")
    a = [None, SEEDS[0]]
    for k in range(2, n + 1):
        total = a[k - 1] + 4 * (k - 1) + 4 * k
        for h in range(1, k - 1):
            total += 4 * h * a[k - 1 - h]
        a.append(total)
    return a[n]


@dataclass(frozen=True)
class RootTriple:
    lambda0: float
    lambda1: complex
    lambda2: complex
    residuals: tuple[float, float, float]


def characteristic(x):
    return x**3 - 3 * x**2 - x - 1


def cardano_roots() -> RootTriple:
    """Roots of ``x^3 - 3x^2 - x - 1`` in closed form.

    Substituting ``x = y + 1`` gives ``y^3 - 4y - 4``, whose real root is
    ``v + u`` with ``v^3 = 2 + (2/3) sqrt(11/3)`` and ``uv = 4/3``.
    """
    v0 = (2 + (2 / 3) * math.sqrt(11 / 3)) ** (1 / 3)
    u0 = (4 / 3) / v0
    lam0 = v0 + u0 + 1
    lam1 = complex(-(v0 + u0) / 2 + 1, math.sqrt(3) / 2 * (v0 - u0))
    lam2 = lam1.conjugate()
    res = tuple(abs(characteristic(z)) for z in (lam0, lam1, lam2))
    return RootTriple(lam0, lam1, lam2, res)


@dataclass(frozen=True)
class GrowthEstimate:
    """``a_n / lambda0^n`` at ``n_max`` plus the trail of estimates behind it."""

    value: float
    history: tuple[tuple[int, float], ...]

    @property
    def deltas(self) -> list[float]:
        vals = [v for _, v in self.history]
        return [abs(b - a) / abs(b) for a, b in zip(vals, vals[1:])]

    def converged(self, rtol: float = 1e-9) -> bool:
        d = self.deltas
        return bool(d) and d[-1] < rtol


def growth_constant(n_max: int = 50) -> GrowthEstimate:
    if n_max < 20:
        raise ValueError("n_max must be at least 20")
    lam0 = cardano_roots().lambda0
    a = a_sequence(n_max)
    history = tuple((n, a[n - 1] / lam0**n) for n in range(1, n_max + 1))
    return GrowthEstimate(history[-1][1], history)


def threshold_steps(m: int, k: int = 12) -> int:
    """Smallest ``t`` with ``(k+1)^m * a_{2t} < k^t``, by exact scan.

    Needs ``k > lambda0^2 ~ 11.445``; for smaller ``k`` the left side
    outgrows ``k^t`` and no threshold exists.
    """
    if m < 1:
        raise ValueError("m must be positive")
    lam0 = cardano_roots().lambda0
    if k <= lam0 * lam0:
        raise KTooSmall(
            f"k={k} <= lambda0^2 = {lam0 * lam0:.4f}: (k+1)^m a_2t never drops below k^t"
        )
    lhs = (k + 1) ** m
    a = list(SEEDS)
    t = 1
    power = k
    while True:
        while len(a) < 2 * t:
            a.append(3 * a[-1] + a[-2] + a[-3])
        if lhs * a[2 * t - 1] < power:
            return t
        t += 1
        power *= k


@dataclass(frozen=True)
class CatalanCheck:
    t: int
    catalan: int
    bound: float

    @property
    def ratio(self) -> float:
        return self.catalan / self.bound


def catalan(t: int) -> int:
    return math.comb(2 * t, t) // (t + 1)


def catalan_bound(t: int) -> float:
    return 4.0**t / (math.sqrt(math.pi) * t**1.5)


def catalan_check(
    t: int, records: Iterable[Sequence[PathDescriptor | None]] = ()
) -> CatalanCheck:
    """Exact ``C_t`` against ``4^t / (sqrt(pi) t^{3/2})``.

    Every record passed in must complete to a Dyck word of twice its own
    length: a record of ``s`` steps has ``s - sum(h)`` coloured edges left,
    which the appended minus ones bring back to zero.
    """
    if t < 1:
        raise ValueError("t must be positive")
    c = catalan(t)
    bound = catalan_bound(t)
    if c > bound:
        raise InvariantBreach(f"C_{t} = {c} exceeds {bound}")
    for rec in records:
        word = dyck_completion(rec, len(rec))
        if not is_dyck_word(word):
            raise InvariantBreach(f"record of {len(rec)} steps does not complete to a Dyck word")
    return CatalanCheck(t, c, bound)
