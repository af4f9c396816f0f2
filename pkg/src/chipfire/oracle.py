"""Exhaustive and sampled coverage of configuration space.

A configuration with total c on n vertices is a weak composition of c
into n parts.  Everything here fixes one enumeration convention
(ascending lexicographic order on the candy tuples, so (0, 0, c) is
rank 0 and (c, 0, 0) is the last) and builds counting, enumeration,
unranking, uniform sampling, and exhaustive verification on top of it.  Counting is
exact stars-and-bars: C(c + n - 1, n - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Callable, Iterator, Optional, Union

from .errors import ResourceExhausted
from .graph import Graph
from .parallel import Configuration
from .rng import SplitMix64

DEFAULT_ENUM_CAP = 10_000_000


def compositions_count(n: int, c: int) -> int:
    """Number of weak compositions of c into n parts."""
    if n < 1 or c < 0:
        raise ValueError("need n >= 1 and c >= 0")
    return comb(c + n - 1, n - 1)


class CompositionCursor:
    """Mutable walker over compositions in lexicographic order.

    Tracks its rank so partitioned scans can report where they are.
    """

    __slots__ = ("n", "c", "current", "rank")

    def __init__(self, n: int, c: int):
        if n < 1 or c < 0:
            raise ValueError("need n >= 1 and c >= 0")
        self.n = n
        self.c = c
        self.current = (0,) * (n - 1) + (c,)
        self.rank = 0

    def advance(self) -> bool:
        """Move to the next composition; False once exhausted."""
        x = list(self.current)
        n = self.n
        suffix = 0
        for p in range(n - 2, -1, -1):
            suffix += x[p + 1]
            if suffix > 0:
                x[p] += 1
                for q in range(p + 1, n - 1):
                    x[q] = 0
                x[n - 1] = suffix - 1
                self.current = tuple(x)
                self.rank += 1
                return True
        return False


def enumerate_configs(n: int, c: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[tuple[int, ...]]:
    """Yield every composition in lexicographic order.

    Raises ResourceExhausted up front when the count exceeds cap, so a
    caller never starts a scan it cannot finish.
    """
    total = compositions_count(n, c)
    if total > cap:
        raise ResourceExhausted(f"{total} compositions exceed the cap of {cap}")
    cursor = CompositionCursor(n, c)
    while True:
        yield cursor.current
        if not cursor.advance():
            return


def rank_composition(comp) -> int:
    """Lexicographic rank of a composition (inverse of unrank_composition)."""
    n = len(comp)
    rem = sum(comp)
    rank = 0
    for i in range(n - 1):
        slots = n - i - 1
        for w in range(comp[i]):
            # completions: compositions of rem - w into the remaining slots
            rank += comb(rem - w + slots - 1, slots - 1)
        rem -= comp[i]
    return rank


def unrank_composition(n: int, c: int, rank: int) -> tuple[int, ...]:
    """The rank-th composition of c into n parts, lexicographically."""
    total = compositions_count(n, c)
    if not 0 <= rank < total:
        raise ValueError(f"rank {rank} outside [0, {total})")
    out = []
    rem = c
    for i in range(n - 1):
        slots = n - i - 1
        v = 0
        while True:
            block = comb(rem - v + slots - 1, slots - 1)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        rem -= v
    out.append(rem)
    return tuple(out)


def random_config(n: int, c: int, seed: int) -> Configuration:
    """Uniformly random configuration with total exactly c.

    Draws a uniform rank (rejection-sampled, so exactly uniform) and
    unranks it; a pure function of (n, c, seed).
    """
    rng = SplitMix64(seed)
    rank = rng.below(compositions_count(n, c))
    return Configuration.of(unrank_composition(n, c, rank))


@dataclass(frozen=True)
class Counterexample:
    """First failure found by an exhaustive scan.

    initial is the failing composition in enumeration order; config is
    the check's witness configuration.  For the stabilization check that
    is the lexicographically smallest state of the limit cycle the orbit
    falls into; for other checks it coincides with initial.
    """

    config: tuple[int, ...]
    initial: tuple[int, ...]
    rank: int
    detail: dict


@dataclass(frozen=True)
class ExhaustiveResult:
    passed: bool
    configs_checked: int
    counterexample: Optional[Counterexample]


CheckFn = Callable[[Graph, tuple[int, ...]], Optional[dict]]


def _resolve_check(check: Union[str, CheckFn]) -> CheckFn:
    if callable(check):
        return check
    from .analysis import NAMED_CHECKS  # deferred: analysis imports this module

    try:
        return NAMED_CHECKS[check]
    except KeyError:
        known = ", ".join(sorted(NAMED_CHECKS))
        raise ValueError(f"unknown check {check!r}; known: {known}") from None


def exhaustive_verify(
    g: Graph,
    c: int,
    check: Union[str, CheckFn],
    cap: int = DEFAULT_ENUM_CAP,
) -> ExhaustiveResult:
    """Apply a check to every composition of c on g, in lexicographic order.

    check is a registered name (see analysis.NAMED_CHECKS) or a callable
    returning None on pass and a detail dict on failure.  Scanning stops
    at the first failure, which is therefore the minimal-rank one; a
    partitioned scan can preserve that guarantee by taking the minimum
    rank over its partitions afterwards.
    """
    fn = _resolve_check(check)
    checked = 0
    for comp in enumerate_configs(g.n, c, cap=cap):
        detail = fn(g, comp)
        checked += 1
        if detail is not None:
            witness = detail.get("witness_config", comp)
            rest = {k: v for k, v in detail.items() if k != "witness_config"}
            return ExhaustiveResult(
                passed=False,
                configs_checked=checked,
                counterexample=Counterexample(
                    config=tuple(witness),
                    initial=comp,
                    rank=checked - 1,
                    detail=rest,
                ),
            )
    return ExhaustiveResult(passed=True, configs_checked=checked, counterexample=None)
