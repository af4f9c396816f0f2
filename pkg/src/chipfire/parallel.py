"""Synchronous candy-passing engine.

One round: every vertex holding at least as much candy as its degree
fires, sending one candy along each incident edge; all firings in a round
are simultaneous.  Rounds are numbered from 1, the initial configuration
is round 0.  A configuration is stable once it will never change again;
because the update is deterministic, that is exactly "one round changes
nothing".

All candy arithmetic is plain Python integers, so totals are exact at any
magnitude.  The inner loop works on bare tuples; the dataclass wrappers
appear only at the API boundary.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ResourceExhausted, SizeMismatch
from .graph import Graph

DEFAULT_STATE_CAP = 1_000_000
STATE_CAP_ENV = "CHIPFIRE_STATE_CAP"
_BRENT_BUDGET_FACTOR = 64


@dataclass(frozen=True)
class Configuration:
    """Per-vertex candy counts plus their (conserved) total."""

    candy: tuple[int, ...]
    total: int

    @classmethod
    def of(cls, values: Sequence[int]) -> "Configuration":
        candy = tuple(int(v) for v in values)
        for v in candy:
            if v < 0:
                raise ValueError(f"negative candy count {v}")
        return cls(candy, sum(candy))

    def __len__(self) -> int:
        return len(self.candy)


class StopReason(enum.Enum):
    FIXED_POINT = "fixed_point"
    BUDGET = "budget"


@dataclass(frozen=True)
class RoundRecord:
    t: int
    fired: frozenset[int]
    config: Configuration


@dataclass(frozen=True)
class GameTrace:
    """Everything a run observed: per-round fired sets, configurations,
    and cumulative pass counts (how often each vertex has fired by round t)."""

    initial: Configuration
    rounds: tuple[RoundRecord, ...]
    pass_counts: tuple[tuple[int, ...], ...]
    stop: StopReason

    @property
    def n(self) -> int:
        return len(self.initial.candy)

    @property
    def final(self) -> Configuration:
        return self.rounds[-1].config if self.rounds else self.initial

    @property
    def stab_round(self) -> Union[int, None]:
        """First round index whose configuration equals all later ones.

        Only known when the run ended at a fixed point; the detecting
        round re-produced its predecessor, so stabilization happened one
        round earlier.
        """
        if self.stop is not StopReason.FIXED_POINT:
            return None
        return len(self.rounds) - 1

    def config_at(self, t: int) -> Configuration:
        return self.initial if t == 0 else self.rounds[t - 1].config

    def pass_at(self, t: int) -> tuple[int, ...]:
        return (0,) * self.n if t == 0 else self.pass_counts[t - 1]

    def vertex_stabilization_rounds(self) -> tuple[int, ...]:
        """Per-vertex convenience view: first recorded round after which
        that vertex's candy count never changes.  Meaningful only for
        fixed-point traces; the whole-configuration stab_round is the
        contractual quantity."""
        out = []
        for v in range(self.n):
            t = len(self.rounds)
            prev = self.config_at(t).candy[v] if t >= 0 else None
            while t > 0 and self.config_at(t - 1).candy[v] == prev:
                t -= 1
            out.append(t)
        return tuple(out)


@dataclass(frozen=True)
class Stabilized:
    stab_round: int
    fixed: Configuration


@dataclass(frozen=True)
class EventuallyPeriodic:
    preperiod: int
    period: int  # always >= 2; period 1 is Stabilized


Outcome = Union[Stabilized, EventuallyPeriodic]


def _coerce(g: Graph, conf) -> tuple[int, ...]:
    candy = conf.candy if isinstance(conf, Configuration) else Configuration.of(conf).candy
    if len(candy) != g.n:
        raise SizeMismatch(f"configuration has {len(candy)} entries for n={g.n}")
    return candy


def _step_raw(adjacency, degree, conf):
    """One synchronous round on a bare tuple; returns (next, fired tuple)."""
    n = len(conf)
    fired = [v for v in range(n) if degree[v] and conf[v] >= degree[v]]
    if not fired:
        return conf, ()
    delta = [0] * n
    for v in fired:
        delta[v] -= degree[v]
        for u in adjacency[v]:
            delta[u] += 1
    return tuple(map(sum, zip(conf, delta))), tuple(fired)


def step(g: Graph, conf) -> tuple[Configuration, frozenset[int]]:
    """Apply one round; returns the next configuration and who fired."""
    candy = _coerce(g, conf)
    nxt, fired = _step_raw(g.adjacency, g.degree, candy)
    return Configuration.of(nxt), frozenset(fired)


def is_fixed_point(g: Graph, conf) -> bool:
    """True iff the configuration never changes again.

    On a connected graph this is equivalent to "nobody fires or everybody
    fires" (everyone firing returns each vertex exactly its degree).  On a
    disconnected graph that shortcut only holds per component, so we fall
    back to the direct one-step comparison.
    """
    candy = _coerce(g, conf)
    if g.connected:
        firable = sum(1 for v in range(g.n) if g.degree[v] and candy[v] >= g.degree[v])
        active = sum(1 for d in g.degree if d)
        return firable == 0 or (active > 0 and firable == active)
    nxt, _ = _step_raw(g.adjacency, g.degree, candy)
    return nxt == candy


def run(g: Graph, init, max_rounds: int) -> GameTrace:
    """Simulate up to max_rounds rounds, stopping once a round changes nothing.

    The trace includes the detecting round, so a game that stabilizes at
    round s has s + 1 recorded rounds.
    """
    if max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")
    candy = _coerce(g, init)
    initial = Configuration.of(candy)
    adjacency, degree = g.adjacency, g.degree
    cum = [0] * g.n
    rounds: list[RoundRecord] = []
    passes: list[tuple[int, ...]] = []
    stop = StopReason.BUDGET
    prev = candy
    for t in range(1, max_rounds + 1):
        nxt, fired = _step_raw(adjacency, degree, prev)
        for v in fired:
            cum[v] += 1
        rounds.append(RoundRecord(t, frozenset(fired), Configuration.of(nxt)))
        passes.append(tuple(cum))
        if nxt == prev:
            stop = StopReason.FIXED_POINT
            break
        prev = nxt
    return GameTrace(initial, tuple(rounds), tuple(passes), stop)


def _default_state_cap() -> int:
    raw = os.environ.get(STATE_CAP_ENV)
    if raw is None:
        return DEFAULT_STATE_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{STATE_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{STATE_CAP_ENV} must be >= 1")
    return cap


def classify(g: Graph, init, state_cap=None, step_cap=None) -> Outcome:
    """Exact long-run behavior of the orbit: stabilizes or oscillates.

    Walks the orbit with a visited map while it fits under state_cap
    (CHIPFIRE_STATE_CAP overrides the default); past the cap it restarts
    with constant-memory pointer chasing bounded by step_cap (default
    64x the state cap).  Either way preperiod and period are exact.
    """
    candy = _coerce(g, init)
    cap = _default_state_cap() if state_cap is None else state_cap
    budget = (step_cap if step_cap is not None else _BRENT_BUDGET_FACTOR * cap)
    adjacency, degree = g.adjacency, g.degree
    seen = {candy: 0}
    x = candy
    t = 0
    while True:
        x, _ = _step_raw(adjacency, degree, x)
        t += 1
        j = seen.get(x)
        if j is not None:
            return _outcome(j, t - j, x)
        if len(seen) >= cap:
            break
        seen[x] = t
    mu, lam, entry = _brent(adjacency, degree, candy, budget)
    return _outcome(mu, lam, entry)


def _outcome(preperiod: int, period: int, state) -> Outcome:
    if period == 1:
        return Stabilized(stab_round=preperiod, fixed=Configuration.of(state))
    return EventuallyPeriodic(preperiod=preperiod, period=period)


def _brent(adjacency, degree, start, budget):
    """Constant-memory cycle detection; returns (preperiod, period, entry state)."""
    evals = 0

    def f(x):
        nonlocal evals
        evals += 1
        if evals > budget:
            raise ResourceExhausted(f"orbit walk exceeded {budget} steps")
        return _step_raw(adjacency, degree, x)[0]

    power = lam = 1
    tortoise = start
    hare = f(start)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        lam += 1
    tortoise = hare = start
    for _ in range(lam):
        hare = f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        mu += 1
    return mu, lam, tortoise


def trace_csv(trace: GameTrace) -> str:
    """Delimited trace: one row per round plus a t=0 row for the start.

    For n <= 64 the fired set is a hex bitmask (bit v set when v fired);
    larger graphs get a semicolon-joined index list instead.
    """
    n = trace.n
    use_mask = n <= 64
    fired_col = "fired_bitmask_hex" if use_mask else "fired_list"
    header = ["t", "fired_count", fired_col] + [f"candy_{v}" for v in range(n)]
    lines = [",".join(header)]

    def fmt(t, fired, config):
        if use_mask:
            mask = 0
            for v in fired:
                mask |= 1 << v
            shown = hex(mask)
        else:
            shown = ";".join(str(v) for v in sorted(fired))
        cells = [str(t), str(len(fired)), shown] + [str(c) for c in config.candy]
        return ",".join(cells)

    lines.append(fmt(0, frozenset(), trace.initial))
    for rec in trace.rounds:
        lines.append(fmt(rec.t, rec.fired, rec.config))
    return "\n".join(lines) + "\n"
