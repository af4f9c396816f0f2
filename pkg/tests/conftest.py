"""Shared fixtures and an independent reference simulator.

The reference below is deliberately written in a different style from
the package (dict-of-sets adjacency, list rebuilding, no caching) so the
two implementations can only agree by both being correct.
"""

import pytest

import chipfire as cf


def neighbor_map(g):
    return {v: set(g.adjacency[v]) for v in range(g.n)}


def naive_round(neighbors, candy):
    firing = {
        v
        for v, pile in enumerate(candy)
        if len(neighbors[v]) > 0 and pile >= len(neighbors[v])
    }
    out = []
    for v, pile in enumerate(candy):
        sent = len(neighbors[v]) if v in firing else 0
        received = sum(1 for u in neighbors[v] if u in firing)
        out.append(pile - sent + received)
    return out, firing


def naive_orbit(g, candy, limit=100_000):
    """(preperiod, period) by remembering every visited state."""
    neighbors = neighbor_map(g)
    seen = {}
    x = list(candy)
    t = 0
    while tuple(x) not in seen:
        seen[tuple(x)] = t
        x, _ = naive_round(neighbors, x)
        t += 1
        assert t <= limit, "orbit blew past the test limit"
    first = seen[tuple(x)]
    return first, t - first


@pytest.fixture
def c3():
    return cf.generate("cycle", 3)


@pytest.fixture
def c4():
    return cf.generate("cycle", 4)


@pytest.fixture
def p3():
    return cf.generate("path", 3)


@pytest.fixture
def p4():
    return cf.generate("path", 4)


@pytest.fixture
def star4():
    # the 3-leaf star: center 0, leaves 1..3
    return cf.generate("star", 4)


@pytest.fixture
def k2():
    return cf.generate("path", 2)
