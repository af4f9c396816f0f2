"""Verification of the stabilization theory against simulated games.

Every check here turns one mathematical claim into a finite, exact test
over a recorded trace:

- core invariants: candy conservation, firing never gains, the set of
  vertices holding at least twice their degree only shrinks;
- pass-count gaps: adjacent vertices' cumulative fire counts differ by at
  most c at every round, and any pair by at most dist(u, w) * c;
- always-firing battery (needs c >= 4m - n): every round fires someone,
  some vertex fires in every round, and whenever a vertex is short
  (<= 2deg - 2) another holds a surplus (>= 2deg);
- stabilization bound (same gate): the game reaches its fixed point
  within n * diameter * c rounds and no vertex idles more than
  diameter * c consecutive rounds before stabilization.

Checks report pass / fail / not_applicable; not_applicable means the
claim's precondition is unmet and is never silently folded into pass.
Traces are finite but sufficient: once an above-threshold game reaches
its fixed point every vertex fires every round, so rounds beyond the
recorded ones repeat the final state exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .errors import Disconnected, InvalidGraph
from .graph import Graph, stabilization_threshold, validate
from .oracle import (
    DEFAULT_ENUM_CAP,
    compositions_count,
    enumerate_configs,
    exhaustive_verify,
    random_config,
)
from .parallel import (
    Configuration,
    EventuallyPeriodic,
    GameTrace,
    Outcome,
    Stabilized,
    StopReason,
    _step_raw,
    classify,
    run,
)
from .rng import SplitMix64, derive_seed

CHECK_ORDER = (
    "conservation",
    "no_gain",
    "abundant_monotone",
    "adjacent_pass_gap",
    "pairwise_pass_gap",
    "fired_nonempty",
    "always_firing",
    "surplus_pigeonhole",
    "stabilized_within_bound",
    "idle_gap",
    "stabilizes",
)

FINITE_CHECK_NOTE = (
    "checked through stabilization: at the fixed point of an above-threshold "
    "game every vertex fires every round, so later rounds repeat the recorded "
    "final state"
)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    counterexample: Optional[dict] = None
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    metadata: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != FAIL for c in self.checks)

    def get(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "counterexample": c.counterexample,
                    "detail": c.detail,
                }
                for c in self.checks
            ],
            "metadata": self.metadata,
        }

    def to_json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)


def _gate(g: Graph) -> None:
    """All claim-level checks assume a validated, connected, non-degenerate graph."""
    report = validate(g)
    if not (report.simple and report.degree_sum_ok):
        raise InvalidGraph("graph failed structural validation")
    if not report.connected:
        raise Disconnected("analysis checks require a connected graph")
    if report.degenerate:
        raise InvalidGraph("analysis checks require n >= 2")


def _abundant_count(candy: Sequence[int], degree: Sequence[int]) -> int:
    return sum(1 for v in range(len(candy)) if candy[v] >= 2 * degree[v])


# ---------------------------------------------------------------------------
# trace-level internals, shared by the public checks and the battery


def _core_checks(g: Graph, trace: GameTrace) -> list[CheckResult]:
    c = trace.initial.total
    degree = g.degree
    conservation = CheckResult("conservation", PASS)
    no_gain = CheckResult("no_gain", PASS)
    monotone = CheckResult("abundant_monotone", PASS)
    for t in range(len(trace.rounds) + 1):
        if sum(trace.config_at(t).candy) != c:
            conservation = CheckResult(
                "conservation",
                FAIL,
                {"round": t, "observed": sum(trace.config_at(t).candy), "expected": c},
            )
            break
    for t in range(1, len(trace.rounds) + 1):
        prev = trace.config_at(t - 1).candy
        cur = trace.config_at(t).candy
        rec = trace.rounds[t - 1]
        if no_gain.status == PASS:
            for v in sorted(rec.fired):
                if cur[v] > prev[v]:
                    no_gain = CheckResult(
                        "no_gain",
                        FAIL,
                        {"round": t, "vertex": v, "before": prev[v], "after": cur[v]},
                    )
                    break
        if monotone.status == PASS:
            for v in range(g.n):
                if cur[v] >= 2 * degree[v] and prev[v] < 2 * degree[v]:
                    monotone = CheckResult(
                        "abundant_monotone",
                        FAIL,
                        {"round": t, "vertex": v, "before": prev[v], "after": cur[v]},
                    )
                    break
        if no_gain.status == FAIL and monotone.status == FAIL:
            break
    return [conservation, no_gain, monotone]


def _gap_checks(g: Graph, trace: GameTrace) -> list[CheckResult]:
    c = trace.initial.total
    adjacent = CheckResult("adjacent_pass_gap", PASS)
    pairwise = CheckResult("pairwise_pass_gap", PASS)
    pair_bounds = [
        (u, w, g.distance[u][w] * c)
        for u in range(g.n)
        for w in range(u + 1, g.n)
    ]
    for t in range(len(trace.rounds) + 1):
        p = trace.pass_at(t)
        if adjacent.status == PASS:
            for u, w in g.edges:
                gap = abs(p[u] - p[w])
                if gap > c:
                    adjacent = CheckResult(
                        "adjacent_pass_gap",
                        FAIL,
                        {"round": t, "pair": [u, w], "observed": gap, "bound": c},
                    )
                    break
        if pairwise.status == PASS:
            for u, w, bound in pair_bounds:
                gap = abs(p[u] - p[w])
                if gap > bound:
                    pairwise = CheckResult(
                        "pairwise_pass_gap",
                        FAIL,
                        {"round": t, "pair": [u, w], "observed": gap, "bound": bound},
                    )
                    break
        if adjacent.status == FAIL and pairwise.status == FAIL:
            break
    return [adjacent, pairwise]


def _firing_checks(g: Graph, trace: GameTrace) -> tuple[list[CheckResult], Optional[int]]:
    """The three above-threshold firing guarantees; returns (checks, witness)."""
    degree = g.degree
    nonempty = CheckResult("fired_nonempty", PASS)
    for rec in trace.rounds:
        if not rec.fired:
            nonempty = CheckResult("fired_nonempty", FAIL, {"round": rec.t})
            break
    common = set(range(g.n))
    empty_at = None
    for rec in trace.rounds:
        common &= rec.fired
        if not common and empty_at is None:
            empty_at = rec.t
            break
    witness = min(common) if common else None
    always = (
        CheckResult("always_firing", PASS, detail=f"witness vertex {witness}")
        if witness is not None
        else CheckResult("always_firing", FAIL, {"empty_after_round": empty_at})
    )
    pigeonhole = CheckResult("surplus_pigeonhole", PASS)
    for t in range(len(trace.rounds) + 1):
        candy = trace.config_at(t).candy
        deficient = None
        for v in range(g.n):
            if candy[v] <= 2 * degree[v] - 2:
                deficient = v
                break
        if deficient is not None and _abundant_count(candy, degree) == 0:
            pigeonhole = CheckResult(
                "surplus_pigeonhole",
                FAIL,
                {"round": t, "deficient_vertex": deficient},
            )
            break
    return [nonempty, always, pigeonhole], witness


def _max_idle_gap(trace: GameTrace, v: int, upto: int) -> int:
    longest = cur = 0
    for t in range(1, upto + 1):
        if v in trace.rounds[t - 1].fired:
            cur = 0
        else:
            cur += 1
            if cur > longest:
                longest = cur
    return longest


def _bound_checks(
    g: Graph, trace: GameTrace, bound: int, gap_bound: int
) -> list[CheckResult]:
    if trace.stop is not StopReason.FIXED_POINT or trace.stab_round > bound:
        stab = trace.stab_round
        fail = {
            "config": list(trace.initial.candy),
            "stab_round": stab,
            "bound": bound,
        }
        return [
            CheckResult("stabilized_within_bound", FAIL, fail),
            CheckResult("idle_gap", FAIL, fail),
        ]
    stab = trace.stab_round
    within = CheckResult(
        "stabilized_within_bound", PASS, detail=f"stab_round {stab} <= {bound}"
    )
    idle = CheckResult("idle_gap", PASS)
    for v in range(g.n):
        gap = _max_idle_gap(trace, v, stab)
        if gap > gap_bound:
            idle = CheckResult(
                "idle_gap",
                FAIL,
                {"vertex": v, "observed": gap, "bound": gap_bound},
            )
            break
    return [within, idle]


# ---------------------------------------------------------------------------
# public per-claim checks


def check_core_invariants(g: Graph, trace: GameTrace) -> VerificationReport:
    """Conservation, no-gain-by-firing, and abundant-set shrinkage on a trace."""
    checks = _core_checks(g, trace)
    return VerificationReport(
        tuple(checks),
        {"c": trace.initial.total, "rounds_recorded": len(trace.rounds)},
    )


def check_pass_count_gaps(g: Graph, trace: GameTrace) -> VerificationReport:
    """Cumulative fire-count gaps: <= c across edges, <= dist * c across pairs."""
    _gate(g)
    checks = _gap_checks(g, trace)
    return VerificationReport(
        tuple(checks),
        {"c": trace.initial.total, "rounds_recorded": len(trace.rounds)},
    )


def check_always_firing(g: Graph, trace: GameTrace) -> VerificationReport:
    """Above-threshold firing guarantees; not_applicable below 4m - n."""
    _gate(g)
    c = trace.initial.total
    threshold = stabilization_threshold(g)
    meta = {
        "c": c,
        "threshold": threshold,
        "rounds_recorded": len(trace.rounds),
        "finite_check_note": FINITE_CHECK_NOTE,
    }
    if c < threshold:
        checks = [
            CheckResult(name, NOT_APPLICABLE, detail=f"c={c} below threshold {threshold}")
            for name in ("fired_nonempty", "always_firing", "surplus_pigeonhole")
        ]
        return VerificationReport(tuple(checks), meta)
    checks, witness = _firing_checks(g, trace)
    meta["always_firing_witness"] = witness
    return VerificationReport(tuple(checks), meta)


def check_stabilization_bound(g: Graph, init) -> VerificationReport:
    """Run the game and assert the n * diameter * c round bound and idle-gap cap."""
    _gate(g)
    initial = init if isinstance(init, Configuration) else Configuration.of(init)
    c = initial.total
    threshold = stabilization_threshold(g)
    d = g.diameter
    meta = {
        "c": c,
        "threshold": threshold,
        "diameter": d,
        "finite_check_note": FINITE_CHECK_NOTE,
    }
    if c < threshold:
        checks = [
            CheckResult(name, NOT_APPLICABLE, detail=f"c={c} below threshold {threshold}")
            for name in ("stabilized_within_bound", "idle_gap")
        ]
        return VerificationReport(tuple(checks), meta)
    bound = g.n * d * c
    gap_bound = d * c
    trace = run(g, initial, bound + 1)
    checks = _bound_checks(g, trace, bound, gap_bound)
    stab = trace.stab_round
    meta.update(
        {
            "bound": bound,
            "gap_bound": gap_bound,
            "stab_round": stab,
            "slack": bound - stab if stab is not None else None,
        }
    )
    return VerificationReport(tuple(checks), meta)


# ---------------------------------------------------------------------------
# the full battery: one classification, one trace, every check


def verify_battery(g: Graph, config, state_cap: Optional[int] = None) -> VerificationReport:
    """Classify one configuration exactly and run every check on its trace.

    The trace window is the whole game for stabilizing configurations and
    preperiod + two full periods for oscillating ones, which exercises
    every reachable state of the orbit.
    """
    _gate(g)
    initial = config if isinstance(config, Configuration) else Configuration.of(config)
    c = initial.total
    threshold = stabilization_threshold(g)
    d = g.diameter
    outcome = classify(g, initial, state_cap=state_cap)
    stabilized = isinstance(outcome, Stabilized)
    if stabilized:
        trace = run(g, initial, outcome.stab_round + 1)
    else:
        trace = run(g, initial, outcome.preperiod + 2 * outcome.period)
    checks: list[CheckResult] = []
    checks.extend(_core_checks(g, trace))
    checks.extend(_gap_checks(g, trace))
    applicable = c >= threshold
    witness = None
    if applicable:
        firing, witness = _firing_checks(g, trace)
        checks.extend(firing)
        checks.extend(_bound_checks(g, trace, g.n * d * c, d * c))
    else:
        checks.extend(
            CheckResult(name, NOT_APPLICABLE, detail=f"c={c} below threshold {threshold}")
            for name in (
                "fired_nonempty",
                "always_firing",
                "surplus_pigeonhole",
                "stabilized_within_bound",
                "idle_gap",
            )
        )
    if stabilized:
        checks.append(CheckResult("stabilizes", PASS))
    else:
        cycle_min = min(_cycle_states(g, initial.candy, outcome.preperiod, outcome.period))
        checks.append(
            CheckResult(
                "stabilizes",
                FAIL,
                {
                    "config": list(initial.candy),
                    "preperiod": outcome.preperiod,
                    "period": outcome.period,
                    "cycle_min": list(cycle_min),
                },
            )
        )
    stab = outcome.stab_round if stabilized else None
    metadata = {
        "graph": {"n": g.n, "m": g.m, "diameter": d, "connected": g.connected},
        "c": c,
        "threshold": threshold,
        "bound": g.n * d * c if applicable else None,
        "gap_bound": d * c if applicable else None,
        "outcome": "stabilized" if stabilized else "periodic",
        "stab_round": stab,
        "preperiod": None if stabilized else outcome.preperiod,
        "period": None if stabilized else outcome.period,
        "slack": (g.n * d * c - stab) if (applicable and stab is not None) else None,
        "always_firing_witness": witness,
        "abundant_start": _abundant_count(initial.candy, g.degree),
        "abundant_end": _abundant_count(trace.final.candy, g.degree),
        "rounds_recorded": len(trace.rounds),
        "finite_check_note": FINITE_CHECK_NOTE,
    }
    return VerificationReport(tuple(checks), metadata)


def _cycle_states(g: Graph, start: tuple[int, ...], preperiod: int, period: int):
    x = tuple(start)
    for _ in range(preperiod):
        x, _f = _step_raw(g.adjacency, g.degree, x)
    states = []
    for _ in range(period):
        states.append(x)
        x, _f = _step_raw(g.adjacency, g.degree, x)
    return states


# ---------------------------------------------------------------------------
# named checks for oracle.exhaustive_verify


def _named_stabilizes(g: Graph, comp) -> Optional[dict]:
    outcome = classify(g, comp)
    if isinstance(outcome, Stabilized):
        return None
    cycle_min = min(_cycle_states(g, tuple(comp), outcome.preperiod, outcome.period))
    return {
        "kind": "periodic",
        "preperiod": outcome.preperiod,
        "period": outcome.period,
        "witness_config": cycle_min,
    }


def _named_bound(g: Graph, comp) -> Optional[dict]:
    c = sum(comp)
    threshold = stabilization_threshold(g)
    if c < threshold:
        raise ValueError(
            f"bound check needs c >= {threshold}; use 'stabilizes' below the threshold"
        )
    report = check_stabilization_bound(g, comp)
    return _first_failure(report)


def _named_pass_gaps(g: Graph, comp) -> Optional[dict]:
    report = verify_battery(g, comp)
    failure = None
    for name in ("adjacent_pass_gap", "pairwise_pass_gap"):
        c = report.get(name)
        if c.status == FAIL:
            failure = {"check": name, **(c.counterexample or {})}
            break
    return failure


def _named_always_firing(g: Graph, comp) -> Optional[dict]:
    c = sum(comp)
    threshold = stabilization_threshold(g)
    if c < threshold:
        raise ValueError(f"always_firing check needs c >= {threshold}")
    report = verify_battery(g, comp)
    for name in ("fired_nonempty", "always_firing", "surplus_pigeonhole"):
        r = report.get(name)
        if r.status == FAIL:
            return {"check": name, **(r.counterexample or {})}
    return None


def _named_core(g: Graph, comp) -> Optional[dict]:
    outcome = classify(g, comp)
    if isinstance(outcome, Stabilized):
        trace = run(g, comp, outcome.stab_round + 1)
    else:
        trace = run(g, comp, outcome.preperiod + 2 * outcome.period)
    report = check_core_invariants(g, trace)
    return _first_failure(report)


def _named_battery(g: Graph, comp) -> Optional[dict]:
    report = verify_battery(g, comp)
    return _first_failure(report)


def _first_failure(report: VerificationReport) -> Optional[dict]:
    for c in report.checks:
        if c.status == FAIL:
            out = {"check": c.name, **(c.counterexample or {})}
            if c.name == "stabilizes" and "cycle_min" in out:
                out["witness_config"] = tuple(out["cycle_min"])
            return out
    return None


NAMED_CHECKS = {
    "stabilizes": _named_stabilizes,
    "bound": _named_bound,
    "pass_gaps": _named_pass_gaps,
    "always_firing": _named_always_firing,
    "core": _named_core,
    "battery": _named_battery,
}


# ---------------------------------------------------------------------------
# corpus-level drivers


def verify_corpus(
    g: Graph,
    c: int,
    mode: str = "exhaustive",
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    enum_cap: int = DEFAULT_ENUM_CAP,
    state_cap: Optional[int] = None,
) -> dict:
    """Run the full battery over a configuration corpus; JSON-ready result.

    mode "exhaustive" scans every composition in lexicographic order and
    stops at the first failing configuration (hence reports the minimal
    one); mode "sampled" draws `trials` seeded configurations.
    """
    _gate(g)
    threshold = stabilization_threshold(g)
    d = g.diameter
    if mode == "exhaustive":
        total = compositions_count(g.n, c)
        stream: Iterable = enumerate_configs(g.n, c, cap=enum_cap)
    elif mode == "sampled":
        if trials is None or seed is None:
            raise ValueError("sampled mode needs trials and seed")
        total = trials
        stream = (
            random_config(g.n, c, derive_seed(seed, i)).candy for i in range(trials)
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    agg: dict[str, dict] = {
        name: {"name": name, "status": None, "first_counterexample": None}
        for name in CHECK_ORDER
    }
    checked = 0
    failing_config = None
    for comp in stream:
        report = verify_battery(g, comp, state_cap=state_cap)
        checked += 1
        for result in report.checks:
            slot = agg[result.name]
            if result.status == FAIL:
                if slot["status"] != FAIL:
                    slot["status"] = FAIL
                    slot["first_counterexample"] = {
                        "config": list(comp),
                        "index": checked - 1,
                        **(result.counterexample or {}),
                    }
            elif slot["status"] is None or (
                slot["status"] == NOT_APPLICABLE and result.status == PASS
            ):
                slot["status"] = result.status
        if not report.ok and failing_config is None:
            failing_config = list(comp)
            break
    for slot in agg.values():
        if slot["status"] is None:
            slot["status"] = NOT_APPLICABLE
    ok = failing_config is None
    return {
        "graph": {"n": g.n, "m": g.m, "diameter": d, "connected": g.connected},
        "c": c,
        "threshold": threshold,
        "round_bound": g.n * d * c if c >= threshold else None,
        "mode": mode,
        "trials": trials,
        "seed": seed,
        "configs_total": total,
        "configs_checked": checked,
        "ok": ok,
        "first_failing_config": failing_config,
        "checks": [agg[name] for name in CHECK_ORDER],
        "finite_check_note": FINITE_CHECK_NOTE,
    }


SWEEP_COLUMNS = (
    "n",
    "m",
    "d",
    "c",
    "threshold",
    "trial",
    "outcome",
    "stab_round_or_period",
    "bound",
    "slack",
    "v_star",
    "abundant_start",
    "abundant_end",
)


def sweep_experiment(
    g: Graph,
    c_values: Sequence[int],
    trials: int,
    seed: int,
    state_cap: Optional[int] = None,
) -> list[dict]:
    """One battery row per (c, trial) with a seeded random configuration.

    Output order is fixed by the (c index, trial) key, so identical
    arguments reproduce identical rows byte for byte; trials may in
    principle run concurrently without changing that order.
    """
    _gate(g)
    threshold = stabilization_threshold(g)
    d = g.diameter
    rows = []
    for ci, c in enumerate(c_values):
        for trial in range(trials):
            cfg = random_config(g.n, c, derive_seed(seed, ci, trial))
            report = verify_battery(g, cfg, state_cap=state_cap)
            md = report.metadata
            stabilized = md["outcome"] == "stabilized"
            rows.append(
                {
                    "n": g.n,
                    "m": g.m,
                    "d": d,
                    "c": c,
                    "threshold": threshold,
                    "trial": trial,
                    "outcome": md["outcome"],
                    "stab_round_or_period": md["stab_round"] if stabilized else md["period"],
                    "bound": g.n * d * c,
                    "slack": md["slack"] if md["slack"] is not None else -1,
                    "v_star": md["always_firing_witness"]
                    if md["always_firing_witness"] is not None
                    else -1,
                    "abundant_start": md["abundant_start"],
                    "abundant_end": md["abundant_end"],
                }
            )
    return rows


def sweep_csv(rows: list[dict]) -> str:
    lines = [",".join(SWEEP_COLUMNS)]
    for row in rows:
        lines.append(",".join(str(row[col]) for col in SWEEP_COLUMNS))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ProbeVerdict:
    c: int
    all_stabilize: bool
    n_configs: int
    counterexample: Optional[dict]


@dataclass(frozen=True)
class ProbeResult:
    """Exhaustive stabilization verdict for every total c <= c_max."""

    verdicts: tuple[ProbeVerdict, ...]
    c_star: Optional[int]  # least c whose whole suffix up to c_max stabilizes
    threshold: int
    c_star_within_threshold: Optional[bool]  # None when c_max < threshold
    monotone: bool

    def to_dict(self) -> dict:
        return {
            "c_star": self.c_star,
            "threshold": self.threshold,
            "c_star_within_threshold": self.c_star_within_threshold,
            "monotone": self.monotone,
            "verdicts": [
                {
                    "c": v.c,
                    "all_stabilize": v.all_stabilize,
                    "n_configs": v.n_configs,
                    "counterexample": v.counterexample,
                }
                for v in self.verdicts
            ],
        }


def threshold_probe(g: Graph, c_max: int, cap: int = DEFAULT_ENUM_CAP) -> ProbeResult:
    """Find the empirical stabilization threshold by exhaustive scan per c.

    c_star is the least c such that every total in [c, c_max] stabilizes
    exhaustively (None when c_max itself fails).  Whether stabilization
    is monotone in c is reported rather than assumed; it genuinely is
    not on small cycles.
    """
    _gate(g)
    verdicts = []
    for c in range(c_max + 1):
        res = exhaustive_verify(g, c, "stabilizes", cap=cap)
        ce = None
        if res.counterexample is not None:
            ce = {
                "config": list(res.counterexample.config),
                "initial": list(res.counterexample.initial),
                **res.counterexample.detail,
            }
        verdicts.append(
            ProbeVerdict(
                c=c,
                all_stabilize=res.passed,
                n_configs=res.configs_checked if res.passed else compositions_count(g.n, c),
                counterexample=ce,
            )
        )
    c_star: Optional[int] = None
    for v in reversed(verdicts):
        if not v.all_stabilize:
            break
        c_star = v.c
    threshold = stabilization_threshold(g)
    within: Optional[bool]
    if c_max < threshold:
        within = None
    else:
        within = c_star is not None and c_star <= threshold
    monotone = True
    seen_pass = False
    for v in verdicts:
        if v.all_stabilize:
            seen_pass = True
        elif seen_pass:
            monotone = False
            break
    return ProbeResult(tuple(verdicts), c_star, threshold, within, monotone)


SUITE_COLUMNS = (
    "instance",
    "kind",
    "n",
    "m",
    "d",
    "c",
    "stab_round",
    "bound",
    "slack",
    "v_star",
) + CHECK_ORDER


@dataclass(frozen=True)
class SuiteResult:
    rows: tuple[dict, ...]
    violations: tuple[dict, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def suite_csv(rows: Sequence[dict]) -> str:
    lines = [",".join(SUITE_COLUMNS)]
    for row in rows:
        lines.append(",".join(str(row[col]) for col in SUITE_COLUMNS))
    return "\n".join(lines) + "\n"


def random_instance_suite(
    count: int,
    seed: int,
    n_max: int = 12,
    state_cap: Optional[int] = None,
) -> SuiteResult:
    """Battery over `count` random (graph, configuration) instances.

    Each instance draws a generator kind, a size, seeds for the graph and
    the configuration, and sets c to the threshold 4m - n exactly, so the
    above-threshold guarantees must all hold.  A pure function of
    (count, seed, n_max): rerunning reproduces identical rows.
    """
    from .graph import generate  # local import keeps module deps one-way

    kinds = ("cycle", "path", "complete", "star", "random_tree", "random_connected")
    p_choices = (0.3, 0.4, 0.5, 0.6, 0.7)
    rows = []
    violations = []
    for i in range(count):
        rng = SplitMix64(derive_seed(seed, i))
        kind = kinds[rng.below(len(kinds))]
        if kind == "cycle":
            n = 3 + rng.below(n_max - 2)
        elif kind == "random_connected":
            n = 3 + rng.below(n_max - 2)
        else:
            n = 2 + rng.below(n_max - 1)
        p = p_choices[rng.below(len(p_choices))] if kind == "random_connected" else None
        g = generate(kind, n, p=p, seed=rng.next_u64())
        c = stabilization_threshold(g)
        cfg = random_config(g.n, c, rng.next_u64())
        report = verify_battery(g, cfg, state_cap=state_cap)
        md = report.metadata
        row = {
            "instance": i,
            "kind": kind,
            "n": g.n,
            "m": g.m,
            "d": md["graph"]["diameter"],
            "c": c,
            "stab_round": md["stab_round"] if md["stab_round"] is not None else -1,
            "bound": md["bound"],
            "slack": md["slack"] if md["slack"] is not None else -1,
            "v_star": md["always_firing_witness"]
            if md["always_firing_witness"] is not None
            else -1,
        }
        for result in report.checks:
            row[result.name] = result.status
            if result.status == FAIL:
                violations.append(
                    {
                        "instance": i,
                        "check": result.name,
                        "kind": kind,
                        "n": g.n,
                        "config": list(cfg.candy),
                        "counterexample": result.counterexample,
                    }
                )
        rows.append(row)
    return SuiteResult(tuple(rows), tuple(violations))
