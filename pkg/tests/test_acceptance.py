"""Acceptance gate: the nine headline guarantees, one verdict line each.

Run with `pytest tests/test_acceptance.py -s -v` to see the verdict
lines inline; without -s they appear in captured output.  Every
criterion is exact (zero tolerance) except the stated runtime ceilings.
"""

import time

import pytest

import chipfire as cf

SUITE_SEED = 20260817
SUITE_SIZE = 500


def _verdict(number, ok, note=""):
    line = f"CRITERION {number}: {'PASS' if ok else 'FAIL'}"
    if note:
        line += f"  ({note})"
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def suite500():
    return cf.random_instance_suite(SUITE_SIZE, seed=SUITE_SEED, n_max=12)


def _timed_corpus(graph, c):
    t0 = time.monotonic()
    report = cf.verify_corpus(graph, c)
    return report, time.monotonic() - t0


@pytest.fixture(scope="module")
def corpus_reports():
    """Exhaustive battery aggregates reused by criteria 1, 2, and 7."""
    return {
        "c3": _timed_corpus(cf.generate("cycle", 3), 9),
        "c4": _timed_corpus(cf.generate("cycle", 4), 12),
        "p3": _timed_corpus(cf.generate("path", 3), 5),
    }


def test_criterion_1_triangle_exhaustive(corpus_reports):
    out, elapsed = corpus_reports["c3"]
    by_name = {c["name"]: c["status"] for c in out["checks"]}
    ok = (
        out["ok"]
        and out["configs_total"] == 55
        and out["configs_checked"] == 55
        and out["round_bound"] == 27
        and all(
            by_name[name] == "pass"
            for name in (
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
        )
        and elapsed < 1.0
    )
    _verdict(1, ok, f"55 configs, bound 27, {elapsed:.2f}s")


def test_criterion_2_square_and_path(corpus_reports):
    square, square_time = corpus_reports["c4"]
    path, path_time = corpus_reports["p3"]
    elapsed = square_time + path_time
    ok = (
        square["ok"]
        and square["configs_total"] == 455
        and square["round_bound"] == 96
        and path["ok"]
        and path["configs_total"] == 21
        and path["round_bound"] == 30
        and elapsed < 5.0
    )
    _verdict(2, ok, f"455 + 21 configs, bounds 96/30, {elapsed:.2f}s")


def test_criterion_3_cycle_low_threshold():
    # every composition with c = 3n - 2 on the n-cycle stabilizes;
    # the counts are the stars-and-bars values C(c + n - 1, n - 1)
    t0 = time.monotonic()
    counts = {}
    for n in (3, 4, 5):
        g = cf.generate("cycle", n)
        c = 3 * n - 2
        res = cf.exhaustive_verify(g, c, "stabilizes")
        counts[n] = (res.passed, res.configs_checked, cf.compositions_count(n, c))
    elapsed = time.monotonic() - t0
    ok = (
        counts[3] == (True, 36, 36)
        and counts[4] == (True, 286, 286)
        and counts[5] == (True, 2380, 2380)
        and elapsed < 30.0
    )
    _verdict(3, ok, f"36/286/2380 configs, {elapsed:.1f}s")


def test_criterion_4_below_threshold_counterexample():
    g = cf.generate("cycle", 4)
    outcome = cf.classify(g, [2, 0, 2, 0])
    res = cf.exhaustive_verify(g, 4, "stabilizes")
    ce = res.counterexample
    ok = (
        outcome == cf.EventuallyPeriodic(preperiod=0, period=2)
        and not res.passed
        and ce is not None
        and ce.config == (0, 2, 0, 2)
        and ce.initial == (0, 0, 0, 4)
        and ce.rank == 0
    )
    _verdict(4, ok, "EventuallyPeriodic{0,2}; witness (0,2,0,2) from initial (0,0,0,4)")


def test_criterion_5_pass_count_gaps(suite500):
    rows = suite500.rows
    gap_clean = all(
        row["adjacent_pass_gap"] == "pass" and row["pairwise_pass_gap"] == "pass"
        for row in rows
    )
    shape_ok = (
        len(rows) == SUITE_SIZE
        and all(2 <= row["n"] <= 12 for row in rows)
        and all(row["c"] == 4 * row["m"] - row["n"] for row in rows)
    )
    bad = [v for v in suite500.violations if "pass_gap" in v["check"]]
    ok = gap_clean and shape_ok and not bad
    _verdict(5, ok, f"{len(rows)} instances, 0 gap violations")


def test_criterion_6_always_firing(suite500):
    rows = suite500.rows
    firing_clean = all(
        row["fired_nonempty"] == "pass"
        and row["always_firing"] == "pass"
        and row["surplus_pigeonhole"] == "pass"
        and row["v_star"] >= 0
        for row in rows
    )
    ok = firing_clean and len(rows) == SUITE_SIZE
    _verdict(6, ok, f"{len(rows)} instances, v* present in every trace")


def test_criterion_7_monotone_and_no_gain(suite500, corpus_reports):
    suite_clean = all(
        row["abundant_monotone"] == "pass" and row["no_gain"] == "pass"
        for row in suite500.rows
    )
    corpus_clean = all(
        entry["status"] == "pass"
        for report, _elapsed in corpus_reports.values()
        for entry in report["checks"]
        if entry["name"] in ("abundant_monotone", "no_gain")
    )
    ok = suite_clean and corpus_clean
    _verdict(7, ok, "every trace in the suite and the exhaustive corpora")


def test_criterion_8_sequential_order_independence():
    graphs = [
        ("P3", cf.generate("path", 3)),
        ("C3", cf.generate("cycle", 3)),
        ("P4", cf.generate("path", 4)),
        ("S3", cf.generate("star", 4)),
    ]
    total = terminating = 0
    failures = []
    for name, g in graphs:
        for c in range(6):
            for comp in cf.enumerate_configs(g.n, c):
                rep = cf.check_abelian(g, comp, n_orders=10, seed=SUITE_SEED)
                total += 1
                if rep.applicable:
                    terminating += 1
                    if not rep.passed:
                        failures.append((name, comp, rep.divergences))
    ok = total == 364 and terminating == 48 and not failures
    _verdict(8, ok, f"{terminating} terminating of {total} instances, 10 orders each")


def test_criterion_9_byte_identical_rerun(suite500):
    first = cf.suite_csv(suite500.rows)
    rerun = cf.random_instance_suite(SUITE_SIZE, seed=SUITE_SEED, n_max=12)
    second = cf.suite_csv(rerun.rows)
    ok = first == second and len(first) > 0
    _verdict(9, ok, f"{len(first)} CSV bytes identical across runs")
