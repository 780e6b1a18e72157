"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""
import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest
from conftest import random_composition, random_square
from oracles import partitions_exact, realization

from subsq import verify
from subsq.conditions import (
    check_b_array_condition,
    check_b_array_condition_for,
    check_condition1,
    check_condition2_all,
    exists_k5,
    exists_small_k,
    exists_two_orders,
)
from subsq.core import Partition, Realization, reduce
from subsq.increment import increment
from subsq.lifting import lift
from subsq.oracle import SearchConfig, Verdict, search_realization
from subsq.rational import build_symmetric_rational
from subsq.rounding import NoMatch, build_k5, floor_array, mixes_zero_and_two, violates_rule1, violates_rule2


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return emit


def test_criterion1_reference_values_54321(report):
    thirds = {
        (1, 2, 3): 31, (1, 2, 4): 19, (1, 2, 5): 10, (1, 3, 4): 10, (1, 3, 5): 4,
        (1, 4, 5): 1, (2, 3, 4): 4, (2, 3, 5): 1, (2, 4, 5): 1, (3, 4, 5): 4,
    }
    diagonal = (25, 16, 9, 4, 1)
    floors_12 = {3: 10, 4: 6, 5: 3}

    best = float("inf")
    for _ in range(20):
        t = time.perf_counter()
        R = build_symmetric_rational((5, 4, 3, 2, 1))
        A = floor_array(R)
        best = min(best, time.perf_counter() - t)

    bad = []
    for i in range(1, 6):
        for j in range(1, 6):
            for k in range(1, 6):
                if i == j == k:
                    want = Fraction(diagonal[i - 1])
                elif len({i, j, k}) < 3:
                    want = Fraction(0)
                else:
                    want = Fraction(thirds[tuple(sorted((i, j, k)))], 3)
                if R.entry(i, j, k).as_fraction() != want:
                    bad.append(("O", i, j, k))
                if A[i - 1][j - 1][k - 1] != int(want):
                    bad.append(("A", i, j, k))
    bad += [("A12", s) for s, v in floors_12.items() if A[0][1][s - 1] != v]
    ok = not bad and best < 1e-3
    report(1, ok, f"(5,4,3,2,1) O and A exact, {len(bad)} mismatches, {best * 1e3:.3f} ms")


def test_criterion2_oracle_equivalence(report):
    t = time.perf_counter()
    parts = [h for n in range(5, 13) for h in partitions_exact(n, 5)]
    disagreements, unknown = [], []
    for h in parts:
        res = search_realization(h, SearchConfig(time_limit=60))
        if res.verdict is Verdict.UNKNOWN:
            unknown.append(h)
            continue
        found = res.verdict is Verdict.FOUND
        if found != exists_k5(h).satisfied:
            disagreements.append(h)
        if found and not verify.is_realization(res.realization.square, h):
            disagreements.append(h)
    spots = {
        (1, 1, 1, 1, 1): True, (2, 1, 1, 1, 1): True, (4, 1, 1, 1, 1): False,
    }
    spot_ok = all((search_realization(h).verdict is Verdict.FOUND) == v for h, v in spots.items())
    elapsed = time.perf_counter() - t
    ok = not disagreements and not unknown and spot_ok and elapsed <= 600
    report(2, ok, f"{len(parts)} partitions, {len(disagreements)} disagreements, {len(unknown)} unknown, {elapsed:.1f} s")


@lru_cache(maxsize=1)
def _constructive_sweep():
    rows = []
    for n in range(5, 41):
        for h in partitions_exact(n, 5):
            if not exists_k5(h):
                continue
            t = time.perf_counter()
            try:
                b = build_k5(h)
            except NoMatch:
                rows.append((h, None, False, 0.0))
                continue
            square = lift(b.outline)
            ok = verify.is_realization(square, h) and verify.reduction_equals(square, b.outline)
            rows.append((h, b.graph, ok, time.perf_counter() - t))
    return rows


def test_criterion3_constructive_completeness(report):
    rows = _constructive_sweep()
    failures = [h for h, g, ok, _ in rows if g is None or not ok]
    slowest = max(dt for *_, dt in rows)
    classes = sorted({g.class_label for _, g, _, _ in rows if g is not None})
    ok = not failures and slowest <= 1.0
    report(3, ok, f"{len(rows)} partitions n<=40 built and verified, {len(failures)} failures, "
                  f"max {slowest:.3f} s, classes seen {classes}")


def test_criterion4_lift_reduce_roundtrip(report):
    rng = random.Random(2024)
    mismatches = 0
    for _ in range(100):
        n = rng.randint(1, 20)
        L = random_square(n, rng)
        P, Q, R = (random_composition(n, rng) for _ in range(3))
        O = reduce(L, P, Q, R)
        if reduce(lift(O), P, Q, R) != O:
            mismatches += 1
    report(4, mismatches == 0, f"100 random roundtrips n<=20, {mismatches} mismatches")


def test_criterion5_increment(report):
    t = time.perf_counter()
    base = search_realization((1, 1, 1, 1, 1)).realization
    failures = []
    for q in range(1, 6):
        out = increment(base, q)
        if out.partition.parts != (1 + q,) * 5 or not realization(out.square.grid, out.partition.parts):
            failures.append(("1^5", q))
    P = Partition((3, 2, 1, 1, 1))
    built = Realization(lift(build_k5(P).outline), P)
    for q in range(1, 4):
        out = increment(built, q)
        want = (3 + q, 2 + q, 1 + q, 1 + q, 1 + q)
        if out.partition.parts != want or not realization(out.square.grid, want):
            failures.append(("32111", q))
    elapsed = time.perf_counter() - t
    report(5, not failures and elapsed <= 5.0, f"8 increments verified, {len(failures)} failures, {elapsed:.2f} s")


def test_criterion6_small_k_agreement(report):
    bad, unknown, count = [], [], 0
    for n in range(1, 11):
        for k in range(1, 5):
            for h in partitions_exact(n, k):
                count += 1
                res = search_realization(h, SearchConfig(time_limit=60))
                if res.verdict is Verdict.UNKNOWN:
                    unknown.append(h)
                elif (res.verdict is Verdict.FOUND) != exists_small_k(h):
                    bad.append(h)
    two = 0
    for n in range(5, 13):
        for k in (5, 6):
            for h in partitions_exact(n, k):
                if len(set(h)) != 2:
                    continue
                two += 1
                res = search_realization(h, SearchConfig(time_limit=60))
                if res.verdict is Verdict.UNKNOWN:
                    unknown.append(h)
                elif (res.verdict is Verdict.FOUND) != exists_two_orders(h):
                    bad.append(h)
    ok = not bad and not unknown
    report(6, ok, f"{count} partitions k<=4 n<=10 and {two} two-order partitions k in 5..6 n<=12, "
                  f"{len(bad)} disagreements, {len(unknown)} unknown")


def test_criterion7_b_array_condition(report):
    counter, checked = [], 0
    for k in (6, 7):
        for n in range(k, 26):
            for h in partitions_exact(n, k):
                if check_condition1(h) and check_condition2_all(h):
                    checked += 1
                    if not check_b_array_condition(h):
                        counter.append(h)
    P = (25, 25, 25, 1, 1, 1, 1, 1)
    r = check_b_array_condition_for(P, {1, 2, 3})
    k8 = not r.satisfied and r.slack == 25 - 75 and not check_b_array_condition(P).satisfied
    report(7, not counter and k8, f"{checked} partitions k in 6..7 n<=25, {len(counter)} counterexamples; "
                                  f"k=8 instance violated at D={{1,2,3}} (25 < 75): {k8}")


def test_criterion8_rule_invariants(report):
    rows = _constructive_sweep()
    bad = []
    for h, g, _, _ in rows:
        if g is None or violates_rule1(g.y) or violates_rule2(g.y) or mixes_zero_and_two(g.y):
            bad.append(h)
    report(8, not bad, f"{len(rows)} y-graphs checked against rules 1, 2 and 0/2 exclusion, {len(bad)} violations")
