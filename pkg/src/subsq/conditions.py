"""Existence conditions and classifiers for realizations.

Every inequality is evaluated in exact integer arithmetic.  Subsets ``D`` of
block indices are 1-based and enumerated in lexicographic order of their
indicator vectors ``(x_1, ..., x_k)``; the first violating subset in that
order is the reported witness.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .core import Partition


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of an inequality family.

    ``slack`` is LHS - RHS of the tightest inequality checked, so it is
    negative exactly when the family is violated.
    """

    satisfied: bool
    witness: tuple[int, ...] | None = None
    slack: int = 0

    def __post_init__(self) -> None:
        if self.satisfied != (self.witness is None):
            raise ValueError("witness must be present exactly when unsatisfied")

    def __bool__(self) -> bool:
        return self.satisfied


def _parts(P: Partition | Sequence[int]) -> tuple[int, ...]:
    return P.parts if isinstance(P, Partition) else Partition(tuple(P)).parts


def subsets(k: int, size: int | None = None) -> Iterator[tuple[int, ...]]:
    """1-based subsets of [k] in indicator-vector lexicographic order."""
    for mask in range(1 << k):
        D = tuple(i + 1 for i in range(k) if (mask >> (k - 1 - i)) & 1)
        if size is None or len(D) == size:
            yield D


def _check_subset(k: int, D: Iterable[int]) -> tuple[int, ...]:
    D = tuple(sorted(set(D)))
    for i in D:
        if not 1 <= i <= k:
            raise IndexError(f"block index {i} outside 1..{k}")
    return D


def _scan(slacks: Iterable[tuple[tuple[int, ...], int]]) -> ConditionReport:
    witness = None
    tightest = None
    for D, slack in slacks:
        if tightest is None or slack < tightest:
            tightest = slack
        if slack < 0 and witness is None:
            witness = D
    return ConditionReport(witness is None, witness, 0 if tightest is None else tightest)


def check_condition1(P: Partition | Sequence[int]) -> ConditionReport:
    """Largest part at most the sum of the third and later parts."""
    h = _parts(P)
    if len(h) < 3:
        raise ValueError("condition 1 needs at least three parts")
    slack = sum(h[2:]) - h[0]
    return ConditionReport(slack >= 0, None if slack >= 0 else (1,), slack)


def condition2_slack(P: Partition | Sequence[int], D: Iterable[int]) -> int:
    h = _parts(P)
    D = _check_subset(len(h), D)
    n = sum(h)
    inside = sum(h[i - 1] for i in D)
    return n * n - sum(x * x for x in h) - 3 * inside * (n - inside)


def check_condition2(P: Partition | Sequence[int], D: Iterable[int]) -> ConditionReport:
    """``n^2 - sum h_i^2 >= 3 (sum_D h)(sum_{not D} h)`` for one subset."""
    D = _check_subset(len(_parts(P)), D)
    slack = condition2_slack(P, D)
    return ConditionReport(slack >= 0, None if slack >= 0 else D, slack)


def check_condition2_all(P: Partition | Sequence[int]) -> ConditionReport:
    h = _parts(P)
    return _scan((D, condition2_slack(h, D)) for D in subsets(len(h)))


def exists_k5(P: Partition | Sequence[int]) -> ConditionReport:
    """Exact existence test for five parts: condition 2 over the ten 3-subsets."""
    h = _parts(P)
    if len(h) != 5:
        raise ValueError(f"exists_k5 needs exactly 5 parts, got {len(h)}")
    return _scan((D, condition2_slack(h, D)) for D in subsets(5, 3))


def exists_small_k(P: Partition | Sequence[int]) -> bool:
    h = _parts(P)
    k = len(h)
    if k == 1:
        return True
    if k == 2:
        return False
    if k == 3:
        return h[0] == h[1] == h[2]
    if k == 4:
        return h[0] == h[1] == h[2] or (h[1] == h[2] == h[3] and h[0] <= 2 * h[3])
    raise ValueError(f"exists_small_k covers k <= 4, got k = {k}")


def exists_two_orders(P: Partition | Sequence[int]) -> bool | None:
    """Verdict for at most two distinct part sizes, ``None`` otherwise."""
    h = _parts(P)
    k = len(h)
    sizes = sorted(set(h), reverse=True)
    if len(sizes) == 1:
        return k != 2
    if len(sizes) > 2:
        return None
    if k <= 4:
        return exists_small_k(h)
    a, b = sizes
    u = h.count(a)
    return u >= 3 or a <= (k - 2) * b


def check_bounded_ratio(P: Partition | Sequence[int]) -> bool:
    """Sufficient condition for k >= 5: largest part at most three times the smallest."""
    h = _parts(P)
    if len(h) < 5:
        raise ValueError("the bounded-ratio condition needs at least five parts")
    return h[0] <= 3 * h[-1]


def b_array_slack(P: Partition | Sequence[int], D: Iterable[int]) -> int:
    """LHS - RHS of ``(2k-2-3|D|) sum_{not D} h >= (k+2-3|D|) sum_D h``."""
    h = _parts(P)
    k = len(h)
    D = _check_subset(k, D)
    d = len(D)
    inside = sum(h[i - 1] for i in D)
    outside = sum(h) - inside
    return (2 * k - 2 - 3 * d) * outside - (k + 2 - 3 * d) * inside


def check_b_array_condition_for(P: Partition | Sequence[int], D: Iterable[int]) -> ConditionReport:
    D = _check_subset(len(_parts(P)), D)
    slack = b_array_slack(P, D)
    return ConditionReport(slack >= 0, None if slack >= 0 else D, slack)


def check_b_array_condition(P: Partition | Sequence[int], half_only: bool = False) -> ConditionReport:
    """Necessary condition for a k-part increment array, over every subset D.

    A subset and its complement give the same inequality, so ``half_only``
    restricts the scan to ``|D| <= k/2`` without changing the verdict.
    """
    h = _parts(P)
    k = len(h)
    return _scan(
        (D, b_array_slack(h, D)) for D in subsets(k) if not half_only or 2 * len(D) <= k
    )

