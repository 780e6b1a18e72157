"""Symmetric rational outline for five-part partitions."""
from __future__ import annotations

from typing import Sequence

from .conditions import exists_k5
from .core import Partition, RationalOutline, SixthCount, SubsqError


class ConditionViolated(SubsqError, ValueError):
    """The partition fails the five-part existence condition."""

    def __init__(self, partition: Partition, triple: tuple[int, ...], slack: int):
        self.partition = partition
        self.triple = triple
        self.slack = slack
        super().__init__(
            f"no realization of ({partition}): the inequality for D = {set(triple)} "
            f"fails by {-slack}"
        )


def triple_sixths(h: Sequence[int], i: int, j: int, k: int) -> int:
    """Six times the common entry for three distinct 0-based blocks."""
    n = sum(h)
    s = h[i] + h[j] + h[k]
    return n * n - sum(x * x for x in h) - 3 * s * (n - s)


def build_symmetric_rational(P: Partition | Sequence[int]) -> RationalOutline:
    if not isinstance(P, Partition):
        P = Partition(tuple(P))
    if P.k != 5:
        raise ValueError(f"the symmetric rational outline is defined for 5 parts, got {P.k}")
    report = exists_k5(P)
    if not report.satisfied:
        raise ConditionViolated(P, report.witness, report.slack)
    h = P.parts
    zero = SixthCount(0)
    entries = []
    for i in range(5):
        row = []
        for j in range(5):
            cell = []
            for k in range(5):
                if i == j == k:
                    cell.append(SixthCount.from_int(h[i] ** 2))
                elif i == j or i == k or j == k:
                    cell.append(zero)
                else:
                    cell.append(SixthCount(triple_sixths(h, i, j, k)))
            row.append(tuple(cell))
        entries.append(tuple(row))
    return RationalOutline(P, tuple(entries))
