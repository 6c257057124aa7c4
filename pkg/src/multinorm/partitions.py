"""Enumeration helpers: set partitions, slot assignments, permutations."""

from __future__ import annotations

from itertools import permutations
from typing import Iterator

from .errors import BudgetError


def set_partitions(k: int, max_blocks: int | None = None) -> Iterator[list[list[int]]]:
    """All partitions of {0..k-1} via restricted growth strings."""
    if k > 12:
        raise BudgetError(f"set-partition enumeration capped at 12 elements, got {k}")
    a = [0] * k
    b = [1] * k  # b[i] = 1 + max(a[:i])

    def emit():
        nblocks = max(a) + 1
        if max_blocks is not None and nblocks > max_blocks:
            return None
        blocks: list[list[int]] = [[] for _ in range(nblocks)]
        for i, bi in enumerate(a):
            blocks[bi].append(i)
        return blocks

    if k == 0:
        yield []
        return
    pos = k - 1
    out = emit()
    if out is not None:
        yield out
    while True:
        while pos > 0 and a[pos] >= b[pos]:
            a[pos] = 0
            pos -= 1
        if pos == 0:
            return
        a[pos] += 1
        for i in range(pos + 1, k):
            a[i] = 0
            b[i] = max(b[pos], a[pos] + 1)
        pos = k - 1
        out = emit()
        if out is not None:
            yield out


def slot_assignments(items: int, slots: int, budget: int) -> Iterator[tuple[int, ...]]:
    """All maps {0..items-1} -> {0..slots-1}, i.e. slots**items tuples."""
    total = slots**items
    if total > budget:
        raise BudgetError(f"assignment enumeration needs {total} > budget {budget}")
    assign = [0] * items
    while True:
        yield tuple(assign)
        i = items - 1
        while i >= 0 and assign[i] == slots - 1:
            assign[i] = 0
            i -= 1
        if i < 0:
            return
        assign[i] += 1


def all_permutations(k: int, budget: int) -> Iterator[tuple[int, ...]]:
    total = 1
    for i in range(2, k + 1):
        total *= i
    if total > budget:
        raise BudgetError(f"permutation enumeration needs {total} > budget {budget}")
    return permutations(range(k))
