"""Independent reference computations used by the tests."""

from __future__ import annotations

import math
from typing import Any, Sequence

from minmaxfine import MinMaxFineHeap


def level(i: int) -> int:
    return int(math.floor(math.log2(i)))


def descendants(i: int, n: int) -> list[int]:
    out, frontier = [], [i]
    while frontier:
        nxt = [c for s in frontier for c in (2 * s, 2 * s + 1) if c <= n]
        out += nxt
        frontier = nxt
    return out


def is_minmax_ordered(keys: Sequence[Any]) -> bool:
    """Brute force over every ancestor/descendant pair (keys are 0-based here)."""
    n = len(keys)
    for i in range(1, n + 1):
        for d in descendants(i, n):
            if level(i) % 2 == 0 and keys[d - 1] < keys[i - 1]:
                return False
            if level(i) % 2 == 1 and keys[d - 1] > keys[i - 1]:
                return False
    return True


def reference_bits(keys: Sequence[Any]) -> list[int]:
    n = len(keys)
    bits = []
    for i in range(1, n + 1):
        if 2 * i + 1 <= n:
            bits.append(1 if keys[2 * i - 1] >= keys[2 * i] else 0)
        else:
            bits.append(1)
    return bits


def fine_heap(keys: Sequence[Any], **kw: Any) -> MinMaxFineHeap:
    """Wrap a hand-written min-max ordered array, bits computed from scratch."""
    assert is_minmax_ordered(keys), keys
    return MinMaxFineHeap.from_arrays(keys, reference_bits(keys), **kw)
