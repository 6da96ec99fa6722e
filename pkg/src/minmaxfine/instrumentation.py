"""Comparison/move accounting and the analytical creation cost model.

Every structure in the package routes key ordering through a comparator
object exposing ``less(a, b)``; the counters on those objects are the only
source of comparison counts.  Moves and bit writes are tallied by the
structures themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Literal

from .errors import HeapDomainError

Parity = Literal["min", "max"]

#: Additive slack applied to the runtime insert/delete bounds.
INSERT_SLACK = 3
DELETE_SLACK = 3

#: Largest ``h`` accepted by the cost model.
MAX_H = 30


class CountingComparator:
    """Strict ``<`` on keys, counting every call."""

    __slots__ = ("comparisons",)

    def __init__(self) -> None:
        self.comparisons = 0

    def less(self, a: Any, b: Any) -> bool:
        self.comparisons += 1
        return a < b

    def reset(self) -> None:
        self.comparisons = 0


class TracingComparator(CountingComparator):
    """Counting comparator that also records every ``(a, b, result)`` query."""

    __slots__ = ("trace",)

    def __init__(self) -> None:
        super().__init__()
        self.trace: list[tuple[Any, Any, bool]] = []

    def less(self, a: Any, b: Any) -> bool:
        self.comparisons += 1
        r = a < b
        self.trace.append((a, b, r))
        return r

    def reset(self) -> None:
        super().reset()
        self.trace.clear()


@dataclass(frozen=True)
class OpCostReport:
    """Cost of one operation: comparisons, element moves and bit writes."""

    comparisons: int = 0
    moves: int = 0
    bit_writes: int = 0

    def __post_init__(self) -> None:
        if min(self.comparisons, self.moves, self.bit_writes) < 0:
            raise ValueError("cost fields must be non-negative")


def snapshot(structure: Any) -> tuple[int, int, int]:
    return (
        structure.comparator.comparisons,
        structure.moves,
        getattr(structure, "bit_writes", 0),
    )


def measure(structure: Any, op: Callable[..., Any], *args: Any) -> tuple[Any, OpCostReport]:
    """Run ``op(*args)`` and return its result with the cost it incurred on
    ``structure``."""
    c0, m0, b0 = snapshot(structure)
    result = op(*args)
    c1, m1, b1 = snapshot(structure)
    return result, OpCostReport(c1 - c0, m1 - m0, b1 - b0)


# -- cost model --------------------------------------------------------------


def ceil_log2(x: int) -> int:
    """Exact ``ceil(log2(x))`` for a positive integer."""
    if x < 1:
        raise HeapDomainError(f"log of non-positive value {x}")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class CostModelParams:
    h: int
    bottom_parity: Parity = "min"

    def __post_init__(self) -> None:
        if self.bottom_parity not in ("min", "max"):
            raise HeapDomainError(f"bottom_parity must be 'min' or 'max', not {self.bottom_parity!r}")
        if not 0 <= self.h <= MAX_H:
            raise HeapDomainError(f"h={self.h} outside the supported range 0..{MAX_H}")
        if self.bottom_parity == "max" and self.h < 1:
            raise HeapDomainError("a heap whose lowest level is a max level has h >= 1")

    @property
    def n(self) -> int:
        if self.bottom_parity == "min":
            return 2 ** (2 * self.h + 1) - 1
        return 2 ** (2 * self.h) - 1


def _recurrence_min(h: int) -> int:
    t = 0
    for k in range(1, h + 1):
        t = 4 * t + 2 * ceil_log2(2 * k) + ceil_log2(2 * k + 1) + 9 * k - 5
    return t


def _recurrence_max(h: int) -> int:
    t = 0
    for k in range(2, h + 1):
        t = 4 * t + 2 * ceil_log2(2 * k - 1) + ceil_log2(2 * k) + 9 * k - 10
    return t


def creation_bound(params: CostModelParams | int, parity: Parity | None = None) -> int:
    """Worst-case comparison count for building a perfect min-max fine heap.

    For a max-level bottom the cost of the two lowest levels, ``2**(2h-1)``,
    is included.  Accepts either a :class:`CostModelParams` or ``(h, parity)``.
    """
    if not isinstance(params, CostModelParams):
        params = CostModelParams(params, parity or "min")
    h = params.h
    if params.bottom_parity == "min":
        return _recurrence_min(h)
    return _recurrence_max(h) + 2 ** (2 * h - 1)


def creation_closed_form(h: int) -> int:
    """Closed form of the min-bottom recurrence, evaluated exactly."""
    CostModelParams(h, "min")
    total = Fraction(7, 3) * 4**h - 3 * h - Fraction(7, 3)
    for i in range(1, h + 1):
        total += 4 ** (h - i) * (ceil_log2(2 * i + 1) + 2 * ceil_log2(2 * i))
    assert total.denominator == 1
    return int(total)


def creation_ratio(params: CostModelParams) -> float:
    return creation_bound(params) / params.n


def insert_bound(n: int, slack: int = INSERT_SLACK) -> int:
    """``ceil(log2(log2(n+1))) + slack``; the inner log is clamped at 1."""
    if n < 1:
        raise HeapDomainError("insert_bound needs n >= 1")
    return ceil_log2(max(1, ceil_log2(n + 1))) + slack


def delete_bound(n: int, slack: int = DELETE_SLACK) -> int:
    """``ceil(log2 n) + ceil(log2(log2 n)) + slack``; the inner log is clamped at 1."""
    if n < 1:
        raise HeapDomainError("delete_bound needs n >= 1")
    lg = ceil_log2(n)
    return lg + ceil_log2(max(1, lg)) + slack


def perfect_params(n: int) -> CostModelParams:
    """Model parameters of the smallest perfect heap holding at least ``n`` keys."""
    if n < 1:
        raise HeapDomainError("need n >= 1")
    levels = (n).bit_length()
    if levels % 2:
        return CostModelParams((levels - 1) // 2, "min")
    return CostModelParams(levels // 2, "max")


def create_bound(n: int) -> int:
    """Creation bound for ``n`` keys: exact for perfect sizes, otherwise the
    bound of the smallest enclosing perfect heap."""
    return creation_bound(perfect_params(n))


def op_bound(op: str, n: int) -> int:
    """Comparison bound for a benchmarked ``op`` on a fine heap of size ``n``."""
    if op == "create":
        return create_bound(n)
    if op == "insert":
        return insert_bound(n)
    if op in ("delete_min", "delete_max"):
        return delete_bound(n)
    raise HeapDomainError(f"no bound for operation {op!r}")
