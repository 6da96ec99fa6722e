"""Seeded comparison/move benchmarks across the three structures."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence

from .baselines import BinaryMinHeap, ClassicMinMaxHeap
from .errors import ConfigurationError
from .heap_core import MinMaxFineHeap
from .instrumentation import op_bound, snapshot

STRUCTURES = ("fine", "classic", "binheap")
OPS = ("create", "insert", "delete_min", "delete_max")
FORMATS = ("csv", "table")

COLUMNS = (
    "structure",
    "op",
    "n",
    "trials",
    "comparisons_mean",
    "comparisons_max",
    "moves_mean",
    "moves_max",
    "bound",
    "bound_exceeded",
)

BUILDERS: dict[str, Callable[[list[int]], Any]] = {
    "fine": MinMaxFineHeap.build_from,
    "classic": ClassicMinMaxHeap.build_from,
    "binheap": BinaryMinHeap.build_from,
}


def supports(structure: str, op: str) -> bool:
    return not (structure == "binheap" and op == "delete_max")


@dataclass
class BenchConfig:
    sizes: list[int]
    trials: int = 10
    seed: int = 1
    structures: list[str] = field(default_factory=lambda: list(STRUCTURES))
    ops: list[str] = field(default_factory=lambda: list(OPS))
    format: str = "csv"

    def __post_init__(self) -> None:
        if not self.sizes or any(n < 1 for n in self.sizes):
            raise ConfigurationError("sizes must be positive")
        if self.trials < 1:
            raise ConfigurationError("trials must be at least 1")
        for s in self.structures:
            if s not in STRUCTURES:
                raise ConfigurationError(f"unknown structure {s!r}")
        for op in self.ops:
            if op not in OPS:
                raise ConfigurationError(f"unknown op {op!r}")
        if self.format not in FORMATS:
            raise ConfigurationError(f"unknown format {self.format!r}")
        if not self.cells():
            raise ConfigurationError("no structure supports any of the requested ops")

    def cells(self) -> list[tuple[str, str, int]]:
        return [
            (s, op, n)
            for s in self.structures
            for op in self.ops
            for n in self.sizes
            if supports(s, op)
        ]


@dataclass
class BenchRow:
    structure: str
    op: str
    n: int
    trials: int
    comparisons_mean: float
    comparisons_max: int
    moves_mean: float
    moves_max: int
    bound: Optional[int]
    bound_exceeded: bool

    def as_record(self) -> list[str]:
        return [
            self.structure,
            self.op,
            str(self.n),
            str(self.trials),
            f"{self.comparisons_mean:.3f}",
            str(self.comparisons_max),
            f"{self.moves_mean:.3f}",
            str(self.moves_max),
            "" if self.bound is None else str(self.bound),
            "true" if self.bound_exceeded else "false",
        ]


class _UndoList(list):
    """List that journals in-place mutations so they can be rolled back.

    Lets every insert/delete cell start from the same pristine heap without
    rebuilding it.
    """

    def __init__(self, items: Iterable[Any]) -> None:
        super().__init__(items)
        self.journal: list[tuple[int, int, Any]] = []

    def __setitem__(self, i: Any, v: Any) -> None:
        self.journal.append((0, i, list.__getitem__(self, i)))
        list.__setitem__(self, i, v)

    def append(self, v: Any) -> None:
        self.journal.append((1, 0, None))
        list.append(self, v)

    def pop(self, *args: Any) -> Any:
        if args:
            raise TypeError("only pop() from the end is journaled")
        v = list.pop(self)
        self.journal.append((2, 0, v))
        return v

    def rollback(self) -> None:
        j = self.journal
        while j:
            kind, i, v = j.pop()
            if kind == 0:
                list.__setitem__(self, i, v)
            elif kind == 1:
                list.pop(self)
            else:
                list.append(self, v)


def _keys(rng: random.Random, n: int) -> list[int]:
    return [rng.getrandbits(64) for _ in range(n)]


def _rng(*parts: Any) -> random.Random:
    # string seeds hash through sha512, stable across runs and platforms
    return random.Random("/".join(str(p) for p in parts))


def create_keys(seed: int, n: int, trial: int) -> list[int]:
    """Input of create trial ``trial``; shared by every structure."""
    return _keys(_rng(seed, "create", n, trial), n)


def _row(structure: str, op: str, n: int, samples: list[tuple[int, int]]) -> BenchRow:
    comps = [c for c, _ in samples]
    moves = [m for _, m in samples]
    bound = op_bound(op, n) if structure == "fine" else None
    cmax = max(comps)
    return BenchRow(
        structure,
        op,
        n,
        len(samples),
        sum(comps) / len(comps),
        cmax,
        sum(moves) / len(moves),
        max(moves),
        bound,
        bound is not None and cmax > bound,
    )


def _journaled(structure: str, n: int, seed: int) -> Any:
    heap = BUILDERS[structure](_keys(_rng(seed, "base", n), n))
    heap.keys = _UndoList(heap.keys)
    if hasattr(heap, "bits"):
        heap.bits = _UndoList(heap.bits)
    return heap


def _rollback(heap: Any) -> None:
    heap.keys.rollback()
    if hasattr(heap, "bits"):
        heap.bits.rollback()


def run_cell(structure: str, op: str, n: int, trials: int, seed: int, base: Any = None) -> BenchRow:
    """Measure ``trials`` executions of ``op`` at size ``n``.

    Create trials build from fresh keys.  Insert and delete trials churn a
    size-``n`` heap: each measured operation is followed by an unmeasured
    one that restores the size (a delete after an insert, an insert of a
    fresh key after a delete), so every trial meets a different heap of
    exactly ``n`` keys.  The heap is rolled back when the cell is done.
    """
    if not supports(structure, op):
        raise ConfigurationError(f"{structure} does not support {op}")
    samples: list[tuple[int, int]] = []
    if op == "create":
        for t in range(trials):
            values = create_keys(seed, n, t)
            heap = BUILDERS[structure](values)
            c, m, _ = snapshot(heap)
            samples.append((c, m))
        return _row(structure, op, n, samples)
    heap = base if base is not None else _journaled(structure, n, seed)
    rng = _rng(seed, op, n)
    two_sided = supports(structure, "delete_max")
    try:
        for _ in range(trials):
            key = rng.getrandbits(64)
            c0, m0, _ = snapshot(heap)
            if op == "insert":
                heap.insert(key)
            elif op == "delete_min":
                heap.delete_min()
            else:
                heap.delete_max()
            c1, m1, _ = snapshot(heap)
            samples.append((c1 - c0, m1 - m0))
            if op != "insert":
                heap.insert(key)
            elif two_sided and rng.random() < 0.5:
                heap.delete_max()
            else:
                heap.delete_min()
    finally:
        _rollback(heap)
    return _row(structure, op, n, samples)


def run_bench(config: BenchConfig, progress: Optional[Callable[[str], None]] = None) -> list[BenchRow]:
    rows = []
    for structure in config.structures:
        for n in config.sizes:
            base = None
            for op in config.ops:
                if not supports(structure, op):
                    continue
                if op != "create" and base is None:
                    base = _journaled(structure, n, config.seed)
                if progress:
                    progress(f"{structure} {op} n={n}")
                rows.append(run_cell(structure, op, n, config.trials, config.seed, base))
    rows.sort(key=lambda r: (STRUCTURES.index(r.structure), OPS.index(r.op), r.n))
    return rows


def format_rows(rows: Sequence[BenchRow], fmt: str = "csv") -> str:
    records = [r.as_record() for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(COLUMNS)
        w.writerows(records)
        return buf.getvalue()
    table = [list(COLUMNS), *records]
    widths = [max(len(r[i]) for r in table) for i in range(len(COLUMNS))]
    return "".join("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in table)


def gnuplot_data(rows: Sequence[BenchRow]) -> str:
    """One gnuplot index block per (structure, op): ``n comparisons_mean
    comparisons_max moves_mean moves_max``."""
    out = []
    groups: dict[tuple[str, str], list[BenchRow]] = {}
    for r in rows:
        groups.setdefault((r.structure, r.op), []).append(r)
    for (structure, op), group in groups.items():
        out.append(f"# {structure} {op}\n")
        for r in sorted(group, key=lambda r: r.n):
            out.append(f"{r.n} {r.comparisons_mean:.3f} {r.comparisons_max} {r.moves_mean:.3f} {r.moves_max}\n")
        out.append("\n\n")
    return "".join(out)
