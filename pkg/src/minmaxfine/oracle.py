"""Reference deque, reproducible workloads and differential testing."""

from __future__ import annotations

import bisect
import copy
import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence, TextIO

from .baselines import BinaryMinHeap, ClassicMinMaxHeap
from .errors import ConfigurationError, EmptyHeapError, HeapError
from .heap_core import MinMaxFineHeap

STRUCTURES = ("fine", "classic", "binheap")

INSERT, DELETE_MIN, DELETE_MAX = "I", "DM", "DX"

#: Key ranges used by the verification runs: wide, width 4 and width 1.
KEY_RANGES = ((0, 2**64 - 1), (0, 3), (7, 7))


class ReferenceDeque:
    """Sorted multiset; slow but obviously correct."""

    def __init__(self, items: Iterable[Any] = ()) -> None:
        self.items = sorted(items)

    def __len__(self) -> int:
        return len(self.items)

    def insert(self, x: Any) -> None:
        bisect.insort(self.items, x)

    def find_min(self) -> Any:
        if not self.items:
            raise EmptyHeapError("find_min on empty deque")
        return self.items[0]

    def find_max(self) -> Any:
        if not self.items:
            raise EmptyHeapError("find_max on empty deque")
        return self.items[-1]

    def delete_min(self) -> Any:
        if not self.items:
            raise EmptyHeapError("delete_min on empty deque")
        return self.items.pop(0)

    def delete_max(self) -> Any:
        if not self.items:
            raise EmptyHeapError("delete_max on empty deque")
        return self.items.pop()


Op = tuple  # ("I", key) | ("DM",) | ("DX",)


@dataclass
class Workload:
    seed: int
    length: int
    mix: tuple[float, float, float] = (1 / 3, 1 / 3, 1 / 3)
    key_range: tuple[int, int] = KEY_RANGES[0]
    ops: list[Op] = field(default_factory=list, repr=False)

    def __iter__(self) -> Iterator[Op]:
        return iter(self.ops)

    def transcript(self) -> str:
        return format_transcript(self.ops)


def _check_mix(mix: Sequence[float]) -> tuple[float, float, float]:
    if len(mix) != 3 or any(p < 0 for p in mix) or abs(sum(mix) - 1.0) > 1e-9:
        raise ConfigurationError(f"mix must be three non-negative probabilities summing to 1, got {mix!r}")
    return tuple(float(p) for p in mix)  # type: ignore[return-value]


def gen_workload(
    seed: int,
    length: int,
    mix: Sequence[float] = (1 / 3, 1 / 3, 1 / 3),
    key_range: tuple[int, int] = KEY_RANGES[0],
) -> Workload:
    """Seeded operation sequence; deletes are only drawn while the deque is nonempty."""
    p_ins, p_min, p_max = _check_mix(mix)
    lo, hi = key_range
    if lo > hi:
        raise ConfigurationError(f"empty key range {key_range!r}")
    if length < 0:
        raise ConfigurationError("length must be non-negative")
    rng = random.Random(seed)
    ops: list[Op] = []
    size = 0
    for _ in range(length):
        r = rng.random()
        if size == 0 or r < p_ins:
            ops.append((INSERT, rng.randint(lo, hi)))
            size += 1
        elif r < p_ins + p_min:
            ops.append((DELETE_MIN,))
            size -= 1
        else:
            ops.append((DELETE_MAX,))
            size -= 1
    return Workload(seed, length, (p_ins, p_min, p_max), (lo, hi), ops)


# -- transcripts -------------------------------------------------------------


def format_transcript(ops: Iterable[Op]) -> str:
    lines = []
    for op in ops:
        lines.append(f"I {op[1]}" if op[0] == INSERT else op[0])
    return "".join(line + "\n" for line in lines)


class TranscriptError(ConfigurationError):
    def __init__(self, lineno: int, line: str, reason: str) -> None:
        super().__init__(f"line {lineno}: {reason}: {line!r}")
        self.lineno = lineno


def parse_transcript(source: str | TextIO) -> list[Op]:
    """Parse ``I <key>`` / ``DM`` / ``DX`` lines; blank lines and ``#`` comments are skipped."""
    text = source if isinstance(source, str) else source.read()
    ops: list[Op] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == INSERT and len(parts) == 2:
            try:
                ops.append((INSERT, int(parts[1])))
            except ValueError:
                raise TranscriptError(lineno, raw, "key is not an integer") from None
        elif parts[0] in (DELETE_MIN, DELETE_MAX) and len(parts) == 1:
            ops.append((parts[0],))
        else:
            raise TranscriptError(lineno, raw, "expected 'I <key>', 'DM' or 'DX'")
    return ops


# -- differential runs ---------------------------------------------------------


@dataclass
class Divergence:
    step: int
    operation: str
    expected: Any
    actual: Any
    snapshot: list[Any]

    def __str__(self) -> str:
        return (
            f"step {self.step}: {self.operation} expected {self.expected!r}, "
            f"got {self.actual!r}; heap = {self.snapshot!r}"
        )


def make_structure(name: str, **kw: Any) -> Any:
    if name == "fine":
        return MinMaxFineHeap(**kw)
    if name == "classic":
        return ClassicMinMaxHeap(**kw)
    if name == "binheap":
        return BinaryMinHeap(**kw)
    raise ConfigurationError(f"unknown structure {name!r}; choose from {', '.join(STRUCTURES)}")


def _supports_max(structure: Any) -> bool:
    return not isinstance(structure, BinaryMinHeap)


def _apply(structure: Any, op: Op) -> Any:
    if op[0] == INSERT:
        return structure.insert(op[1])
    if op[0] == DELETE_MIN:
        return structure.delete_min()
    return structure.delete_max()


def _outcome(fn: Callable[[], Any]) -> Any:
    try:
        return fn()
    except HeapError as exc:
        return type(exc).__name__


def run_differential(
    workload: Workload | Iterable[Op],
    structure: str | Any = "fine",
    *,
    validate_every: int = 1,
) -> Optional[Divergence]:
    """Replay ``workload`` on ``structure`` and on a :class:`ReferenceDeque`.

    Returns the first step whose returned value, extrema or invariants
    disagree with the oracle, or None.  ``structure`` is a name from
    :data:`STRUCTURES` or an empty structure instance.
    """
    heap = make_structure(structure) if isinstance(structure, str) else structure
    ops = list(workload)
    with_max = _supports_max(heap)
    if not with_max and any(op[0] == DELETE_MAX for op in ops):
        raise ConfigurationError(f"{type(heap).__name__} cannot replay a workload containing delete_max")
    ref = ReferenceDeque()
    for step, op in enumerate(ops):
        name = format_transcript([op]).strip()
        expected = _outcome(lambda: _apply(ref, op))
        actual = _outcome(lambda: _apply(heap, op))
        if expected != actual:
            return Divergence(step, name, expected, actual, heap.snapshot())
        if ref.items:
            if heap.find_min() != ref.items[0]:
                return Divergence(step, f"{name} / find_min", ref.items[0], heap.find_min(), heap.snapshot())
            if with_max and heap.find_max() != ref.items[-1]:
                return Divergence(step, f"{name} / find_max", ref.items[-1], heap.find_max(), heap.snapshot())
        if validate_every and step % validate_every == 0:
            problems = heap.validate()
            if problems:
                return Divergence(step, f"{name} / validate", [], problems, heap.snapshot())
            if len(heap) != len(ref):
                return Divergence(step, f"{name} / size", len(ref), len(heap), heap.snapshot())
    return None


def _build(structure: str, values: list[int], **kw: Any) -> Any:
    if structure == "fine":
        return MinMaxFineHeap.build_from(values, **kw)
    if structure == "classic":
        return ClassicMinMaxHeap.build_from(values, **kw)
    if structure == "binheap":
        return BinaryMinHeap.build_from(values, **kw)
    raise ConfigurationError(f"unknown structure {structure!r}")


def exhaustive_small(n_max: int, structure: str = "fine", **kw: Any) -> Optional[Divergence]:
    """Every permutation of ``1..n`` for ``n <= n_max``, built bottom-up and
    then drained along every delete_min/delete_max interleaving."""
    if n_max > 9:
        raise ConfigurationError("exhaustive_small is limited to n_max <= 9")
    choices = ("DM", "DX") if structure != "binheap" else ("DM",)
    for n in range(1, n_max + 1):
        for perm in itertools.permutations(range(1, n + 1)):
            heap = _build(structure, list(perm), **kw)
            problems = heap.validate()
            if problems:
                return Divergence(0, f"build {list(perm)}", [], problems, heap.snapshot())
            found = _drain_all(heap, list(range(1, n + 1)), choices, f"build {list(perm)}")
            if found:
                return found
    return None


def _clone(heap: Any) -> Any:
    # the comparator is shared; counts are irrelevant here
    c = copy.copy(heap)
    c.keys = heap.keys[:]
    if hasattr(heap, "bits"):
        c.bits = heap.bits[:]
    return c


def _drain_all(heap: Any, remaining: list[int], choices: tuple[str, ...], history: str) -> Optional[Divergence]:
    if not remaining:
        return None
    depth = len(history.split(";"))
    for choice in choices:
        h = _clone(heap) if len(choices) > 1 else heap
        if choice == "DM":
            expected, rest = remaining[0], remaining[1:]
            actual = h.delete_min()
        else:
            expected, rest = remaining[-1], remaining[:-1]
            actual = h.delete_max()
        label = f"{history}; {choice}"
        if actual != expected:
            return Divergence(depth, label, expected, actual, h.snapshot())
        problems = h.validate()
        if problems:
            return Divergence(depth, label, [], problems, h.snapshot())
        found = _drain_all(h, rest, choices, label)
        if found:
            return found
    return None
