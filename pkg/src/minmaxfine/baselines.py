"""Instrumented comparison baselines: a classic min-max heap and a binary min-heap.

Both share the counting comparator protocol and error types with
:class:`~minmaxfine.heap_core.MinMaxFineHeap`, so identical workloads can be
costed side by side.
"""

from __future__ import annotations

from typing import Any, Iterable, Iterator, Literal

from .errors import EmptyHeapError, UnsupportedOperationError
from .heap_core import is_min_level
from .instrumentation import CountingComparator

BuildMethod = Literal["atkinson", "chain"]


class _ArrayHeap:
    """1-based array storage plus the counters every structure exposes."""

    def __init__(self, comparator: Any = None) -> None:
        self.comparator = comparator if comparator is not None else CountingComparator()
        self.keys: list[Any] = [None]
        self.moves = 0
        self.bit_writes = 0

    def __len__(self) -> int:
        return len(self.keys) - 1

    def __bool__(self) -> bool:
        return len(self.keys) > 1

    def __iter__(self) -> Iterator[Any]:
        return iter(self.keys[1:])

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.keys[1:]!r})"

    def snapshot(self) -> list[Any]:
        return self.keys[1:]

    def _place(self, hole: int, path: list[int], item: Any, shifts: Any) -> int:
        """Binary-search ``item`` into ``path`` and rotate it into place.

        ``shifts(k)`` is true for the keys that must move toward ``hole``;
        they form a prefix of ``path``.
        """
        keys = self.keys
        lo, hi = 0, len(path)
        while lo < hi:
            mid = (lo + hi) >> 1
            if shifts(keys[path[mid]]):
                lo = mid + 1
            else:
                hi = mid
        dest = hole
        for j in range(lo):
            keys[dest] = keys[path[j]]
            dest = path[j]
        keys[dest] = item
        self.moves += lo + 1
        return lo


class ClassicMinMaxHeap(_ArrayHeap):
    """Min-max heap without bits.

    Deletions walk the chain of extreme grandchildren (three comparisons per
    step) and binary-search the displaced leaf into it; creation runs the
    same sift bottom-up by default.  Insertion binary-searches the
    grandparent chain.
    """

    # -- finds -------------------------------------------------------------

    def find_min(self) -> Any:
        if len(self.keys) < 2:
            raise EmptyHeapError("find_min on empty heap")
        return self.keys[1]

    def _max_slot(self) -> int:
        n = len(self.keys) - 1
        if n < 3:
            return n
        return 3 if self.comparator.less(self.keys[2], self.keys[3]) else 2

    def find_max(self) -> Any:
        if len(self.keys) < 2:
            raise EmptyHeapError("find_max on empty heap")
        return self.keys[self._max_slot()]

    # -- chains ------------------------------------------------------------

    def _extreme(self, slots: list[int], small: bool) -> int:
        keys, less = self.keys, self.comparator.less
        best = slots[0]
        for s in slots[1:]:
            if (less(keys[s], keys[best]) if small else less(keys[best], keys[s])):
                best = s
        return best

    def _descent(self, start: int, small: bool) -> list[int]:
        n = len(self.keys) - 1
        path: list[int] = []
        cur = start
        terminal = False
        while 2 * cur <= n:
            cands = [g for g in range(4 * cur, min(4 * cur + 3, n) + 1)]
            cands += [c for c in (2 * cur, 2 * cur + 1) if c <= n and 2 * c > n]
            pick = self._extreme(cands, small)
            path.append(pick)
            if pick < 4 * cur:
                terminal = True
                break
            cur = pick
        if path:
            nxt = path[-1] >> 2 if terminal else path[-1] >> 1
            floor_len = start.bit_length()
            while nxt.bit_length() > floor_len:
                path.append(nxt)
                nxt >>= 2
        return path

    def _sift(self, start: int, item: Any) -> int:
        small = is_min_level(start)
        less = self.comparator.less
        path = self._descent(start, small)
        if small:
            return self._place(start, path, item, lambda k: less(k, item))
        return self._place(start, path, item, lambda k: less(item, k))

    # -- creation ----------------------------------------------------------

    def _trickle_down(self, i: int) -> None:
        keys, less = self.keys, self.comparator.less
        n = len(keys) - 1
        while 2 * i <= n:
            small = is_min_level(i)
            cands = [c for c in (2 * i, 2 * i + 1) if c <= n]
            cands += [g for g in range(4 * i, min(4 * i + 3, n) + 1)]
            m = self._extreme(cands, small)
            if not (less(keys[m], keys[i]) if small else less(keys[i], keys[m])):
                return
            keys[i], keys[m] = keys[m], keys[i]
            self.moves += 2
            if m < 4 * i:
                return
            p = m >> 1
            if (less(keys[p], keys[m]) if small else less(keys[m], keys[p])):
                keys[p], keys[m] = keys[m], keys[p]
                self.moves += 2
            i = m

    @classmethod
    def build_from(
        cls,
        values: Iterable[Any],
        comparator: Any = None,
        method: BuildMethod = "chain",
    ) -> ClassicMinMaxHeap:
        """Bottom-up construction.

        ``method="chain"`` uses the same grandchild chain and binary search as
        the deletions; ``method="atkinson"`` is the original swap-based
        TrickleDown.
        """
        h = cls(comparator)
        h.keys = [None, *values]
        n = len(h.keys) - 1
        for i in range(n // 2, 0, -1):
            if method == "atkinson":
                h._trickle_down(i)
            elif method == "chain":
                item = h.keys[i]
                moves = h.moves
                if h._sift(i, item) == 0:
                    h.moves = moves  # the key stayed where it was
            else:
                raise ValueError(f"unknown build method {method!r}")
        return h

    # -- updates -----------------------------------------------------------

    def insert(self, x: Any) -> None:
        keys, less = self.keys, self.comparator.less
        keys.append(None)
        s = len(keys) - 1
        if s == 1:
            keys[1] = x
            self.moves += 1
            return
        p = s >> 1
        small = is_min_level(s)
        if (less(keys[p], x) if small else less(x, keys[p])):
            nxt, small = p, not small
        else:
            nxt = s >> 2
        path = []
        while nxt:
            path.append(nxt)
            nxt >>= 2
        if small:
            self._place(s, path, x, lambda k: less(x, k))
        else:
            self._place(s, path, x, lambda k: less(k, x))

    push = insert

    def delete_min(self) -> Any:
        keys = self.keys
        if len(keys) < 2:
            raise EmptyHeapError("delete_min on empty heap")
        top = keys[1]
        x = keys.pop()
        if len(keys) > 1:
            self._sift(1, x)
        return top

    def delete_max(self) -> Any:
        keys = self.keys
        if len(keys) < 2:
            raise EmptyHeapError("delete_max on empty heap")
        s0 = self._max_slot()
        top = keys[s0]
        x = keys.pop()
        if s0 < len(keys):
            self._sift(s0, x)
        return top

    pop_min = delete_min
    pop_max = delete_max

    def validate(self) -> list[str]:
        keys = self.keys
        out = []
        for i in range(2, len(keys)):
            for a in (i >> 1, i >> 2):
                if not a:
                    continue
                if is_min_level(a) and keys[i] < keys[a]:
                    out.append(f"order: slot {i} below min-level ancestor {a}")
                elif not is_min_level(a) and keys[a] < keys[i]:
                    out.append(f"order: slot {i} above max-level ancestor {a}")
        return out


class BinaryMinHeap(_ArrayHeap):
    """Binary min-heap; sift-down walks the smaller-child path to a leaf and
    binary-searches the displaced key into it."""

    def find_min(self) -> Any:
        if len(self.keys) < 2:
            raise EmptyHeapError("find_min on empty heap")
        return self.keys[1]

    def find_max(self) -> Any:
        raise UnsupportedOperationError("a min-heap has no constant-time find_max")

    def delete_max(self) -> Any:
        raise UnsupportedOperationError("a min-heap does not support delete_max")

    def _sift(self, start: int, item: Any) -> int:
        keys, less = self.keys, self.comparator.less
        n = len(keys) - 1
        path = []
        c = 2 * start
        while c <= n:
            if c < n and less(keys[c + 1], keys[c]):
                c += 1
            path.append(c)
            c *= 2
        return self._place(start, path, item, lambda k: less(k, item))

    @classmethod
    def build_from(cls, values: Iterable[Any], comparator: Any = None) -> BinaryMinHeap:
        h = cls(comparator)
        h.keys = [None, *values]
        for i in range((len(h.keys) - 1) // 2, 0, -1):
            moves = h.moves
            if h._sift(i, h.keys[i]) == 0:
                h.moves = moves
        return h

    def insert(self, x: Any) -> None:
        keys, less = self.keys, self.comparator.less
        keys.append(None)
        s = len(keys) - 1
        path = []
        p = s >> 1
        while p:
            path.append(p)
            p >>= 1
        self._place(s, path, x, lambda k: less(x, k))

    push = insert

    def delete_min(self) -> Any:
        keys = self.keys
        if len(keys) < 2:
            raise EmptyHeapError("delete_min on empty heap")
        top = keys[1]
        x = keys.pop()
        if len(keys) > 1:
            self._sift(1, x)
        return top

    pop_min = delete_min

    def validate(self) -> list[str]:
        keys = self.keys
        return [f"order: slot {i} below parent {i >> 1}" for i in range(2, len(keys)) if keys[i] < keys[i >> 1]]
