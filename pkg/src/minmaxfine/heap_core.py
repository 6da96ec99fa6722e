"""Min-max fine heap: a min-max heap whose nodes carry a larger-child bit.

Storage is a 1-based implicit array ``keys[1..n]`` with a parallel ``bits``
array.  ``bits[i] == 1`` designates the left child of ``i`` as the larger
one (``keys[2i] >= keys[2i+1]``), ``0`` the right one; when the two children
hold equal keys either value is correct.  A node with at most one child
always has ``bits[i] == 1``.

Every reordering operation works on a *chain*: a sorted path through the
Hasse diagram of the heap order.  A descent chain from a hole walks the
hole's own parity downwards (smallest grandchildren below a min level,
largest below a max level), and once it reaches a leaf it climbs back up
through the opposite-parity ancestors.  The key being placed is binary
searched into the chain, every entry in front of it shifts one step toward
the hole, and the bits of the parents of the changed slots are restored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Literal, NamedTuple, Optional

from .errors import EmptyHeapError, HeapDomainError
from .instrumentation import CountingComparator

Polarity = Literal["min", "max"]


def is_min_level(i: int) -> bool:
    # level(i) = floor(log2 i) = bit_length - 1
    return i.bit_length() & 1 == 1


class Relatives(NamedTuple):
    parent: Optional[int]
    grandparent: Optional[int]
    children: tuple[int, ...]
    grandchildren: tuple[int, ...]
    is_min_level: bool


def relatives(i: int, n: int) -> Relatives:
    """In-range relatives of slot ``i`` in a heap of ``n`` keys."""
    if not 1 <= i <= n:
        raise HeapDomainError(f"slot {i} outside 1..{n}")
    return Relatives(
        parent=i // 2 or None,
        grandparent=i // 4 or None,
        children=tuple(c for c in (2 * i, 2 * i + 1) if c <= n),
        grandchildren=tuple(g for g in range(4 * i, 4 * i + 4) if g <= n),
        is_min_level=is_min_level(i),
    )


@dataclass
class Chain:
    """Sorted Hasse path used by the binary-search placement step.

    ``entries`` are ``(slot, key)`` pairs listed from the root-nearest end.
    For a descent chain the entries are the same-parity steps down from the
    start slot (ending in a child when ``terminal_is_child``) and ``tail``
    holds the opposite-parity ancestors the path climbs back through.
    ``ascending`` tells whether keys are non-decreasing along
    ``entries + tail``.
    """

    entries: list[tuple[int, Any]] = field(default_factory=list)
    terminal_is_child: bool = False
    tail: list[tuple[int, Any]] = field(default_factory=list)
    ascending: bool = True

    @property
    def path(self) -> list[tuple[int, Any]]:
        return self.entries + self.tail

    @property
    def slots(self) -> list[int]:
        return [s for s, _ in self.path]

    @property
    def keys(self) -> list[Any]:
        return [k for _, k in self.path]

    def __len__(self) -> int:
        return len(self.entries) + len(self.tail)


def chain_insert_position(chain: Chain, x: Any, comparator: Any = None) -> int:
    """Leftmost position at which ``x`` can be inserted keeping ``chain`` sorted."""
    less = (comparator or CountingComparator()).less
    keys = chain.keys
    lo, hi = 0, len(keys)
    while lo < hi:
        mid = (lo + hi) // 2
        if (less(keys[mid], x) if chain.ascending else less(x, keys[mid])):
            lo = mid + 1
        else:
            hi = mid
    return lo


class MinMaxFineHeap:
    """Double-ended priority queue with constant-time find of both extrema.

    ``frontier_candidates=False`` reproduces the literal grandchild-only chain
    (leaf children are never considered while descending); it exists as a
    negative control for differential tests and produces invalid heaps.
    """

    def __init__(
        self,
        comparator: Any = None,
        *,
        frontier_candidates: bool = True,
    ) -> None:
        self.comparator = comparator if comparator is not None else CountingComparator()
        self.keys: list[Any] = [None]
        self.bits: list[int] = [1]
        self.moves = 0
        self.bit_writes = 0
        self.frontier_candidates = frontier_candidates
        # slot the last operation filled from, and the chain it searched
        self.last_hole = 0
        self.last_chain: list[int] = []

    # -- container protocol ------------------------------------------------

    def __len__(self) -> int:
        return len(self.keys) - 1

    def __bool__(self) -> bool:
        return len(self.keys) > 1

    def __iter__(self) -> Iterator[Any]:
        return iter(self.keys[1:])

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.keys[1:]!r})"

    def snapshot(self) -> list[tuple[Any, int]]:
        """``(key, bit)`` for slots ``1..n``."""
        return list(zip(self.keys[1:], self.bits[1:]))

    @classmethod
    def from_arrays(cls, keys: Iterable[Any], bits: Iterable[int], comparator: Any = None, **kw: Any) -> MinMaxFineHeap:
        """Wrap existing arrays without reordering them (no validation)."""
        h = cls(comparator, **kw)
        h.keys = [None, *keys]
        h.bits = [1, *bits]
        if len(h.bits) != len(h.keys):
            raise HeapDomainError("keys and bits must have equal length")
        return h

    # -- navigation --------------------------------------------------------

    def relatives(self, i: int) -> Relatives:
        return relatives(i, len(self))

    def _pick_child(self, c: int, larger: bool) -> int:
        """Designated larger (or smaller) child of ``c`` read from its bit."""
        left = 2 * c
        if left + 1 >= len(self.keys):
            return left
        if self.bits[c]:
            return left if larger else left + 1
        return left + 1 if larger else left

    # -- finds -------------------------------------------------------------

    def find_min(self) -> Any:
        if len(self.keys) < 2:
            raise EmptyHeapError("find_min on empty heap")
        return self.keys[1]

    def find_max(self) -> Any:
        n = len(self.keys) - 1
        if n < 1:
            raise EmptyHeapError("find_max on empty heap")
        if n == 1:
            return self.keys[1]
        return self.keys[2 if self.bits[1] else 3]

    def _max_slot(self) -> int:
        n = len(self.keys) - 1
        if n == 1:
            return 1
        return 2 if n == 2 or self.bits[1] else 3

    # -- grandchild selection ---------------------------------------------

    def _select_grandchild(self, i: int, larger: bool) -> int:
        n = len(self.keys) - 1
        if not 1 <= i <= n:
            raise HeapDomainError(f"slot {i} outside 1..{n}")
        cands = [self._pick_child(c, larger) for c in (2 * i, 2 * i + 1) if 2 * c <= n]
        if not cands:
            raise HeapDomainError(f"slot {i} has no grandchildren")
        if len(cands) == 1:
            return cands[0]
        a, b = cands
        ka, kb = self.keys[a], self.keys[b]
        if larger:
            return b if self.comparator.less(ka, kb) else a
        return b if self.comparator.less(kb, ka) else a

    def select_smaller_grandchild(self, i: int) -> int:
        return self._select_grandchild(i, larger=False)

    def select_larger_grandchild(self, i: int) -> int:
        return self._select_grandchild(i, larger=True)

    # -- chains ------------------------------------------------------------

    def _descent(self, start: int, small: bool) -> tuple[list[int], int, bool]:
        """Slots of the descent chain below ``start`` (hole-nearest first),
        the length of its downward part, and whether that part ends in a
        child."""
        keys, bits = self.keys, self.bits
        n = len(keys) - 1
        less = self.comparator.less
        frontier = self.frontier_candidates
        larger = not small
        path: list[int] = []
        terminal = False
        cur = start
        while 2 * cur <= n:
            left = 2 * cur
            right = left + 1
            # candidate via the left child
            if 2 * left <= n:
                ca = self._pick_child(left, larger)
            elif frontier:
                ca = left
            else:
                ca = 0
            if right > n:
                cb = 0
            elif 2 * right <= n:
                cb = self._pick_child(right, larger)
            elif frontier:
                cb = right
            else:
                cb = 0
            if ca and cb:
                if cb == right and ca == left:
                    # both children are leaves; the parent's bit orders them
                    pick = self._pick_child(cur, larger)
                elif small:
                    pick = cb if less(keys[cb], keys[ca]) else ca
                else:
                    pick = cb if less(keys[ca], keys[cb]) else ca
            elif ca or cb:
                pick = ca or cb
            else:
                # literal mode: no grandchildren, fall back to one child
                pick = self._pick_child(cur, larger)
            path.append(pick)
            if pick < 4 * cur:
                terminal = True
                break
            cur = pick
        down = len(path)
        if path:
            last = path[-1]
            nxt = last >> 2 if terminal else last >> 1
            floor_len = start.bit_length()
            while nxt.bit_length() > floor_len:
                path.append(nxt)
                nxt >>= 2
        return path, down, terminal

    def build_descent_chain(self, start: int, polarity: Optional[Polarity] = None) -> Chain:
        """Descent chain below ``start``; ``polarity`` defaults to the slot's level parity."""
        n = len(self)
        if not 1 <= start <= n:
            raise HeapDomainError(f"slot {start} outside 1..{n}")
        small = is_min_level(start)
        if polarity is not None and (polarity == "min") != small:
            raise HeapDomainError(f"polarity {polarity!r} does not match the level of slot {start}")
        slots, down, terminal = self._descent(start, small)
        entries = [(s, self.keys[s]) for s in slots[:down]]
        tail = [(s, self.keys[s]) for s in slots[down:]]
        return Chain(entries, terminal, tail, ascending=small)

    def _ascent(self, s: int, x: Any) -> tuple[list[int], bool]:
        """Ancestor chain for a key ``x`` entering leaf slot ``s`` (nearest
        first) and whether it runs along min levels."""
        if s == 1:
            return [], True
        keys = self.keys
        p = s >> 1
        small = is_min_level(s)
        less = self.comparator.less
        crosses = less(keys[p], x) if small else less(x, keys[p])
        if crosses:
            nxt, small = p, not small
        else:
            nxt = s >> 2
        path = []
        while nxt:
            path.append(nxt)
            nxt >>= 2
        return path, small

    def build_ascent_chain(self, i: Optional[int] = None) -> Chain:
        """Ancestor chain for the key sitting in the last leaf ``i`` (root-first)."""
        n = len(self)
        if i is None:
            i = n
        if i != n or n < 1:
            raise HeapDomainError("ascent chains start at the last occupied slot")
        slots, small = self._ascent(i, self.keys[i])
        slots.reverse()
        # min-level ancestors read root-first increase; max-level ones decrease
        return Chain([(s, self.keys[s]) for s in slots], False, [], ascending=small)

    # -- bit maintenance ---------------------------------------------------

    def _restore_bit(self, s: int, grew: bool, hint: bool, old_bit: Optional[int]) -> None:
        """Re-establish ``bits[parent(s)]`` after the key in ``s`` changed.

        ``grew`` says the new key is >= the old one.  ``hint`` says the new key
        is already known to relate to the sibling in that same direction
        (it came down from a common ancestor).  ``old_bit`` is the parent's
        bit before the change, or None when it carries no information.
        """
        q = s >> 1
        if q == 0:
            return
        keys, bits = self.keys, self.bits
        if s ^ 1 >= len(keys):
            if bits[q] != 1:
                bits[q] = 1
                self.bit_writes += 1
            return
        is_left = not s & 1
        if grew:
            if is_left:
                new = 1 if (old_bit == 1 or hint) else None
            else:
                new = 0 if (old_bit == 0 or hint) else None
        else:
            if is_left:
                new = 0 if (old_bit == 0 or hint) else None
            else:
                new = 1 if (old_bit == 1 or hint) else None
        if new is None:
            new = 0 if self.comparator.less(keys[2 * q], keys[2 * q + 1]) else 1
        if bits[q] != new:
            bits[q] = new
            self.bit_writes += 1

    def _set_bit(self, i: int) -> None:
        """Compute ``bits[i]`` from scratch (one comparison for two children)."""
        keys = self.keys
        left = 2 * i
        if left + 1 < len(keys):
            new = 0 if self.comparator.less(keys[left], keys[left + 1]) else 1
        else:
            new = 1
        if self.bits[i] != new:
            self.bits[i] = new
            self.bit_writes += 1

    # -- placement ---------------------------------------------------------

    def _sift(
        self,
        start: int,
        item: Any,
        restore_top: bool,
        in_place: bool = False,
        start_bit_known: bool = True,
    ) -> int:
        """Fill the hole at ``start`` with ``item`` along the descent chain.

        Returns the number of chain entries that shifted.  ``in_place`` means
        ``item`` already sits in ``start`` (no write is needed if it stays).
        With ``start_bit_known=False`` the bit of ``start`` is settled here
        rather than trusted.
        """
        keys, bits = self.keys, self.bits
        small = is_min_level(start)
        path, _, _ = self._descent(start, small)
        self.last_hole, self.last_chain = start, path
        less = self.comparator.less
        lo, hi = 0, len(path)
        while lo < hi:
            mid = (lo + hi) >> 1
            k = keys[path[mid]]
            if (less(k, item) if small else less(item, k)):
                lo = mid + 1
            else:
                hi = mid
        m = lo
        if m == 0 and in_place:
            if not start_bit_known:
                self._set_bit(start)
            return 0
        old_top_bit = bits[start >> 1] if start > 1 else None
        old_bits = [bits[path[j] >> 1] for j in range(m)]
        dest = start
        for j in range(m):
            src = path[j]
            keys[dest] = keys[src]
            dest = src
        keys[dest] = item
        self.moves += m + 1
        if restore_top:
            if in_place:
                # the displaced key was arbitrary; only the direction is known
                self._restore_bit(start, not small, False, None)
            else:
                self._restore_bit(start, small, False, old_top_bit)
        settled = start_bit_known
        for j in range(m):
            s = path[j]
            hint = j + 1 < m and path[j + 1] < s
            if s >> 1 == start and not start_bit_known:
                self._restore_bit(s, small, hint, None)
                settled = True
            else:
                self._restore_bit(s, small, hint, old_bits[j])
        if not settled:
            self._set_bit(start)
        return m

    # -- operations --------------------------------------------------------

    def insert(self, x: Any) -> None:
        keys, bits = self.keys, self.bits
        keys.append(None)
        bits.append(1)
        s = len(keys) - 1
        path, small = self._ascent(s, x)
        self.last_hole, self.last_chain = s, path
        less = self.comparator.less
        lo, hi = 0, len(path)
        while lo < hi:
            mid = (lo + hi) >> 1
            k = keys[path[mid]]
            # entries that must end up below x move down toward s
            if (less(x, k) if small else less(k, x)):
                lo = mid + 1
            else:
                hi = mid
        m = lo
        old_bits = [bits[path[j] >> 1] for j in range(m)]
        dest = s
        for j in range(m):
            src = path[j]
            keys[dest] = keys[src]
            dest = src
        keys[dest] = x
        self.moves += m + 1
        grew = not small
        self._restore_bit(s, grew, m > 0, None)
        for j in range(m):
            self._restore_bit(path[j], grew, j + 1 < m, old_bits[j])

    push = insert

    def _detach_last(self) -> Any:
        keys, bits = self.keys, self.bits
        x = keys.pop()
        bits.pop()
        p = len(keys) >> 1
        if p and bits[p] != 1:
            bits[p] = 1
            self.bit_writes += 1
        return x

    def delete_min(self) -> Any:
        keys = self.keys
        if len(keys) < 2:
            raise EmptyHeapError("delete_min on empty heap")
        top = keys[1]
        x = self._detach_last()
        if len(keys) > 1:
            self._sift(1, x, restore_top=False)
        else:
            self.last_hole, self.last_chain = 0, []
        return top

    def delete_max(self) -> Any:
        keys = self.keys
        if len(keys) < 2:
            raise EmptyHeapError("delete_max on empty heap")
        s0 = self._max_slot()
        top = keys[s0]
        x = self._detach_last()
        if s0 < len(keys):
            self._sift(s0, x, restore_top=True)
        else:
            self.last_hole, self.last_chain = 0, []
        return top

    pop_min = delete_min
    pop_max = delete_max

    def trickle_down(self, i: int) -> None:
        """Restore the subtree rooted at ``i`` whose two child subtrees are valid."""
        n = len(self)
        if not 1 <= i <= n:
            raise HeapDomainError(f"slot {i} outside 1..{n}")
        self._set_bit(i)
        self._sift(i, self.keys[i], restore_top=True, in_place=True)

    @classmethod
    def build_from(cls, values: Iterable[Any], comparator: Any = None, **kw: Any) -> MinMaxFineHeap:
        """Bottom-up (Floyd-style) construction in linear time."""
        h = cls(comparator, **kw)
        h.keys = [None, *values]
        n = len(h.keys) - 1
        h.bits = [1] * (n + 1)
        keys = h.keys
        for i in range(n // 2, 0, -1):
            # leaf children are ordered by the bit itself, so settle it first
            eager = 4 * i > n
            if eager:
                h._set_bit(i)
            h._sift(i, keys[i], restore_top=False, in_place=True, start_bit_known=eager)
        return h

    # -- checking ----------------------------------------------------------

    def validate(self) -> list[str]:
        return validate(self)


def validate(heap: MinMaxFineHeap) -> list[str]:
    """All violations of shape, min-max order and bit invariants (uncounted)."""
    keys, bits = heap.keys, heap.bits
    n = len(keys) - 1
    out: list[str] = []
    if len(bits) != len(keys):
        out.append(f"shape: {n} keys but {len(bits) - 1} bits")
        return out
    for i in range(2, n + 1):
        # checking each node against its parent and grandparent covers all
        # descendants by transitivity
        p = i >> 1
        if is_min_level(p):
            if keys[i] < keys[p]:
                out.append(f"order: slot {i} ({keys[i]!r}) below min-level parent {p} ({keys[p]!r})")
        elif keys[p] < keys[i]:
            out.append(f"order: slot {i} ({keys[i]!r}) above max-level parent {p} ({keys[p]!r})")
        g = i >> 2
        if g:
            if is_min_level(g):
                if keys[i] < keys[g]:
                    out.append(f"order: slot {i} ({keys[i]!r}) below min-level grandparent {g} ({keys[g]!r})")
            elif keys[g] < keys[i]:
                out.append(f"order: slot {i} ({keys[i]!r}) above max-level grandparent {g} ({keys[g]!r})")
    for i in range(1, n + 1):
        left = 2 * i
        if left + 1 <= n:
            lo, hi = (left + 1, left) if bits[i] else (left, left + 1)
            if keys[hi] < keys[lo]:
                out.append(f"bit: slot {i} has {bits[i]} but children are {keys[left]!r}/{keys[left + 1]!r}")
        elif bits[i] != 1:
            out.append(f"bit: slot {i} has at most one child but bit {bits[i]}")
    return out


# module-level spellings of the operations

def build_from(values: Iterable[Any], comparator: Any = None) -> MinMaxFineHeap:
    return MinMaxFineHeap.build_from(values, comparator)


def find_min(heap: MinMaxFineHeap) -> Any:
    return heap.find_min()


def find_max(heap: MinMaxFineHeap) -> Any:
    return heap.find_max()


def insert(heap: MinMaxFineHeap, x: Any) -> None:
    heap.insert(x)


def delete_min(heap: MinMaxFineHeap) -> Any:
    return heap.delete_min()


def delete_max(heap: MinMaxFineHeap) -> Any:
    return heap.delete_max()


def trickle_down(heap: MinMaxFineHeap, i: int) -> None:
    heap.trickle_down(i)
