"""Set partitions of {1, ..., n} and their lattice structure.

Everything downstream (bi-non-crossing families, cumulant transforms, the
tensor CLT engine) is built on the canonical :class:`SetPartition`.  This
module provides

* enumeration of all partitions (restricted-growth strings), of the
  non-crossing family, of non-crossing pairings, and of all pairings;
* the refinement order and the Mobius function of the non-crossing lattice,
  computed by memoised recursion;
* the intersection (crossing) graph of a partition and the classification of
  pairings by connectivity / bipartiteness of that graph, which feeds the
  free cumulants of the limit law.

Ground sets are 1-indexed.  All values are exact (ints); nothing here touches
floating point.  Every object is immutable, so concurrent use is safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

Block = tuple[int, ...]


def bell_number(n: int) -> int:
    """Number of partitions of an n-element set (binomial recurrence)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def catalan_number(n: int) -> int:
    """n-th Catalan number, the size of the non-crossing family NC(n)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.comb(2 * n, n) // (n + 1)


class SetPartition:
    """A partition of {1, ..., n} in canonical form.

    Blocks are stored as tuples sorted ascending, and the list of blocks is
    ordered by each block's minimum, so equal partitions compare and hash
    equal.  Instances are immutable.
    """

    __slots__ = ("n", "blocks", "_index", "_hash", "_nc")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        canon = tuple(sorted((tuple(sorted(b)) for b in blocks), key=lambda b: b[0] if b else 0))
        index = [0] * n
        seen: set[int] = set()
        for bi, b in enumerate(canon):
            if not b:
                raise ValueError("empty block")
            for x in b:
                if not (1 <= x <= n):
                    raise ValueError(f"element {x} outside 1..{n}")
                if x in seen:
                    raise ValueError(f"element {x} repeated")
                seen.add(x)
                index[x - 1] = bi
        if len(seen) != n:
            raise ValueError("blocks do not cover the ground set")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blocks", canon)
        object.__setattr__(self, "_index", tuple(index))
        object.__setattr__(self, "_hash", hash((n, canon)))
        object.__setattr__(self, "_nc", None)

    def __setattr__(self, name, value):
        raise AttributeError("SetPartition is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetPartition)
            and self.n == other.n
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"SetPartition({self.n}, {self.to_text()!r})"

    def __len__(self) -> int:
        return len(self.blocks)

    @classmethod
    def singletons(cls, n: int) -> "SetPartition":
        return cls(n, [(i,) for i in range(1, n + 1)])

    @classmethod
    def full(cls, n: int) -> "SetPartition":
        if n == 0:
            return cls(0, [])
        return cls(n, [tuple(range(1, n + 1))])

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "SetPartition":
        """Build from a per-element label vector (labels[i-1] for element i)."""
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels, start=1):
            groups.setdefault(lab, []).append(i)
        return cls(len(labels), groups.values())

    def block_index(self) -> tuple[int, ...]:
        """Per-element index of the containing block (element i at [i-1])."""
        return self._index

    def block_sizes(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self.blocks)

    def is_pair_partition(self) -> bool:
        return all(len(b) == 2 for b in self.blocks)

    def is_noncrossing(self) -> bool:
        """Linear scan with a stack of open blocks: a block may only continue
        when it sits on top, otherwise two blocks interleave."""
        if self._nc is None:
            object.__setattr__(self, "_nc", self._compute_noncrossing())
        return self._nc

    def _compute_noncrossing(self) -> bool:
        idx = self._index
        last = [b[-1] for b in self.blocks]
        opened: set[int] = set()
        stack: list[int] = []
        for x in range(1, self.n + 1):
            b = idx[x - 1]
            if b in opened:
                if not stack or stack[-1] != b:
                    return False
            else:
                opened.add(b)
                stack.append(b)
            if x == last[b]:
                stack.pop()
        return True

    def restrict(self, elements: Iterable[int]) -> "SetPartition":
        """Induced partition on a subset, relabelled order-preservingly to 1..k."""
        sub = sorted(elements)
        rank = {x: i + 1 for i, x in enumerate(sub)}
        keep = set(sub)
        blocks = []
        for b in self.blocks:
            nb = tuple(rank[x] for x in b if x in keep)
            if nb:
                blocks.append(nb)
        return SetPartition(len(sub), blocks)

    def relabel(self, image: dict[int, int], n: int | None = None) -> "SetPartition":
        """Apply an injective relabelling to every element."""
        m = n if n is not None else self.n
        return SetPartition(m, [tuple(image[x] for x in b) for b in self.blocks])

    def to_text(self) -> str:
        """Serialize as blocks joined by '|', elements by ',': "1,4|2,5|3,6"."""
        return "|".join(",".join(str(x) for x in b) for b in self.blocks)

    @classmethod
    def from_text(cls, text: str, n: int | None = None) -> "SetPartition":
        text = text.strip()
        blocks = []
        if text:
            for part in text.split("|"):
                blocks.append(tuple(int(tok) for tok in part.split(",")))
        size = n if n is not None else max((x for b in blocks for x in b), default=0)
        return cls(size, blocks)


def enumerate_partitions(n: int) -> Iterator[SetPartition]:
    """All partitions of [n] in canonical form, via restricted-growth strings.

    Yields Bell(n) partitions; n = 0 yields the single empty partition.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        yield SetPartition(0, [])
        return
    labels = [0] * n

    def rec(pos: int, top: int) -> Iterator[SetPartition]:
        if pos == n:
            yield SetPartition.from_labels(labels)
            return
        for lab in range(top + 1):
            labels[pos] = lab
            yield from rec(pos + 1, max(top, lab + 1))

    yield from rec(1, 1)  # labels[0] is fixed at 0


def _noncrossing_by_filter(n: int) -> Iterator[SetPartition]:
    for p in enumerate_partitions(n):
        if p.is_noncrossing():
            yield p


def _noncrossing_recursive(n: int) -> Iterator[SetPartition]:
    """Direct construction: pick the block of the smallest element, then fill
    the gaps between its members independently."""

    def gen(points: tuple[int, ...]) -> Iterator[tuple[Block, ...]]:
        if not points:
            yield ()
            return
        first, rest = points[0], points[1:]
        for k in range(len(rest) + 1):
            for members in combinations(rest, k):
                block = (first,) + members
                # segments of `rest` strictly between consecutive block members
                bounds = list(block[1:]) + [None]
                segs: list[list[int]] = []
                seg: list[int] = []
                bi = 0
                for x in rest:
                    if bounds[bi] is not None and x == bounds[bi]:
                        segs.append(seg)
                        seg = []
                        bi += 1
                    else:
                        seg.append(x)
                segs.append(seg)
                subparts = [list(gen(tuple(s))) for s in segs]

                def combine(i: int, acc: tuple[Block, ...]) -> Iterator[tuple[Block, ...]]:
                    if i == len(subparts):
                        yield acc
                        return
                    for choice in subparts[i]:
                        yield from combine(i + 1, acc + choice)

                yield from combine(0, (block,))

    for blocks in gen(tuple(range(1, n + 1))):
        yield SetPartition(n, blocks)


def enumerate_noncrossing(n: int) -> Iterator[SetPartition]:
    """All non-crossing partitions of [n]; count = Catalan(n).

    Filters the full enumeration for small n and switches to the direct
    recursive construction above n = 10 (the two agree, see tests).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n <= 10:
        yield from _noncrossing_by_filter(n)
    else:
        yield from _noncrossing_recursive(n)


def enumerate_pair_noncrossing(n: int) -> Iterator[SetPartition]:
    """Non-crossing pairings of [n]; empty for odd n, Catalan(n/2) otherwise."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2 == 1:
        return
    if n == 0:
        yield SetPartition(0, [])
        return

    def gen(points: tuple[int, ...]) -> Iterator[tuple[Block, ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for j in range(1, len(points), 2):
            partner = points[j]
            inside = points[1:j]
            outside = points[j + 1:]
            for a in gen(inside):
                for b in gen(outside):
                    yield ((first, partner),) + a + b

    for blocks in gen(tuple(range(1, n + 1))):
        yield SetPartition(n, blocks)


def enumerate_pairings(n: int) -> Iterator[SetPartition]:
    """All pair partitions of [n] (crossing allowed); (n-1)!! of them."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n % 2 == 1:
        return
    if n == 0:
        yield SetPartition(0, [])
        return

    def gen(points: tuple[int, ...]) -> Iterator[tuple[Block, ...]]:
        if not points:
            yield ()
            return
        first = points[0]
        for j in range(1, len(points)):
            partner = points[j]
            rest = points[1:j] + points[j + 1:]
            for tail in gen(rest):
                yield ((first, partner),) + tail

    for blocks in gen(tuple(range(1, n + 1))):
        yield SetPartition(n, blocks)


def is_refinement(sigma: SetPartition, pi: SetPartition) -> bool:
    """True iff every block of sigma lies inside a single block of pi."""
    if sigma.n != pi.n:
        raise ValueError("partitions live on different ground sets")
    idx = pi.block_index()
    for b in sigma.blocks:
        target = idx[b[0] - 1]
        for x in b[1:]:
            if idx[x - 1] != target:
                return False
    return True


@lru_cache(maxsize=None)
def _noncrossing_list(n: int) -> tuple[SetPartition, ...]:
    return tuple(enumerate_noncrossing(n))


@lru_cache(maxsize=None)
def _mobius_nc_cached(pi: SetPartition, sigma: SetPartition) -> int:
    if pi == sigma:
        return 1
    # mu(pi, sigma) = -sum over pi < tau <= sigma of mu(tau, sigma)
    total = 0
    for tau in _noncrossing_list(pi.n):
        if tau != pi and is_refinement(pi, tau) and is_refinement(tau, sigma):
            total += _mobius_nc_cached(tau, sigma)
    return -total


def mobius_nc(pi: SetPartition, sigma: SetPartition) -> int:
    """Mobius function of the non-crossing partition lattice.

    Defined by the recursion sum_{pi <= tau <= sigma} mu(tau, sigma) =
    [pi == sigma], and zero when pi is not a refinement of sigma.
    """
    if pi.n != sigma.n:
        raise ValueError("partitions live on different ground sets")
    if not pi.is_noncrossing() or not sigma.is_noncrossing():
        raise ValueError("mobius_nc requires non-crossing arguments")
    if not is_refinement(pi, sigma):
        return 0
    return _mobius_nc_cached(pi, sigma)


def blocks_cross(a: Sequence[int], b: Sequence[int]) -> bool:
    """Interleaving test: blocks cross iff the merged order switches between
    them at least three times (the pattern a < b < a < b or its mirror)."""
    merged = sorted([(x, 0) for x in a] + [(x, 1) for x in b])
    switches = 0
    prev = merged[0][1]
    for _, lab in merged[1:]:
        if lab != prev:
            switches += 1
            prev = lab
    return switches >= 3


@dataclass(frozen=True)
class IntersectionGraph:
    """Crossing graph of a partition: one vertex per block, an edge when two
    blocks interleave.  Irreflexive and symmetric by construction."""

    num_vertices: int
    edges: frozenset[tuple[int, int]]  # pairs (i, j) with i < j

    def neighbours(self, v: int) -> set[int]:
        out = set()
        for i, j in self.edges:
            if i == v:
                out.add(j)
            elif j == v:
                out.add(i)
        return out

    def is_connected(self) -> bool:
        if self.num_vertices <= 1:
            return True
        seen = {0}
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for w in self.neighbours(v):
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        return len(seen) == self.num_vertices

    def is_bipartite(self) -> bool:
        colour: dict[int, int] = {}
        for start in range(self.num_vertices):
            if start in colour:
                continue
            colour[start] = 0
            frontier = [start]
            while frontier:
                v = frontier.pop()
                for w in self.neighbours(v):
                    if w not in colour:
                        colour[w] = colour[v] ^ 1
                        frontier.append(w)
                    elif colour[w] == colour[v]:
                        return False
        return True


def intersection_graph(pi: SetPartition) -> IntersectionGraph:
    """Graph on the blocks of pi with edges between interleaving blocks."""
    edges = set()
    for i in range(len(pi.blocks)):
        for j in range(i + 1, len(pi.blocks)):
            if blocks_cross(pi.blocks[i], pi.blocks[j]):
                edges.add((i, j))
    return IntersectionGraph(len(pi.blocks), frozenset(edges))


@dataclass(frozen=True)
class PairPartitionClass:
    """Membership flags for the pairing families classified by the
    intersection graph: all pairings, connected ones, bipartite-connected."""

    is_pair: bool
    is_connected: bool
    is_bipartite_connected: bool


def classify_pair_partition(pi: SetPartition) -> PairPartitionClass:
    g = intersection_graph(pi)
    connected = g.is_connected()
    return PairPartitionClass(
        is_pair=pi.is_pair_partition(),
        is_connected=connected,
        is_bipartite_connected=connected and g.is_bipartite(),
    )


@lru_cache(maxsize=None)
def count_bicon_pairs(two_j: int) -> int:
    """Number of pairings of [two_j] whose intersection graph is connected
    and bipartite, by exhaustive classification of all (two_j - 1)!! pairings.
    """
    if two_j < 2 or two_j % 2 == 1:
        raise ValueError("argument must be even and >= 2")
    count = 0
    for p in enumerate_pairings(two_j):
        c = classify_pair_partition(p)
        if c.is_bipartite_connected:
            count += 1
    return count
