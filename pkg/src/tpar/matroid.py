"""Partitioning phase terms into simultaneously computable blocks.

A set ``A`` of linear functions is computable on ``n`` wires over an input
space of dimension ``dim_v`` iff ``dim_v - rank(A) <= n - |A|``. Those sets
are the independent sets of a matroid, so a minimum partition can be grown
one element at a time with breadth-first augmenting paths.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import gf2


def _mask(e) -> int:
    if isinstance(e, int):
        return e
    if isinstance(e, gf2.XorFunction):
        return e.mask
    return e.func.mask


@dataclass(frozen=True)
class Oracle:
    """Independence test for one state space.

    ``n=None`` means an unbounded ancilla supply: every set is computable.
    """

    dim_v: int
    n: Optional[int]

    def __post_init__(self):
        if self.n is not None and self.dim_v > self.n:
            raise ValueError(f"dim_v={self.dim_v} exceeds n={self.n}")


def is_independent(block: Iterable, oracle: Oracle) -> bool:
    if oracle.n is None:
        return True
    items = list(block)
    if len(items) > oracle.n:
        return False
    return oracle.dim_v - gf2.rank(_mask(e) for e in items) <= oracle.n - len(items)


@dataclass
class Partition:
    blocks: list[list] = field(default_factory=list)

    def elements(self) -> list:
        return [e for b in self.blocks for e in b]

    def __len__(self) -> int:
        return len(self.blocks)


class _BlockView:
    """Span data for one block, valid while the partition is unchanged."""

    __slots__ = ("masks", "span", "_without")

    def __init__(self, masks: list[int]):
        self.masks = masks
        self.span = gf2.SpanBasis(masks)
        self._without: dict[int, gf2.SpanBasis] = {}

    def without(self, pos: int) -> gf2.SpanBasis:
        if pos not in self._without:
            self._without[pos] = gf2.SpanBasis(m for i, m in enumerate(self.masks) if i != pos)
        return self._without[pos]


def _fits(oracle: Oracle, size: int, rank: int) -> bool:
    return oracle.dim_v - rank <= oracle.n - size


def partition_add(s, partition: Partition, oracle: Oracle) -> Partition:
    """Insert ``s`` into a minimal partition, keeping it minimal.

    Breadth-first search over the exchange graph, edges tested lazily: from
    the current head, a block that accepts it outright ends the search;
    otherwise every unvisited ``u`` in that block which could be swapped out
    for the head is queued. The first success is applied along the path of
    parents. When no path exists ``{s}`` becomes a new block. Mutates and
    returns ``partition``.
    """
    blocks = partition.blocks
    if oracle.n is None:
        if blocks:
            blocks[0].append(s)
        else:
            blocks.append([s])
        return partition
    home = {}
    for i, b in enumerate(blocks):
        for e in b:
            home[e] = i
    views = [_BlockView([_mask(e) for e in b]) for b in blocks]
    parent = {s: None}
    queue = deque([s])
    while queue:
        head = queue.popleft()
        hmask = _mask(head)
        own = home.get(head)
        for i, block in enumerate(blocks):
            if i == own:
                continue
            view = views[i]
            size = len(block)
            grown_rank = view.span.rank + (hmask not in view.span)
            if _fits(oracle, size + 1, grown_rank):
                _augment(head, i, parent, blocks, home)
                return partition
            for pos, u in enumerate(block):
                if u in parent:
                    continue
                rest = view.without(pos)
                if _fits(oracle, size, rest.rank + (hmask not in rest)):
                    parent[u] = head
                    queue.append(u)
    blocks.append([s])
    return partition


def _augment(head, sink: int, parent: dict, blocks: list[list], home: dict) -> None:
    blocks[sink].append(head)
    v = head
    while parent[v] is not None:
        w = parent[v]
        block = blocks[home[v]]
        block[block.index(v)] = w
        v = w


def partition_all(elements: Iterable, oracle: Oracle) -> Partition:
    partition = Partition()
    for e in elements:
        partition_add(e, partition, oracle)
    return partition


def repair_on_dim_increase(partition: Partition, oracle: Oracle) -> tuple[Partition, list]:
    """Drop one rank-preserving element from each block the new oracle rejects.

    Valid when the state-space dimension grew by exactly one: a single
    removal then restores independence, and the trimmed partition is still
    minimal for what it holds. Mutates ``partition``; returns it together
    with the evicted elements.
    """
    evicted = []
    for block in partition.blocks:
        if not is_independent(block, oracle):
            idx = gf2.dependent_index([_mask(e) for e in block])
            evicted.append(block.pop(idx))
    partition.blocks = [b for b in partition.blocks if b]
    return partition, evicted
