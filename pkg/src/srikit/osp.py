"""Ordered set partitions and the merge-split involution."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable, Iterator

from srikit.errors import InputError


@dataclass(frozen=True)
class OrderedSetPartition:
    """Blocks in order; each block is stored as an ascending tuple."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        seen: set[int] = set()
        for b in blocks:
            if not b:
                raise InputError("blocks must be nonempty")
            if seen.intersection(b) or len(set(b)) != len(b):
                raise InputError("blocks must be pairwise disjoint")
            seen.update(b)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def of(cls, *blocks: Iterable[int]) -> "OrderedSetPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    def __len__(self):
        return len(self.blocks)

    def __str__(self):
        return "(" + ",".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks) + ")"


def osp_sign(p: OrderedSetPartition) -> int:
    return -1 if (len(p.ground) - len(p.blocks)) % 2 else 1


def merge_split_involution(p: OrderedSetPartition) -> OrderedSetPartition:
    """Split the leftmost eligible block's minimum off, or merge the singleton before it.

    Fixed exactly on all-singleton partitions in decreasing order.
    """
    blocks = p.blocks
    for i, b in enumerate(blocks):
        prev = blocks[i - 1] if i > 0 and len(blocks[i - 1]) == 1 else None
        if len(b) > 1 or (prev is not None and len(b) == 1 and b[0] > prev[0]):
            c = b[0]
            if prev is None or c < prev[0]:
                new = blocks[:i] + ((c,), b[1:]) + blocks[i + 1 :]
            else:
                merged = tuple(sorted(prev + b))
                new = blocks[: i - 1] + (merged,) + blocks[i + 1 :]
            return OrderedSetPartition(new)
    return p


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def set_partitions(ground: Iterable[int]) -> Iterator[list[tuple[int, ...]]]:
    """Unordered set partitions, blocks as ascending tuples sorted by minimum."""
    for part in _set_partitions(sorted(ground)):
        yield sorted(tuple(sorted(b)) for b in part)


def enumerate_osps(
    ground: Iterable[int], block_filter: Callable[[tuple[int, ...]], bool] | None = None
) -> Iterator[OrderedSetPartition]:
    """Every OSP of ``ground`` whose blocks all pass ``block_filter``.

    Ordered by number of blocks, then lexicographically by block tuples.
    """
    ground = sorted(ground)
    by_len: dict[int, list[tuple[tuple[int, ...], ...]]] = {}
    for part in set_partitions(ground):
        if block_filter is not None and not all(block_filter(b) for b in part):
            continue
        by_len.setdefault(len(part), []).extend(permutations(part))
    if not ground:
        yield OrderedSetPartition(())
        return
    for k in sorted(by_len):
        for blocks in sorted(by_len[k]):
            yield OrderedSetPartition(blocks)


def ordered_bell(n: int) -> int:
    """Number of ordered set partitions of an ``n``-set (Fubini number)."""
    from math import comb

    a = [1]
    for m in range(1, n + 1):
        a.append(sum(comb(m, k) * a[m - k] for k in range(1, m + 1)))
    return a[n]
