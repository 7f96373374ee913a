"""Subsets, set families and partitions of a small ground set.

Subsets of the ground set ``{0, ..., n-1}`` are plain ``int`` bitmasks.  A set
family is a tuple of nonzero masks in canonical order (blocks sorted by their
sorted element tuples, which orders first by minimum element), so two families
are equal exactly when their tuples are equal.  A partition is a family whose
blocks are pairwise disjoint and cover the ground set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from . import config

Block = int
Family = tuple  # tuple[int, ...] in canonical order
Partition = tuple


@dataclass(frozen=True)
class GroundSet:
    """The finite set being decomposed, indexed ``0..size-1``."""

    size: int
    labels: tuple | None = None

    def __post_init__(self):
        if self.size < 2:
            raise ValueError(f"ground set needs at least 2 elements, got {self.size}")
        config.check_cap(self.size, config.GROUND_CAP, "ground set")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != self.size:
                raise ValueError("labels must have one entry per element")
            if len(set(labels)) != self.size:
                raise ValueError("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i


def _size(e: Union[int, GroundSet]) -> int:
    return e.size if isinstance(e, GroundSet) else int(e)


def full_mask(e: Union[int, GroundSet]) -> int:
    return (1 << _size(e)) - 1


@lru_cache(maxsize=1 << 17)
def elements(mask: int) -> tuple:
    """Sorted element tuple of a mask; doubles as the canonical block key."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def block(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        if i < 0:
            raise ValueError(f"negative element {i}")
        mask |= 1 << i
    return mask


def low_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def submasks(mask: int) -> Iterator[int]:
    """Nonempty submasks of ``mask``, in decreasing numeric order."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def canonical(blocks: Iterable[int]) -> Family:
    """Sort blocks into canonical order, merging duplicates."""
    return tuple(sorted(set(blocks), key=elements))


def make_family(blocks: Iterable) -> Family:
    """Build a validated family from masks or element iterables.

    Raises ``ValueError`` on empty or duplicate blocks.
    """
    masks = [b if isinstance(b, int) else block(b) for b in blocks]
    if any(m == 0 for m in masks):
        raise ValueError("families cannot contain the empty set")
    if len(set(masks)) != len(masks):
        raise ValueError("duplicate block in family")
    return canonical(masks)


def is_partition(fam: Sequence[int], n: Union[int, GroundSet]) -> bool:
    seen = 0
    for b in fam:
        if b == 0 or seen & b:
            return False
        seen |= b
    return seen == full_mask(n)


def make_partition(blocks: Iterable, n: Union[int, GroundSet]) -> Partition:
    fam = make_family(blocks)
    if not is_partition(fam, n):
        raise ValueError(f"{family_to_json(fam)} is not a partition of a {_size(n)}-element set")
    return fam


def complement(s: int, n: Union[int, GroundSet]) -> int:
    """``E \\ s``; may be 0."""
    return full_mask(n) & ~s


def overlap(fam: Iterable[int]) -> int:
    """Elements lying in at least two blocks of the family."""
    once = twice = 0
    for b in fam:
        twice |= once & b
        once |= b
    return twice


def remove_from(fam: Iterable[int], r: int) -> Family:
    """``{X \\ r : X in fam}`` with emptied blocks dropped."""
    return canonical(b & ~r for b in fam if b & ~r)


# -- finer / strongly finer ---------------------------------------------------


def finer_witness(a: Sequence[int], b: Sequence[int]) -> dict | None:
    """Assignment showing ``a`` is obtainable from ``b`` by deletions and splits.

    Returns a map from each block of ``a`` to a block of ``b`` containing it,
    such that blocks mapped to the same target are pairwise disjoint, or
    ``None`` when no such map exists.
    """
    a = sorted(a, key=lambda x: -bin(x).count("1"))
    candidates = [[y for y in b if x & ~y == 0] for x in a]
    if any(not c for c in candidates):
        return None
    used = {y: 0 for y in b}
    assign: dict = {}

    def place(i: int) -> bool:
        if i == len(a):
            return True
        x = a[i]
        for y in candidates[i]:
            if used[y] & x:
                continue
            used[y] |= x
            assign[x] = y
            if place(i + 1):
                return True
            used[y] &= ~x
            del assign[x]
        return False

    return assign if place(0) else None


@lru_cache(maxsize=1 << 16)
def _is_finer_cached(a: tuple, b: tuple) -> bool:
    return finer_witness(a, b) is not None


def is_finer(a: Sequence[int], b: Sequence[int]) -> bool:
    return _is_finer_cached(tuple(a), tuple(b))


def strongly_finer_witness(a: Sequence[int], b: Sequence[int]) -> dict | None:
    """Injective containment assignment from ``a`` into ``b`` (deletions only).

    Found as a bipartite matching saturating the blocks of ``a``.
    """
    a = list(a)
    b = list(b)
    if len(a) > len(b):
        return None
    adj = [[j for j, y in enumerate(b) if x & ~y == 0] for x in a]
    owner = [-1] * len(b)

    def augment(i: int, seen: list) -> bool:
        for j in adj[i]:
            if seen[j]:
                continue
            seen[j] = True
            if owner[j] < 0 or augment(owner[j], seen):
                owner[j] = i
                return True
        return False

    for i in range(len(a)):
        if not augment(i, [False] * len(b)):
            return None
    return {a[i]: b[j] for j, i in enumerate(owner) if i >= 0}


@lru_cache(maxsize=1 << 16)
def _is_strongly_finer_cached(a: tuple, b: tuple) -> bool:
    return strongly_finer_witness(a, b) is not None


def is_strongly_finer(a: Sequence[int], b: Sequence[int]) -> bool:
    return _is_strongly_finer_cached(tuple(a), tuple(b))


def is_finer_coordinatewise(alphas: Sequence[Sequence[int]], betas: Sequence[Sequence[int]]) -> bool:
    """Each ``alphas[i]`` finer than ``betas[i]``; needs ``len(alphas) <= len(betas)``."""
    if len(alphas) > len(betas):
        return False
    return all(is_finer(x, y) for x, y in zip(alphas, betas))


# -- pointed partitions and merging ------------------------------------------


class PointedPartition(NamedTuple):
    """A partition with one distinguished block, written ``(rest | block)``."""

    base: Partition
    pointed: int

    @property
    def block(self) -> int:
        return self.base[self.pointed]

    @property
    def rest(self) -> Family:
        return self.base[: self.pointed] + self.base[self.pointed + 1 :]

    def to_json(self) -> dict:
        return {"partition": family_to_json(self.base), "pointed": self.pointed}


def pointed(base: Iterable[int], blk: int) -> PointedPartition:
    base = canonical(base)
    try:
        return PointedPartition(base, base.index(blk))
    except ValueError:
        raise ValueError(f"{elements(blk)} is not a block of {family_to_json(base)}") from None


def pointed_forms(p: Partition) -> Iterator[PointedPartition]:
    for i in range(len(p)):
        yield PointedPartition(p, i)


def merge(first: PointedPartition, second: PointedPartition) -> Partition:
    """Merge ``(alpha|A)`` with ``(A^c|beta)`` into ``(alpha|beta)``."""
    a, b = first.block, second.block
    full = 0
    for x in first.base:
        full |= x
    if a & b or (a | b) != full:
        raise ValueError(
            f"pointed blocks {list(elements(a))} and {list(elements(b))} are not complementary"
        )
    return canonical(first.rest + second.rest)


def absorb(pp: PointedPartition, f: int) -> Partition:
    """``(alpha \\ F | A u F)``: pull the elements of ``f`` into the pointed block."""
    return canonical(remove_from(pp.rest, f) + (pp.block | f,))


# -- enumeration --------------------------------------------------------------


def _restricted_growth(n: int) -> Iterator[list]:
    blocks: list = []

    def rec(i: int):
        if i == n:
            yield blocks
            return
        bit = 1 << i
        for j in range(len(blocks)):
            blocks[j] |= bit
            yield from rec(i + 1)
            blocks[j] &= ~bit
        blocks.append(bit)
        yield from rec(i + 1)
        blocks.pop()

    yield from rec(0)


@lru_cache(maxsize=None)
def all_partitions(n: int) -> tuple:
    """Every partition of ``{0..n-1}``, sorted canonically (cached)."""
    return tuple(sorted((canonical(bs) for bs in _restricted_growth(n)), key=partition_key))


def partition_key(p: Partition) -> tuple:
    return tuple(elements(b) for b in p)


def enumerate_partitions(
    e: Union[int, GroundSet], max_blocks: int | None = None, cap: int | None = None
) -> Iterator[Partition]:
    """Yield every partition of the ground set exactly once, in canonical order."""
    n = _size(e)
    if n < 2:
        raise ValueError(f"ground set needs at least 2 elements, got {n}")
    config.check_cap(n, config.ENUMERATION_CAP if cap is None else cap, "partition enumeration")
    for p in all_partitions(n):
        if max_blocks is None or len(p) <= max_blocks:
            yield p


def split_block(mask: int, min_parts: int = 1, max_parts: int | None = None) -> Iterator[Family]:
    """Partitions of the set ``mask`` into ``min_parts..max_parts`` blocks."""
    elems = elements(mask)
    if not elems:
        return
    parts: list = []

    def rec(i: int):
        if i == len(elems):
            if len(parts) >= min_parts:
                yield canonical(parts)
            return
        bit = 1 << elems[i]
        for j in range(len(parts)):
            parts[j] |= bit
            yield from rec(i + 1)
            parts[j] &= ~bit
        if max_parts is None or len(parts) < max_parts:
            parts.append(bit)
            yield from rec(i + 1)
            parts.pop()

    yield from rec(0)


# -- serialization ------------------------------------------------------------


def family_to_json(fam: Iterable[int]) -> list:
    return [list(elements(b)) for b in canonical(fam)]


def family_from_json(data) -> Family:
    if isinstance(data, str):
        data = json.loads(data)
    return make_family(data)


def partition_from_json(data, n: Union[int, GroundSet]) -> Partition:
    if isinstance(data, str):
        data = json.loads(data)
    return make_partition(data, n)
