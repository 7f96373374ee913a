"""Small-set systems, brambles and the two sides of the duality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Union

from .core import (
    Family,
    Partition,
    PointedPartition,
    canonical,
    elements,
    family_to_json,
    full_mask,
    make_family,
)


def _antichain(sets: Iterable[int], keep_max: bool) -> Family:
    sets = set(sets)
    if keep_max:
        out = [x for x in sets if not any(y != x and x & ~y == 0 for y in sets)]
    else:
        out = [x for x in sets if not any(y != x and y & ~x == 0 for y in sets)]
    return canonical(out)


@dataclass(frozen=True)
class SmallSetSystem:
    """A downward-closed family of subsets, stored by its maximal members.

    ``contains_empty`` only matters when there are no maximal members: it
    separates ``{emptyset}`` from the system with no small set at all.
    """

    maximal: Family = ()
    contains_empty: bool = True

    def __post_init__(self):
        object.__setattr__(self, "maximal", _antichain((m for m in self.maximal if m), keep_max=True))

    @classmethod
    def of(cls, sets: Iterable) -> "SmallSetSystem":
        masks = [s if isinstance(s, int) else sum(1 << i for i in s) for s in sets]
        return cls(tuple(m for m in masks if m), contains_empty=True)

    @classmethod
    def singletons(cls, n: int) -> "SmallSetSystem":
        return cls(tuple(1 << i for i in range(n)))

    @classmethod
    def everything(cls, n: int) -> "SmallSetSystem":
        return cls((full_mask(n),))

    @classmethod
    def nothing(cls) -> "SmallSetSystem":
        return cls((), contains_empty=False)

    def is_small(self, x: int) -> bool:
        if x == 0:
            return self.contains_empty or bool(self.maximal)
        return any(x & ~m == 0 for m in self.maximal)

    def is_big(self, x: int) -> bool:
        return not self.is_small(x)

    def minimal_big(self, n: int) -> Family:
        """Inclusion-minimal nonempty big subsets of ``{0..n-1}``."""
        out = []
        for x in range(1, full_mask(n) + 1):
            if self.is_small(x):
                continue
            if all((x & ~(1 << i)) == 0 or self.is_small(x & ~(1 << i)) for i in elements(x)):
                out.append(x)
        return canonical(out)

    def to_json(self) -> dict:
        return {"maximal": family_to_json(self.maximal), "empty": self.is_small(0)}


@dataclass(frozen=True)
class UpFamily:
    """An upward-closed family of nonempty subsets, stored by its minimal members."""

    minimal: Family = ()

    def __post_init__(self):
        if any(m == 0 for m in self.minimal):
            raise ValueError("an upward-closed family containing the empty set is everything")
        object.__setattr__(self, "minimal", _antichain(self.minimal, keep_max=False))

    @classmethod
    def of(cls, sets: Iterable) -> "UpFamily":
        return cls(make_family(sets))

    def __contains__(self, x: int) -> bool:
        return any(m & ~x == 0 for m in self.minimal)

    def __len__(self) -> int:
        return len(self.minimal)

    def __bool__(self) -> bool:
        return bool(self.minimal)

    def meets(self, p: Iterable[int]) -> bool:
        return any(b in self for b in p)

    def pairwise_intersecting(self) -> bool:
        ms = self.minimal
        return all(ms[i] & ms[j] for i in range(len(ms)) for j in range(i + 1, len(ms)))

    def members(self, n: int) -> Family:
        return canonical(x for x in range(1, full_mask(n) + 1) if x in self)

    def without(self, m: int, n: int) -> "UpFamily":
        """Drop the minimal member ``m`` from the family over ``{0..n-1}``."""
        if m not in self.minimal:
            raise ValueError(f"{list(elements(m))} is not a minimal member")
        rest = [x for x in self.minimal if x != m]
        ext = [m | (1 << i) for i in range(n) if not m >> i & 1]
        ext = [y for y in ext if not any(x & ~y == 0 for x in rest)]
        return UpFamily(tuple(rest + ext))

    def to_json(self) -> dict:
        return {"minimal": family_to_json(self.minimal)}


Bramble = Union[UpFamily, Iterable[int]]


def is_small_partition(p: Iterable[int], small: SmallSetSystem) -> bool:
    return all(small.is_small(b) for b in p)


def has_small_partition(partitions: Iterable[Partition], small: SmallSetSystem) -> Partition | None:
    for p in partitions:
        if is_small_partition(p, small):
            return p
    return None


def is_bramble(br: Bramble, partitions: Iterable[Partition], nonempty: bool = False) -> bool:
    """Pairwise intersecting and containing a block of every partition.

    ``br`` is an :class:`UpFamily` or an explicit family, taken verbatim.
    With ``nonempty=True`` the empty family is rejected even when there is
    nothing to meet.
    """
    if isinstance(br, UpFamily):
        if nonempty and not br:
            return False
        return br.pairwise_intersecting() and all(br.meets(p) for p in partitions)
    members = set(br)
    if nonempty and not members:
        return False
    ms = list(members)
    if any(not (x & y) for i, x in enumerate(ms) for y in ms[i:]):
        return False
    return all(any(b in members for b in p) for p in partitions)


def is_big_bramble(br: Bramble, partitions: Iterable[Partition], small: SmallSetSystem,
                   nonempty: bool = False) -> bool:
    sets = br.minimal if isinstance(br, UpFamily) else tuple(br)
    return all(small.is_big(x) for x in sets) and is_bramble(br, partitions, nonempty)


def check_bramble_lift(br: Bramble, partitions: Iterable[Partition], table) -> bool:
    """A bramble of the axioms iff a bramble of their merge closure."""
    return is_bramble(br, list(partitions)) == is_bramble(br, table.members)


class BrambleResult(NamedTuple):
    family: UpFamily
    verified: bool


def construct_big_bramble(partitions: Iterable[Partition], small: SmallSetSystem, n: int,
                          nonempty: bool = False) -> BrambleResult | None:
    """Shrink the family of all big sets to an inclusion-minimal one still meeting every partition.

    Returns ``None`` if some partition is small.  The result is a big bramble
    whenever the partition set is refining; ``verified`` records the check.
    """
    partitions = list(partitions)
    if has_small_partition(partitions, small) is not None:
        return None
    fam = UpFamily(small.minimal_big(n))
    changed = True
    while changed:
        changed = False
        for m in fam.minimal:
            cand = fam.without(m, n)
            if all(cand.meets(p) for p in partitions):
                fam = cand
                changed = True
                break
    return BrambleResult(fam, is_big_bramble(fam, partitions, small, nonempty))


def find_big_bramble(partitions: Iterable[Partition], small: SmallSetSystem, n: int | None = None,
                     nonempty: bool = False) -> UpFamily | None:
    """Exact search for a big bramble: pick a big block of each partition, pairwise intersecting."""
    partitions = list(partitions)
    if not partitions:
        if not nonempty:
            return UpFamily()
        if n is None:
            raise ValueError("ground set size needed to find a nonempty bramble of nothing")
        big = small.minimal_big(n)
        return UpFamily(big[:1]) if big else None
    options = []
    for p in partitions:
        bigs = [b for b in p if small.is_big(b)]
        if not bigs:
            return None
        options.append(bigs)
    options.sort(key=len)
    chosen: list = []

    def search(i: int) -> bool:
        if i == len(options):
            return True
        bigs = options[i]
        if any(c & ~b == 0 for b in bigs for c in chosen):
            return search(i + 1)
        for b in bigs:
            if all(b & c for c in chosen):
                chosen.append(b)
                if search(i + 1):
                    return True
                chosen.pop()
        return False

    return UpFamily(tuple(chosen)) if search(0) else None


def non_dualising_witness(first: PointedPartition, second: PointedPartition) -> SmallSetSystem:
    """Small sets = subsets of some block of the covering ``(alpha|beta)``."""
    if first.block & second.block:
        raise ValueError("pointed blocks must be disjoint")
    return SmallSetSystem(canonical(first.rest + second.rest))


def dummy_cover_check(members: Iterable[Partition], small: SmallSetSystem) -> bool:
    """Exactly one of: a small member, or a big block in every member."""
    members = list(members)
    has_small = any(is_small_partition(p, small) for p in members)
    every_big = all(any(small.is_big(b) for b in p) for p in members)
    return has_small != every_big


def enumerate_antichains(n: int, among: Iterable[int] | None = None) -> Iterator[Family]:
    """Antichains of nonempty subsets of ``{0..n-1}`` (optionally restricted to ``among``)."""
    pool = list(canonical(among)) if among is not None else list(canonical(range(1, full_mask(n) + 1)))
    chosen: list = []

    def rec(i: int):
        if i == len(pool):
            yield canonical(chosen)
            return
        x = pool[i]
        if all(x & ~y and y & ~x for y in chosen):
            chosen.append(x)
            yield from rec(i + 1)
            chosen.pop()
        yield from rec(i + 1)

    yield from rec(0)


def enumerate_small_systems(n: int) -> Iterator[SmallSetSystem]:
    """Every downward-closed family that contains the empty set.

    The system without any small set behaves like ``{emptyset}`` on
    partitions and is not repeated.
    """
    for ac in enumerate_antichains(n):
        yield SmallSetSystem(ac)
