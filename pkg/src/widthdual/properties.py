"""Decision procedures for the structural properties of partition sets and functions.

Every checker is exhaustive.  Pointed pairs ``(alpha|A), (B|beta)`` are
ordered and range over both orders.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterable

from . import config
from .core import (
    Partition,
    PointedPartition,
    all_partitions,
    canonical,
    full_mask,
    is_finer,
    is_strongly_finer,
    partition_key,
    pointed_forms,
    remove_from,
    submasks,
)
from .duality import (
    enumerate_small_systems,
    find_big_bramble,
    has_small_partition,
)
from .functions import PartitionFunction, format_value
from .report import PropertyReport, fails, holds


@lru_cache(maxsize=1 << 18)
def _absorb(base: tuple, idx: int, f: int) -> Partition:
    a = base[idx] | f
    rest = base[:idx] + base[idx + 1:]
    return canonical(remove_from(rest, f) + (a,))


def absorbed(pp: PointedPartition, f: int) -> Partition:
    """``(alpha \\ F | A u F)``."""
    return _absorb(pp.base, pp.pointed, f)


def _members(partitions: Iterable) -> tuple:
    ms = {canonical(p) for p in partitions}
    return tuple(sorted(ms, key=partition_key))


@lru_cache(maxsize=None)
def all_pointed(n: int) -> tuple:
    return tuple(pp for p in all_partitions(n) for pp in pointed_forms(p))


# -- partition sets -----------------------------------------------------------


def is_pushing(partitions: Iterable[Partition], n: int) -> PropertyReport:
    """Each pair with ``A^c & B^c`` nonempty lets some nonempty ``F`` there be absorbed into one side."""
    name = "pushing"
    members = _members(partitions)
    inside = set(members)
    full = full_mask(n)
    pts = [pp for p in members for pp in pointed_forms(p)]
    for first in pts:
        for second in pts:
            o = full & ~(first.block | second.block)
            if not o:
                continue
            if not any(absorbed(first, f) in inside or absorbed(second, f) in inside for f in submasks(o)):
                return fails(name, first=first, second=second)
    return holds(name)


def _refining(partitions, n, finer, name) -> PropertyReport:
    members = _members(partitions)
    pts = [pp for p in members for pp in pointed_forms(p)]
    for first in pts:
        for second in pts:
            if first.block & second.block:
                continue
            cover = canonical(first.rest + second.rest)
            if not any(finer(q, cover) for q in members):
                return fails(name, first=first, second=second, covering=cover)
    return holds(name)


def is_refining(partitions: Iterable[Partition], n: int) -> PropertyReport:
    """Each disjoint pointed pair has a member finer than the covering ``(alpha|beta)``."""
    return _refining(partitions, n, is_finer, "refining")


def is_strongly_refining(partitions: Iterable[Partition], n: int) -> PropertyReport:
    return _refining(partitions, n, is_strongly_finer, "strongly-refining")


def is_dualising(partitions: Iterable[Partition], n: int, bound: int | None = None,
                 sample: int | None = None, seed: int | None = None,
                 nonempty: bool = False) -> PropertyReport:
    """For every small-set system: a small member or a big bramble.

    Systems are enumerated through their antichains of maximal members.  With
    ``sample`` only that many systems, drawn with ``seed``, are inspected.
    ``bound`` caps the number of systems enumerated.
    """
    name = "dualising"
    config.check_cap(n, config.DUALISING_CAP, "dualising sweep")
    members = _members(partitions)
    systems = []
    for s in enumerate_small_systems(n):
        systems.append(s)
        if bound is not None and len(systems) > bound:
            raise config.CapExceeded(f"more than {bound} small-set systems on {n} elements")
    if sample is not None and sample < len(systems):
        rng = random.Random(config.SEED if seed is None else seed)
        systems = rng.sample(systems, sample)
    for s in systems:
        if has_small_partition(members, s) is not None:
            continue
        if find_big_bramble(members, s, n, nonempty) is None:
            return fails(name, small_sets=s)
    return holds(name)


# -- partition functions ------------------------------------------------------


def is_submodular_pf(psi: PartitionFunction) -> PropertyReport:
    """``psi(alpha|A) + psi(B|beta) >= psi(alpha\\B^c | A u B^c) + psi(beta\\A^c | B u A^c)``."""
    name = "submodular"
    n = psi.n
    config.check_cap(n, config.ENUMERATION_CAP, "partition-function sweep")
    full = full_mask(n)
    pts = all_pointed(n)
    for first in pts:
        v1 = psi(first.base)
        for second in pts:
            a, b = first.block, second.block
            lhs = v1 + psi(second.base)
            left = absorbed(first, full & ~b)
            right = absorbed(second, full & ~a)
            if lhs < psi(left) + psi(right):
                return fails(name, first=first, second=second,
                             values=[format_value(x) for x in (v1, psi(second.base), psi(left), psi(right))])
    return holds(name)


def is_weakly_submodular_old(psi: PartitionFunction) -> PropertyReport:
    """For every pair: some ``A < F <= (B\\A)^c`` strictly lowers ``psi(alpha|A)``,
    or ``psi(beta|B) >= psi(beta\\A^c | B u A^c)``."""
    name = "weakly-submodular-old"
    n = psi.n
    config.check_cap(n, config.ENUMERATION_CAP, "partition-function sweep")
    full = full_mask(n)
    pts = all_pointed(n)
    for first in pts:
        a = first.block
        v1 = psi(first.base)
        for second in pts:
            b = second.block
            if psi(second.base) >= psi(absorbed(second, full & ~a)):
                continue
            room = full & ~(b & ~a) & ~a
            if any(v1 > psi(absorbed(first, a | g)) for g in submasks(room)):
                continue
            return fails(name, first=first, second=second)
    return holds(name)


def is_weakly_submodular_new(psi: PartitionFunction) -> PropertyReport:
    """For every pair with ``O = A^c & B^c`` nonempty, some nonempty ``F <= O`` satisfies
    ``psi(alpha|A) >= psi(alpha\\F | A u F)`` or ``psi(beta|B) >= psi(beta\\F | B u F)``."""
    name = "weakly-submodular-new"
    n = psi.n
    config.check_cap(n, config.ENUMERATION_CAP, "partition-function sweep")
    full = full_mask(n)
    pts = all_pointed(n)
    for first in pts:
        v1 = psi(first.base)
        for second in pts:
            o = full & ~(first.block | second.block)
            if not o:
                continue
            v2 = psi(second.base)
            if any(v1 >= psi(absorbed(first, f)) or v2 >= psi(absorbed(second, f)) for f in submasks(o)):
                continue
            return fails(name, first=first, second=second)
    return holds(name)


def indicator_pf(partitions: Iterable[Partition], n: int) -> PartitionFunction:
    """0 on the given partitions, 1 elsewhere."""
    inside = frozenset(canonical(p) for p in partitions)
    return PartitionFunction(n, lambda p: 0 if p in inside else 1, "indicator")


SET_CHECKERS = {
    "pushing": is_pushing,
    "refining": is_refining,
    "strongly-refining": is_strongly_refining,
    "dualising": is_dualising,
}

FUNCTION_CHECKERS = {
    "submodular": is_submodular_pf,
    "weakly-submodular-old": is_weakly_submodular_old,
    "weakly-submodular-new": is_weakly_submodular_new,
}
