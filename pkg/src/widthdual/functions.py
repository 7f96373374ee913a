"""Graphs, connectivity functions and partition functions.

Values are exact: ``int`` or ``fractions.Fraction``, with ``math.inf`` as the
single infinite value (Python compares it exactly against both).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from . import config
from .core import (
    Partition,
    all_partitions,
    canonical,
    elements,
    enumerate_partitions,
    family_to_json,
    full_mask,
    make_partition,
)
from .report import PropertyReport, fails, holds

INF = math.inf


def parse_value(v):
    """Read an extended value: int, ``"p/q"``, or ``"inf"``."""
    if isinstance(v, bool):
        raise ValueError("booleans are not function values")
    if isinstance(v, (int, Fraction)):
        return v
    if isinstance(v, float):
        if math.isinf(v) and v > 0:
            return INF
        if math.isnan(v) or math.isinf(v):
            raise ValueError(f"unsupported value {v}")
        q = Fraction(str(v))
        return int(q) if q.denominator == 1 else q
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        q = Fraction(s)
        return int(q) if q.denominator == 1 else q
    raise ValueError(f"unsupported value {v!r}")


def format_value(v) -> str:
    return "inf" if v == INF else str(v)


# -- graphs -------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``; edges keep input order."""

    n: int
    edges: tuple

    def __post_init__(self):
        seen = set()
        norm = []
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {u} {v} has an endpoint outside 0..{self.n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {u} {v}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, edges: Iterable, n: int | None = None) -> "Graph":
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incidence(self) -> list:
        """Per vertex, the mask of incident edge indices."""
        inc = [0] * self.n
        for i, (u, v) in enumerate(self.edges):
            inc[u] |= 1 << i
            inc[v] |= 1 << i
        return inc

    def adjacency(self) -> list:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def is_connected(self) -> bool:
        """Connectivity of the non-isolated part (isolated vertices are ignored)."""
        adj = self.adjacency()
        active = [v for v in range(self.n) if adj[v]]
        if not active:
            return True
        seen = 1 << active[0]
        stack = [active[0]]
        while stack:
            u = stack.pop()
            new = adj[u] & ~seen
            seen |= new
            stack.extend(elements(new))
        return all(seen >> v & 1 for v in active)

    def is_star_forest(self) -> bool:
        """Every edge has an endpoint of degree one."""
        deg = [bin(a).count("1") for a in self.adjacency()]
        return all(deg[u] == 1 or deg[v] == 1 for u, v in self.edges)

    def to_text(self) -> str:
        lines = [f"p {self.n} {self.m}"] + [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"


# -- set and partition functions ---------------------------------------------


class ConnectivityFunction:
    """A symmetric submodular set function on subsets of ``{0..n-1}``."""

    def __init__(self, n: int, evaluator: Callable[[int], object], descriptor: str = "table",
                 verify: bool = True):
        self.n = n
        self.full = full_mask(n)
        self.descriptor = descriptor
        self._eval = evaluator
        self._memo: dict = {}
        if verify:
            report = verify_connectivity(self)
            if not report:
                raise ValueError(f"{descriptor} is not a connectivity function: {report.to_json()}")

    def __call__(self, a: int):
        try:
            return self._memo[a]
        except KeyError:
            v = self._memo[a] = self._eval(a)
            return v

    def __repr__(self):
        return f"ConnectivityFunction({self.descriptor}, n={self.n})"


class PartitionFunction:
    """A function from partitions of ``{0..n-1}`` to extended values."""

    def __init__(self, n: int, evaluator: Callable[[Partition], object], descriptor: str = "table",
                 max_blocks: int | None = None):
        self.n = n
        self.descriptor = descriptor
        self.max_blocks = max_blocks
        self._eval = evaluator
        self._memo: dict = {}

    def __call__(self, p: Iterable[int]):
        p = tuple(p)
        try:
            return self._memo[p]
        except KeyError:
            pass
        key = canonical(p)
        v = self._memo.get(key)
        if v is None:
            v = self._memo[key] = self._eval(key)
        self._memo[p] = v
        return v

    def __repr__(self):
        return f"PartitionFunction({self.descriptor}, n={self.n})"


def verify_connectivity(f: ConnectivityFunction) -> PropertyReport:
    """Check symmetry and submodularity over all subsets (first violation reported)."""
    name = "connectivity"
    config.check_cap(f.n, config.GROUND_CAP, "connectivity sweep")
    full = f.full
    for a in range(full + 1):
        if f(a) != f(full & ~a):
            return fails(name, axiom="symmetric", A=a, values=(format_value(f(a)), format_value(f(full & ~a))))
    for a in range(full + 1):
        fa = f(a)
        for b in range(a + 1, full + 1):
            if fa + f(b) < f(a | b) + f(a & b):
                return fails(name, axiom="submodular", A=a, B=b)
    return holds(name)


def border(g: Graph) -> PartitionFunction:
    """Number of vertices incident with edges in at least two blocks."""
    inc = [x for x in g.incidence() if x]

    def value(p: Partition) -> int:
        count = 0
        for x in inc:
            hit = 0
            for b in p:
                if b & x:
                    hit += 1
                    if hit == 2:
                        count += 1
                        break
        return count

    return PartitionFunction(g.m, value, "border")


def vertex_boundary_f(g: Graph) -> ConnectivityFunction:
    """Edge-set function: vertices with an incident edge on both sides of the cut."""
    inc = [x for x in g.incidence() if x]
    full = full_mask(g.m)

    def value(a: int) -> int:
        rest = full & ~a
        return sum(1 for x in inc if x & a and x & rest)

    return ConnectivityFunction(g.m, value, "vertex_boundary", verify=False)


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a matrix given as integer bit rows."""
    basis: list = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
            basis.sort(reverse=True)
    return len(basis)


def cut_rank_f(g: Graph) -> ConnectivityFunction:
    """Vertex-set function: GF(2) rank of the ``A x A^c`` adjacency submatrix."""
    adj = g.adjacency()
    full = full_mask(g.n)

    def value(a: int) -> int:
        rest = full & ~a
        return gf2_rank(adj[v] & rest for v in elements(a))

    return ConnectivityFunction(g.n, value, "cut_rank", verify=False)


def max_f(f: ConnectivityFunction) -> PartitionFunction:
    return PartitionFunction(f.n, lambda p: max(f(b) for b in p), f"max_f({f.descriptor})")


def restrict_arity(psi: PartitionFunction, max_blocks: int) -> PartitionFunction:
    """``psi`` on partitions with at most ``max_blocks`` blocks, ``inf`` elsewhere."""
    return PartitionFunction(
        psi.n,
        lambda p: psi(p) if len(p) <= max_blocks else INF,
        f"arity<={max_blocks}({psi.descriptor})",
        max_blocks=max_blocks if psi.max_blocks is None else min(max_blocks, psi.max_blocks),
    )


class LevelSet:
    """Partitions ``mu`` with ``psi(mu) <= k``: a predicate plus a bounded enumerator."""

    def __init__(self, psi: PartitionFunction, k):
        self.psi = psi
        self.k = parse_value(k)
        self.n = psi.n
        self.max_blocks = psi.max_blocks

    def __call__(self, p: Partition) -> bool:
        if self.max_blocks is not None and len(p) > self.max_blocks:
            return False
        return self.psi(p) <= self.k

    def __contains__(self, p) -> bool:
        return self(canonical(p))

    def members(self, cap: int | None = None) -> list:
        return [p for p in enumerate_partitions(self.n, self.max_blocks, cap) if self(p)]

    def __repr__(self):
        return f"LevelSet({self.psi.descriptor} <= {format_value(self.k)})"


def level_set(psi: PartitionFunction, k) -> LevelSet:
    return LevelSet(psi, k)


# -- tables -------------------------------------------------------------------


def parse_subset_key(key: str, n: int) -> int:
    key = key.strip()
    if key.startswith("["):
        items = json.loads(key)
    else:
        items = [int(t) for t in key.replace(" ", "").split(",") if t != ""]
    mask = 0
    for i in items:
        if not 0 <= int(i) < n:
            raise ValueError(f"element {i} outside ground set of size {n}")
        mask |= 1 << int(i)
    return mask


def parse_partition_key(key: str, n: int) -> Partition:
    key = key.strip()
    if key.startswith("["):
        return make_partition(json.loads(key), n)
    return make_partition([[int(t) for t in part.split(",") if t.strip()] for part in key.split("|")], n)


def partition_key_str(p: Partition) -> str:
    return "|".join(",".join(map(str, elements(b))) for b in p)


def partition_function_from_table(n: int, table: dict, default=None, descriptor: str = "table") -> PartitionFunction:
    """Partition function from ``{partition-key: value}``; keys like ``"0,1|2"`` or ``"[[0,1],[2]]"``."""
    values = {parse_partition_key(k, n): parse_value(v) for k, v in table.items()}
    fallback = None if default is None else parse_value(default)

    def value(p: Partition):
        if p in values:
            return values[p]
        if fallback is None:
            raise KeyError(f"no value for partition {family_to_json(p)}")
        return fallback

    if fallback is None:
        missing = [p for p in all_partitions(n) if p not in values]
        if missing:
            raise ValueError(f"table misses {len(missing)} partitions, e.g. {family_to_json(missing[0])}")
    return PartitionFunction(n, value, descriptor)


def connectivity_from_table(n: int, table: dict, descriptor: str = "table") -> ConnectivityFunction:
    """Connectivity function from ``{subset-key: value}``; complements are filled in, then verified."""
    full = full_mask(n)
    values: dict = {}
    for k, v in table.items():
        a = parse_subset_key(k, n)
        v = parse_value(v)
        for x in (a, full & ~a):
            if x in values and values[x] != v:
                raise ValueError(f"asymmetric table at {list(elements(x))}")
            values[x] = v
    missing = [a for a in range(full + 1) if a not in values]
    if missing:
        raise ValueError(f"table misses subset {list(elements(missing[0]))} and its complement")
    return ConnectivityFunction(n, values.__getitem__, descriptor)
