"""Partial partitioning trees and the merge closure of a partition set."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable, Iterator, NamedTuple, Union

from . import config
from .core import (
    Partition,
    PointedPartition,
    canonical,
    elements,
    family_to_json,
    full_mask,
    make_family,
    merge,
    partition_key,
    pointed,
)

PartitionSet = Union[Collection, Callable[[Partition], bool]]


class PartitioningTree:
    """A tree whose leaves carry the blocks of a partition (the displayed partition).

    Internal nodes have degree at least three.  Besides proper trees, the
    single edge (two leaves) and the single leaf labelled with the whole
    ground set are accepted; neither has an internal node.
    """

    def __init__(self, edges: Iterable, leaves: dict):
        adj: dict = {}
        for u, v in edges:
            if u == v:
                raise ValueError(f"tree edge {u}-{v} is a loop")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        for node in leaves:
            adj.setdefault(node, set())
        self.adj = {u: tuple(sorted(ns)) for u, ns in adj.items()}
        self.leaves = {u: int(m) for u, m in leaves.items()}
        self._validate()

    def _validate(self):
        nodes = list(self.adj)
        n_edges = sum(len(ns) for ns in self.adj.values()) // 2
        if not nodes:
            raise ValueError("empty tree")
        if n_edges != len(nodes) - 1:
            raise ValueError("tree must be connected and acyclic")
        seen = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            u = stack.pop()
            for w in self.adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(nodes):
            raise ValueError("tree is disconnected")
        for u, ns in self.adj.items():
            if u in self.leaves:
                if len(ns) > 1:
                    raise ValueError(f"labelled node {u} is not a leaf")
            elif len(ns) < 3:
                raise ValueError(f"internal node {u} has degree {len(ns)} < 3")
        cover = 0
        for m in self.leaves.values():
            if m == 0 or cover & m:
                raise ValueError("leaf labels must be nonempty and pairwise disjoint")
            cover |= m
        self.full = cover

    @classmethod
    def star(cls, blocks: Iterable[int]) -> "PartitioningTree":
        blocks = canonical(blocks)
        if len(blocks) == 1:
            return cls([], {0: blocks[0]})
        if len(blocks) == 2:
            return cls([(0, 1)], {0: blocks[0], 1: blocks[1]})
        return cls([(0, i + 1) for i in range(len(blocks))], {i + 1: b for i, b in enumerate(blocks)})

    @property
    def internal_nodes(self) -> list:
        return sorted(u for u in self.adj if u not in self.leaves)

    def leaf_with(self, blk: int):
        for u, m in self.leaves.items():
            if m == blk:
                return u
        raise KeyError(f"no leaf labelled {list(elements(blk))}")

    def side(self, u, v) -> int:
        """Union of leaf labels in the component of ``T - u`` containing ``v``."""
        total = 0
        stack = [(v, u)]
        while stack:
            x, parent = stack.pop()
            total |= self.leaves.get(x, 0)
            for w in self.adj[x]:
                if w != parent:
                    stack.append((w, x))
        return total

    def node_partition(self, v) -> Partition:
        return canonical(self.side(v, w) for w in self.adj[v])

    def node_partitions(self) -> list:
        internal = self.internal_nodes
        if not internal:
            raise ValueError("tree has no internal node")
        return [self.node_partition(v) for v in internal]

    def displayed_partition(self) -> Partition:
        return canonical(self.leaves.values())

    def edges(self) -> list:
        return sorted((u, v) for u, ns in self.adj.items() for v in ns if u < v)

    def relabeled(self, offset: int) -> "PartitioningTree":
        return PartitioningTree(
            [(u + offset, v + offset) for u, v in self.edges()],
            {u + offset: m for u, m in self.leaves.items()},
        )

    def to_json(self) -> dict:
        return {
            "edges": [list(e) for e in self.edges()],
            "leaves": {str(u): list(elements(m)) for u, m in sorted(self.leaves.items())},
        }

    @classmethod
    def from_json(cls, data) -> "PartitioningTree":
        if isinstance(data, str):
            data = json.loads(data)
        leaves = {int(u): make_family([b])[0] for u, b in data["leaves"].items()}
        return cls([tuple(e) for e in data["edges"]], leaves)

    def to_dot(self, labels: Iterable | None = None) -> str:
        names = list(labels) if labels is not None else None

        def show(mask):
            items = elements(mask)
            return ",".join(str(names[i]) if names else str(i) for i in items)

        lines = ["graph T {"]
        for u in sorted(self.adj):
            if u in self.leaves:
                lines.append(f'  n{u} [shape=box, label="{{{show(self.leaves[u])}}}"];')
            else:
                lines.append(f'  n{u} [shape=point];')
        for u, v in self.edges():
            lines.append(f"  n{u} -- n{v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, PartitioningTree):
            return NotImplemented
        return self.adj == other.adj and self.leaves == other.leaves

    def __repr__(self):
        return f"PartitioningTree(edges={self.edges()}, leaves={self.to_json()['leaves']})"


def displayed_partition(tree: PartitioningTree) -> Partition:
    return tree.displayed_partition()


def node_partitions(tree: PartitioningTree) -> list:
    return tree.node_partitions()


def _member(p: PartitionSet) -> Callable[[Partition], bool]:
    if callable(p) and not isinstance(p, (set, frozenset, dict, list, tuple)):
        return p
    return lambda mu: mu in p


def is_compatible(tree: PartitioningTree, partitions: PartitionSet) -> bool:
    """Every node-partition of ``tree`` belongs to ``partitions`` (set or predicate)."""
    contains = _member(partitions)
    return all(contains(tree.node_partition(v)) for v in tree.internal_nodes)


def merge_trees(first: PartitioningTree, a: int, second: PartitioningTree) -> PartitioningTree:
    """Glue ``first`` (leaf ``a``) to ``second`` (leaf ``a^c``) through those leaves."""
    if first.full != second.full:
        raise ValueError("trees display partitions of different ground sets")
    ac = first.full & ~a
    try:
        u = first.leaf_with(a)
        u2 = second.leaf_with(ac)
    except KeyError:
        raise ValueError("pointed leaves are not complementary") from None
    if not first.adj[u] or not second.adj[u2]:
        raise ValueError("single-leaf trees cannot be merged")
    offset = max(first.adj) + 1
    second = second.relabeled(offset)
    u2 += offset
    (nu,) = first.adj[u]
    (nu2,) = second.adj[u2]
    edges = [e for e in first.edges() if u not in e] + [e for e in second.edges() if u2 not in e]
    edges.append((nu, nu2))
    leaves = {x: m for x, m in first.leaves.items() if x != u}
    leaves.update((x, m) for x, m in second.leaves.items() if x != u2)
    return _compact(edges, leaves)


def _compact(edges, leaves) -> PartitioningTree:
    nodes = sorted({x for e in edges for x in e} | set(leaves))
    ren = {x: i for i, x in enumerate(nodes)}
    return PartitioningTree([(ren[a], ren[b]) for a, b in edges], {ren[x]: m for x, m in leaves.items()})


# -- closure ------------------------------------------------------------------


class Derivation(NamedTuple):
    first: PointedPartition
    second: PointedPartition


class Decomposition(NamedTuple):
    """``(gamma|C)`` from the axioms and the residual ``(C^c|mu|A)`` of the closure."""

    decomposer: PointedPartition
    residual: PointedPartition
    identity: bool = False


@dataclass
class ClosureTable:
    """Members of the merge closure, each with one recorded derivation."""

    n: int
    axioms: frozenset
    derivation: dict = field(default_factory=dict)

    def __contains__(self, p) -> bool:
        return p in self.derivation

    def __len__(self) -> int:
        return len(self.derivation)

    def __iter__(self) -> Iterator[Partition]:
        return iter(sorted(self.derivation, key=partition_key))

    @property
    def members(self) -> frozenset:
        return frozenset(self.derivation)

    def is_axiom(self, p: Partition) -> bool:
        return p in self.axioms

    def witness_tree(self, p: Partition) -> PartitioningTree:
        return witness_tree(p, self)

    def to_json(self) -> dict:
        out = []
        for p in self:
            d = self.derivation[p]
            entry = {"partition": family_to_json(p)}
            if d is not None:
                entry["from"] = [d.first.to_json(), d.second.to_json()]
            out.append(entry)
        return {"n": self.n, "members": out}


def closure(partitions: Iterable, n: int, cap: int | None = None) -> ClosureTable:
    """Least superset of ``partitions`` closed under merging, with derivations."""
    config.check_cap(n, config.CLOSURE_CAP if cap is None else cap, "closure")
    full = full_mask(n)
    table = ClosureTable(n=n, axioms=frozenset(canonical(p) for p in partitions))
    for p in sorted(table.axioms, key=partition_key):
        table.derivation[p] = None
    by_block: dict = {}
    for p in table.derivation:
        for b in p:
            by_block.setdefault(b, []).append(p)

    fresh = sorted(table.derivation, key=partition_key)
    while fresh:
        found: dict = {}
        fresh_set = set(fresh)
        for p in sorted(table.derivation, key=partition_key):
            for i, a in enumerate(p):
                partners = by_block.get(full & ~a, ())
                for q in sorted(partners, key=partition_key):
                    if p not in fresh_set and q not in fresh_set:
                        continue
                    first = PointedPartition(p, i)
                    second = PointedPartition(q, q.index(full & ~a))
                    m = merge(first, second)
                    if m not in table.derivation and m not in found:
                        found[m] = Derivation(first, second)
        for m, d in found.items():
            table.derivation[m] = d
            for b in m:
                by_block.setdefault(b, []).append(m)
        fresh = sorted(found, key=partition_key)
    return table


def witness_tree(p: Partition, table: ClosureTable) -> PartitioningTree:
    """A tree compatible with the axioms that displays ``p``, replayed from derivations."""
    if p not in table:
        raise KeyError(f"{family_to_json(p)} is not a closure member")
    memo: dict = {}

    def build(q: Partition) -> PartitioningTree:
        if q not in memo:
            d = table.derivation[q]
            if d is None:
                memo[q] = PartitioningTree.star(q)
            else:
                memo[q] = merge_trees(build(d.first.base), d.first.block, build(d.second.base))
        return memo[q]

    return build(p)


def decompose(pp: PointedPartition, table: ClosureTable) -> Decomposition:
    """Split a closure member ``(alpha|A)`` as ``(gamma|C)`` plus ``(C^c|mu|A)``.

    ``(gamma|C)`` is an axiom with at least three blocks.  For an axiom input the
    decomposition is the identity: ``(alpha|A)`` itself with residual ``(A^c|A)``.
    """
    p, a = pp.base, pp.block
    if p not in table:
        raise KeyError(f"{family_to_json(p)} is not a closure member")
    full = full_mask(table.n)
    if table.is_axiom(p):
        return Decomposition(pp, pointed((full & ~a, a), a), identity=True)
    tree = witness_tree(p, table)
    leaf_a = tree.leaf_with(a)
    internal = set(tree.internal_nodes)
    for v in sorted(internal):
        inner = [w for w in tree.adj[v] if w in internal]
        if len(inner) != 1 or leaf_a in tree.adj[v]:
            continue
        c = tree.side(v, inner[0])
        gamma = tuple(tree.leaves[w] for w in tree.adj[v] if w in tree.leaves)
        mu = tuple(b for b in pp.rest if b not in gamma)
        decomposer = pointed(gamma + (c,), c)
        residual = pointed(mu + (full & ~c, a), a)
        if residual.base not in table:
            raise AssertionError("residual of a decomposition left the closure")
        return Decomposition(decomposer, residual)
    raise AssertionError("witness tree has no decomposing node")
