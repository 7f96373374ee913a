"""Exact width computation and duality certificates for small graphs."""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass, field

from . import config
from .core import canonical, elements, family_to_json, full_mask, split_block
from .duality import SmallSetSystem, UpFamily, construct_big_bramble, find_big_bramble, is_big_bramble
from .functions import (
    Graph,
    LevelSet,
    border,
    cut_rank_f,
    level_set,
    max_f,
    restrict_arity,
    vertex_boundary_f,
)
from .trees import PartitioningTree, closure

log = logging.getLogger(__name__)

PARAMETERS = ("treewidth", "branchwidth", "rankwidth")


class GraphFormatError(ValueError):
    pass


def parse_graph(text: str) -> Graph:
    """Read an edge list: ``u v`` per line, ``c`` comments, optional ``p <n> <m>`` header."""
    n = m = None
    edges = []
    seen: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        tokens = line.split()
        if tokens[0] == "p":
            nums = [t for t in tokens[1:] if not t.isalpha()]
            if len(nums) != 2 or n is not None:
                raise GraphFormatError(f"line {lineno}: bad header {line!r}")
            try:
                n, m = int(nums[0]), int(nums[1])
            except ValueError:
                raise GraphFormatError(f"line {lineno}: bad header {line!r}") from None
            continue
        if tokens[0] == "e":
            tokens = tokens[1:]
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected 'u v', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer vertex in {line!r}") from None
        if u < 0 or v < 0:
            raise GraphFormatError(f"line {lineno}: negative vertex")
        if u == v:
            raise GraphFormatError(f"line {lineno}: self-loop at vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"line {lineno}: duplicate edge {u} {v} (first on line {seen[key]})")
        seen[key] = lineno
        edges.append((u, v))
    top = 1 + max((max(e) for e in edges), default=-1)
    if n is None:
        n = top
    elif top > n:
        raise GraphFormatError(f"vertex {top - 1} exceeds header vertex count {n}")
    if m is not None and m != len(edges):
        raise GraphFormatError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def graph_hash(g: Graph) -> str:
    return hashlib.sha256(g.to_text().encode()).hexdigest()


def graph_warnings(g: Graph, parameter: str) -> list:
    out = []
    if parameter == "treewidth" and g.is_star_forest():
        out.append("star-forest: the border correspondence with treewidth assumes a graph that is not a union of stars")
    if not g.is_connected():
        out.append("disconnected: widths are computed on the whole edge/vertex set as given")
    return out


def parameter_level_set(g: Graph, parameter: str, k: int) -> LevelSet:
    """Partitions allowed as node-partitions for ``parameter <= k``.

    Treewidth uses ``border <= k + 1`` on the edge set; branchwidth and
    rankwidth use ``max_f <= k`` on partitions with at most three blocks
    (cubic trees), over edges and vertices respectively.
    """
    if parameter == "treewidth":
        return level_set(border(g), k + 1)
    if parameter == "branchwidth":
        return level_set(restrict_arity(max_f(vertex_boundary_f(g)), 3), k)
    if parameter == "rankwidth":
        return level_set(restrict_arity(max_f(cut_rank_f(g)), 3), k)
    raise ValueError(f"unknown parameter {parameter!r}; choose from {', '.join(PARAMETERS)}")


def ground_size(g: Graph, parameter: str) -> int:
    n = g.n if parameter == "rankwidth" else g.m
    if n < 2:
        raise ValueError(f"{parameter} needs a ground set of at least 2 elements, got {n}")
    return n


def find_compatible_tree(pk, n: int, leaf_condition: SmallSetSystem | None = None,
                         cap: int | None = None) -> PartitioningTree | None:
    """Exhaustive search for a tree with small leaves and every node-partition in ``pk``.

    Rooted view: a block is either a small leaf or splits into at least two
    feasible blocks, with node-partition ``{co-block} + parts``.  The
    co-block is the complement of the block, so feasibility is memoised on
    the block alone.
    """
    config.check_cap(n, config.SEARCH_CAP if cap is None else cap, "tree search")
    small = SmallSetSystem.singletons(n) if leaf_condition is None else leaf_condition
    full = full_mask(n)
    max_blocks = getattr(pk, "max_blocks", None)
    max_parts = None if max_blocks is None else max_blocks - 1
    memo: dict = {}

    def feasible(x: int):
        if x in memo:
            return memo[x]
        memo[x] = None
        if small.is_small(x):
            memo[x] = "leaf"
            return "leaf"
        co = full & ~x
        if max_parts is None or max_parts >= 2:
            for parts in split_block(x, 2, max_parts):
                if not pk(canonical(parts + (co,))):
                    continue
                if all(feasible(y) is not None for y in parts):
                    memo[x] = parts
                    break
        return memo[x]

    if small.is_small(full):
        return PartitioningTree([], {0: full})
    root = None
    for x in sorted((x for x in range(1, full) if x & 1), key=elements):
        if feasible(x) is not None and feasible(full & ~x) is not None:
            root = x
            break
    if root is None:
        return None

    edges: list = []
    leaves: dict = {}
    counter = [0]

    def build(x: int) -> int:
        node = counter[0]
        counter[0] += 1
        how = memo[x]
        if how == "leaf":
            leaves[node] = x
        else:
            for y in how:
                edges.append((node, build(y)))
        return node

    left = build(root)
    right = build(full & ~root)
    edges.append((left, right))
    return PartitioningTree(edges, leaves)


def compute_width(g: Graph, parameter: str, cap: int | None = None) -> int:
    """Least ``k`` for which a compatible tree with singleton leaves exists."""
    n = ground_size(g, parameter)
    for w in graph_warnings(g, parameter):
        log.warning(w)
    for k in range(0, max(g.n, n) + 2):
        if find_compatible_tree(parameter_level_set(g, parameter, k), n, cap=cap) is not None:
            return k
    raise RuntimeError(f"no {parameter} tree found up to the trivial bound")


@dataclass
class Certificate:
    """Either a compatible tree (width <= k) or a big bramble (width > k)."""

    kind: str
    parameter: str
    k: int
    graph: str
    tree: PartitioningTree | None = None
    bramble: UpFamily | None = None
    warnings: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "parameter": self.parameter, "k": self.k, "graph": self.graph}
        if self.kind == "tree":
            out["tree"] = self.tree.to_json()
        else:
            out["bramble"] = self.bramble.to_json()
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out

    @classmethod
    def from_json(cls, data) -> "Certificate":
        if isinstance(data, str):
            data = json.loads(data)
        kind = data["kind"]
        if kind == "tree":
            return cls(kind, data["parameter"], int(data["k"]), data["graph"],
                       tree=PartitioningTree.from_json(data["tree"]), warnings=data.get("warnings", []))
        if kind == "bramble":
            return cls(kind, data["parameter"], int(data["k"]), data["graph"],
                       bramble=UpFamily.of(data["bramble"]["minimal"]), warnings=data.get("warnings", []))
        raise ValueError(f"unknown certificate kind {kind!r}")


def certify(g: Graph, parameter: str, k: int, cap: int | None = None) -> Certificate:
    """A tree certificate if the width is at most ``k``, otherwise a big bramble."""
    n = ground_size(g, parameter)
    warnings = graph_warnings(g, parameter)
    pk = parameter_level_set(g, parameter, k)
    singletons = SmallSetSystem.singletons(n)
    tree = find_compatible_tree(pk, n, singletons, cap=cap)
    if tree is not None:
        cert = Certificate("tree", parameter, k, graph_hash(g), tree=tree, warnings=warnings)
    else:
        members = pk.members(cap=cap)
        if n <= config.CLOSURE_CAP:
            pool = closure(members, n).members
        else:
            pool = members
        result = construct_big_bramble(pool, singletons, n)
        family = result.family if result is not None else None
        if family is None or not is_big_bramble(family, members, singletons):
            log.warning("greedy bramble unverified, falling back to exact search")
            family = find_big_bramble(members, singletons, n)
        if family is None:
            raise RuntimeError(f"neither a tree nor a big bramble for {parameter} <= {k}")
        cert = Certificate("bramble", parameter, k, graph_hash(g), bramble=family, warnings=warnings)
    ok, reason = verify_certificate(cert, g)
    if not ok:
        raise RuntimeError(f"emitted certificate fails verification: {reason}")
    return cert


def verify_certificate(cert: Certificate, g: Graph) -> tuple:
    """Re-derive the certificate from definitions; returns ``(ok, reason)``."""
    if cert.graph != graph_hash(g):
        return False, "graph-mismatch"
    try:
        n = ground_size(g, cert.parameter)
        pk = parameter_level_set(g, cert.parameter, cert.k)
    except ValueError as exc:
        return False, f"bad-parameter: {exc}"
    small = SmallSetSystem.singletons(n)
    full = full_mask(n)
    if cert.kind == "tree":
        tree = cert.tree
        if tree is None:
            return False, "missing-tree"
        if tree.full != full:
            return False, "wrong-ground-set"
        if not all(small.is_small(b) for b in tree.displayed_partition()):
            return False, "leaf-not-small"
        for v in tree.internal_nodes:
            if not pk(tree.node_partition(v)):
                return False, f"node-partition-exceeds: {family_to_json(tree.node_partition(v))}"
        return True, "ok"
    if cert.kind == "bramble":
        br = cert.bramble
        if br is None:
            return False, "missing-bramble"
        if any(m & ~full for m in br.minimal):
            return False, "wrong-ground-set"
        if not all(small.is_big(m) for m in br.minimal):
            return False, "small-member"
        if not br.pairwise_intersecting():
            return False, "disjoint-members"
        for p in pk.members():
            if not br.meets(p):
                return False, f"misses-partition: {family_to_json(p)}"
        return True, "ok"
    return False, f"unknown-kind: {cert.kind}"
