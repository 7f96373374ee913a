import random
from itertools import product

import pytest

from conftest import F, as_sets
from oracles import displayed_closure, naive_closure
from widthdual.core import all_partitions, block, canonical, pointed
from widthdual.engine import parse_graph
from widthdual.functions import border, level_set
from widthdual.trees import (
    PartitioningTree,
    closure,
    decompose,
    displayed_partition,
    is_compatible,
    merge_trees,
    node_partitions,
    witness_tree,
)

STAR = F([0], [1], [2, 3])
OTHER = F([0, 1], [2], [3])


def two_node_tree():
    # u=0 adjacent to leaves {0},{1}; v=1 adjacent to leaves {2},{3}
    return PartitioningTree(
        [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)],
        {2: block([0]), 3: block([1]), 4: block([2]), 5: block([3])},
    )


def test_displayed_partition():
    assert displayed_partition(PartitioningTree([(0, 1)], {0: block([0, 1]), 1: block([2])})) == F([0, 1], [2])
    assert displayed_partition(PartitioningTree.star(F([0], [1], [2]))) == F([0], [1], [2])
    assert displayed_partition(PartitioningTree([], {0: 0b111})) == F([0, 1, 2])


def test_node_partitions():
    assert node_partitions(PartitioningTree.star(STAR)) == [STAR]
    assert node_partitions(two_node_tree()) == [F([0], [1], [2, 3]), F([0, 1], [2], [3])]
    with pytest.raises(ValueError):
        node_partitions(PartitioningTree.star(F([0, 1], [2])))


def test_tree_validation():
    with pytest.raises(ValueError):
        PartitioningTree([(0, 1), (1, 2)], {0: 1, 2: 2})  # degree-2 internal node
    with pytest.raises(ValueError):
        PartitioningTree([(0, 1), (0, 2), (0, 3)], {1: 0b11, 2: 0b10, 3: 0b100})  # overlapping labels
    with pytest.raises(ValueError):
        PartitioningTree([(0, 1), (2, 3)], {0: 1, 1: 2, 2: 4, 3: 8})  # forest


def test_is_compatible():
    star = PartitioningTree.star(STAR)
    assert is_compatible(star, {STAR})
    assert not is_compatible(star, set())
    assert not is_compatible(two_node_tree(), {STAR})
    assert is_compatible(two_node_tree(), lambda p: len(p) == 3)


def test_merge_trees():
    t = merge_trees(PartitioningTree.star(STAR), block([2, 3]), PartitioningTree.star(OTHER))
    assert t.displayed_partition() == F([0], [1], [2], [3])
    assert set(t.node_partitions()) == {STAR, OTHER}


def test_merge_with_single_edge_relabels():
    edge = PartitioningTree([(0, 1)], {0: block([0, 1, 2]), 1: block([3])})
    star = PartitioningTree.star(F([3], [0], [1, 2]))
    t = merge_trees(edge, block([0, 1, 2]), star)
    assert t.displayed_partition() == star.displayed_partition()
    assert t.node_partitions() == star.node_partitions()


def test_merge_trees_rejects_mismatch():
    with pytest.raises(ValueError):
        merge_trees(PartitioningTree.star(STAR), block([2, 3]), PartitioningTree.star(F([0], [1, 2], [3])))


def test_closure_examples():
    table = closure([STAR, OTHER], 4)
    assert table.members == {STAR, OTHER, F([0], [1], [2], [3])}
    assert len(closure([], 4)) == 0
    assert closure([F([0, 1, 2, 3])], 4).members == {F([0, 1, 2, 3])}


def test_closure_matches_naive_fixpoint():
    assert as_sets_all(closure([STAR, OTHER], 4).members) == naive_closure([as_sets(STAR), as_sets(OTHER)], 4)


def as_sets_all(members):
    return {as_sets(p) for p in members}


def test_witness_tree_examples():
    table = closure([STAR, OTHER], 4)
    t = witness_tree(STAR, table)
    assert len(t.internal_nodes) == 1
    t = witness_tree(F([0], [1], [2], [3]), table)
    assert sorted(t.node_partitions()) == sorted([STAR, OTHER])
    with pytest.raises(KeyError):
        witness_tree(F([0, 1], [2, 3]), table)


def test_single_leaf_tree_displays_whole_set():
    t = PartitioningTree.star([0b1111])
    assert t.displayed_partition() == F([0, 1, 2, 3])
    assert t.internal_nodes == []
    assert is_compatible(t, set())


def check_decomposition(pp, table):
    d = decompose(pp, table)
    gamma_c, residual = d.decomposer, d.residual
    c = gamma_c.block
    assert gamma_c.base in table.axioms
    assert len(gamma_c.base) >= 3
    assert residual.block == pp.block
    assert pp.block & ~c == 0
    mu = set(residual.rest) - {table_full(table) & ~c}
    assert canonical(set(gamma_c.rest) | mu | {pp.block}) == pp.base
    assert residual.base in table
    return d


def table_full(table):
    return (1 << table.n) - 1


def test_decompose_examples():
    table = closure([STAR, OTHER], 4)
    x = pointed(F([0], [1], [2], [3]), block([3]))
    d = check_decomposition(x, table)
    assert d.decomposer.base == STAR and d.decomposer.block == block([2, 3])
    assert d.residual.base == OTHER
    d = check_decomposition(pointed(F([0], [1], [2], [3]), block([0])), table)
    assert d.decomposer.base == OTHER
    d = decompose(pointed(STAR, block([0])), table)
    assert d.identity and d.decomposer == pointed(STAR, block([0]))


def _random_axioms(n, rng, k):
    return rng.sample(list(all_partitions(n)), k)


def test_closure_equals_displayed_partitions_of_compatible_trees():
    rng = random.Random(0)
    cases = [[p for p, keep in zip(all_partitions(3), bits) if keep]
             for bits in product([0, 1], repeat=5)]
    cases += [_random_axioms(4, rng, rng.randint(0, 15)) for _ in range(150)]
    cases += [_random_axioms(5, rng, rng.randint(1, 25)) for _ in range(25)]
    for axioms in cases:
        n = (max(max(b.bit_length() for b in p) for p in axioms) if axioms else 3)
        table = closure(axioms, n)
        assert as_sets_all(table.members) == displayed_closure([as_sets(p) for p in axioms], n)


def test_closure_is_order_independent():
    rng = random.Random(1)
    for _ in range(30):
        axioms = _random_axioms(5, rng, 12)
        shuffled = axioms[:]
        rng.shuffle(shuffled)
        assert closure(axioms, 5).members == closure(shuffled, 5).members


@pytest.mark.parametrize("text, k", [
    ("0 1\n1 2\n2 3\n3 0\n0 2\n", 2),
    ("0 1\n1 2\n2 3\n3 4\n4 5\n", 2),
    ("0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n", 3),
])
def test_witness_trees_and_decompositions_on_level_sets(text, k):
    g = parse_graph(text)
    members = level_set(border(g), k).members()
    table = closure(members, g.m)
    for p in table:
        t = witness_tree(p, table)
        assert t.displayed_partition() == p
        assert is_compatible(t, table.axioms)
        if not table.is_axiom(p):
            for i in range(len(p)):
                check_decomposition(pointed(p, p[i]), table)


def test_tree_json_and_dot():
    t = two_node_tree()
    again = PartitioningTree.from_json(t.to_json())
    assert again == t
    dot = t.to_dot(labels="abcd")
    assert dot.startswith("graph T {") and '"{c}"' in dot and "n0 -- n1;" in dot
    assert t.to_json()["leaves"]["2"] == [0]
