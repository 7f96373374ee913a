import json
import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F, atlas_graphs
from oracles import gf2_rank_by_span
from widthdual.core import all_partitions, block, full_mask
from widthdual.engine import parse_graph
from widthdual.functions import (
    INF,
    ConnectivityFunction,
    Graph,
    PartitionFunction,
    border,
    connectivity_from_table,
    cut_rank_f,
    format_value,
    gf2_rank,
    level_set,
    max_f,
    parse_partition_key,
    parse_value,
    partition_function_from_table,
    partition_key_str,
    restrict_arity,
    verify_connectivity,
    vertex_boundary_f,
)

PATH2 = Graph(3, ((0, 1), (1, 2)))
TRIANGLE = Graph(3, ((0, 1), (1, 2), (0, 2)))
C4 = Graph(4, ((0, 1), (1, 2), (2, 3), (0, 3)))


def test_border_examples():
    psi = border(PATH2)
    assert psi(F([0], [1])) == 1
    assert psi(F([0, 1])) == 0
    assert border(TRIANGLE)(F([0], [1], [2])) == 3


def test_isolated_vertices_are_ignored():
    g = Graph(5, ((0, 1), (1, 2)))
    assert border(g)(F([0], [1])) == 1
    assert vertex_boundary_f(g)(block([0])) == 1


def test_vertex_boundary_examples():
    f = vertex_boundary_f(TRIANGLE)
    assert f(block([0])) == 2
    assert f(0) == 0 and f(0b111) == 0
    assert vertex_boundary_f(PATH2)(block([0])) == 1


def test_cut_rank_examples():
    f = cut_rank_f(C4)
    assert f(block([0, 2])) == 1
    assert f(0) == 0
    assert cut_rank_f(TRIANGLE)(block([0])) == 1


def test_verify_connectivity_examples():
    assert verify_connectivity(vertex_boundary_f(TRIANGLE))
    report = verify_connectivity(ConnectivityFunction(3, lambda a: bin(a).count("1"), verify=False))
    assert not report
    assert report.counterexample["axiom"] == "symmetric"
    assert report.counterexample["A"] == 0
    assert verify_connectivity(ConnectivityFunction(3, lambda a: 0))
    with pytest.raises(ValueError):
        ConnectivityFunction(3, lambda a: bin(a).count("1"))


def test_non_submodular_symmetric_function_is_caught():
    # symmetric, but f({0}) + f({1}) < f({0,1}) + f({})
    values = {0: 0, 0b111: 0, 0b001: 0, 0b110: 0, 0b010: 0, 0b101: 0, 0b011: 5, 0b100: 5}
    report = verify_connectivity(ConnectivityFunction(3, values.__getitem__, verify=False))
    assert not report and report.counterexample["axiom"] == "submodular"


def test_concrete_functions_are_connectivity_functions():
    for g in atlas_graphs(max_edges=5):
        assert verify_connectivity(vertex_boundary_f(g))
    for g in atlas_graphs(max_vertices=5, connected=False):
        if g.n >= 2:
            assert verify_connectivity(cut_rank_f(g))


def test_max_f_examples():
    assert max_f(vertex_boundary_f(TRIANGLE))(F([0], [1], [2])) == 2
    assert max_f(vertex_boundary_f(TRIANGLE))(F([0, 1, 2])) == 0
    assert max_f(vertex_boundary_f(PATH2))(F([0], [1])) == 1


def test_restrict_arity():
    psi = restrict_arity(max_f(vertex_boundary_f(C4)), 3)
    assert psi(F([0], [1], [2], [3])) == INF
    assert psi(F([0], [1], [2, 3])) == 2
    assert psi.max_blocks == 3


def test_level_set_examples():
    ls = level_set(border(PATH2), 1)
    assert F([0], [1]) in ls
    assert set(level_set(border(C4), INF).members()) == set(all_partitions(4))
    assert level_set(border(C4), -1).members() == []
    ls = level_set(restrict_arity(border(C4), 2), 10)
    assert all(len(p) <= 2 for p in ls.members())


@given(st.lists(st.integers(0, 63), max_size=7))
@settings(max_examples=300, deadline=None)
def test_gf2_rank_matches_span_size(rows):
    assert gf2_rank(rows) == gf2_rank_by_span(rows)


def test_values_parse_and_format():
    assert parse_value("3/6") == Fraction(1, 2)
    assert parse_value("4/2") == 2 and isinstance(parse_value("4/2"), int)
    assert parse_value("inf") == INF and parse_value(math.inf) == INF
    assert parse_value(0.5) == Fraction(1, 2)
    for bad in (True, float("nan"), -math.inf, [1]):
        with pytest.raises(ValueError):
            parse_value(bad)
    assert format_value(INF) == "inf" and format_value(Fraction(1, 3)) == "1/3"
    assert INF > 10 ** 30 and Fraction(7, 2) < INF


def test_partition_keys():
    assert parse_partition_key("0,1|2", 3) == F([0, 1], [2])
    assert parse_partition_key("[[2], [0, 1]]", 3) == F([0, 1], [2])
    assert partition_key_str(F([0, 1], [2])) == "0,1|2"
    with pytest.raises(ValueError):
        parse_partition_key("0|1", 3)


def test_partition_function_from_table():
    psi = partition_function_from_table(3, {"0|1|2": 2, "0,1|2": "1/2"}, default="inf")
    assert psi(F([0], [1], [2])) == 2
    assert psi(F([0, 1], [2])) == Fraction(1, 2)
    assert psi(F([0, 2], [1])) == INF
    with pytest.raises(ValueError):
        partition_function_from_table(3, {"0|1|2": 2})


def test_connectivity_from_table_completes_and_verifies():
    table = {"": 0, "0": 1, "1": 1, "2": 1}
    f = connectivity_from_table(3, table)
    assert f(block([1, 2])) == 1 and f(0b111) == 0
    with pytest.raises(ValueError):
        connectivity_from_table(2, {"": 0, "0": 1, "0,1": 2})
    with pytest.raises(ValueError):
        connectivity_from_table(3, {"": 0, "0": 1})
    with pytest.raises(ValueError):
        connectivity_from_table(3, {"": 0, "0": 0, "1": 0, "2": 0, "[0, 1]": 0, "0,1,2": 3})


def test_border_value_round_trips_json_table():
    psi = border(C4)
    table = {partition_key_str(p): psi(p) for p in all_partitions(4)}
    again = partition_function_from_table(4, json.loads(json.dumps(table)))
    assert all(again(p) == psi(p) for p in all_partitions(4))


def proof_step_facts(f, n):
    """For A, B with A^c & B^c nonempty and F minimising f between A\\B and (B\\A)^c:
    f(A) >= f(A u F), and f(X) >= f(X \\ F) for every X disjoint from A."""
    full = full_mask(n)
    for a, b in product(range(full + 1), repeat=2):
        if not full & ~a & ~b:
            continue
        lo, hi = a & ~b, full & ~(b & ~a)
        free = hi & ~lo
        choices = [lo | s for s in range(free + 1) if s & ~free == 0]
        best = min(f(x) for x in choices)
        for fset in (x for x in choices if f(x) == best):
            assert f(a) >= f(a | fset)
            rest = full & ~a
            for x in range(1, full + 1):
                if x & ~rest == 0:
                    assert f(x) >= f(x & ~fset)


@pytest.mark.parametrize("text", ["0 1\n1 2\n2 0\n", "0 1\n1 2\n2 3\n", "0 1\n0 2\n0 3\n1 2\n"])
def test_minimiser_inequalities_for_vertex_boundary(text):
    g = parse_graph(text)
    proof_step_facts(vertex_boundary_f(g), g.m)


@pytest.mark.parametrize("text", ["0 1\n1 2\n2 3\n3 0\n", "0 1\n0 2\n0 3\n1 2\n"])
def test_minimiser_inequalities_for_cut_rank(text):
    g = parse_graph(text)
    proof_step_facts(cut_rank_f(g), g.n)


def test_graph_helpers():
    assert C4.is_connected() and not Graph(4, ((0, 1), (2, 3))).is_connected()
    assert Graph(4, ((0, 1), (0, 2), (0, 3))).is_star_forest()
    assert not C4.is_star_forest()
    assert C4.to_text().splitlines()[0] == "p 4 4"
    with pytest.raises(ValueError):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(ValueError):
        Graph(2, ((0, 2),))


def test_partition_function_memoises_on_canonical_form():
    calls = []
    psi = PartitionFunction(3, lambda p: calls.append(p) or len(p))
    assert psi((block([2]), block([0, 1]))) == 2
    assert psi(F([0, 1], [2])) == 2
    assert len(calls) == 1
