import networkx as nx
import pytest

from weighted_trees.config import Config
from weighted_trees.polytope import enumerate_points
from weighted_trees.trees import (
    build_tree, catalan, enumerate_trees, fan_tree, leaf_sides, tree_from_json, tree_to_json,
)
from weighted_trees.utils import InputFormatError, TreeValidationError
from weighted_trees.weightings import WeightVector


@pytest.mark.parametrize("n, expected", [(3, 1), (4, 2), (5, 5), (6, 14), (7, 42), (8, 132)])
def test_enumerate_trees_count_is_catalan(n, expected):
    trees = enumerate_trees(n)
    assert len(trees) == expected == catalan(n - 2)
    assert len({t.diagonals for t in trees}) == expected


def test_enumerate_trees_sorted_by_diagonals():
    diagonals = [t.diagonals for t in enumerate_trees(5)]
    assert diagonals == sorted(diagonals)
    assert diagonals[0] == ((1, 3), (1, 4))


def test_enumerate_trees_respects_limit(monkeypatch):
    monkeypatch.setattr(Config, "MAX_LEAVES", 5)
    with pytest.raises(TreeValidationError, match="상한"):
        enumerate_trees(6)


def test_edge_layout(cat4):
    assert cat4.n_edges == 5
    assert cat4.edge_labels[:4] == ((1, 2), (2, 3), (3, 4), (1, 4))
    assert cat4.edge_labels[4] == (1, 3)
    assert cat4.trinodes == ((0, 1, 4), (4, 2, 3))
    assert list(cat4.internal_edges) == [4]


def test_every_edge_has_expected_incidence(fan6):
    for e, incident in enumerate(fan6.edge_trinodes):
        assert len(incident) == (1 if fan6.is_leaf_edge(e) else 2)


@pytest.mark.parametrize("n", [4, 5, 6, 7])
def test_search_order_covers_internal_edges(n):
    for tree in enumerate_trees(n):
        assert sorted(step.edge for step in tree.search_order) == list(tree.internal_edges)


def test_dual_graph_is_tree(fan6):
    graph = fan6.to_networkx()
    assert nx.is_tree(graph)
    assert graph.number_of_nodes() == 6 + 4
    assert sum(1 for node in graph if node[0] == "leaf") == 6


def test_resolve_edge(cat4):
    assert cat4.resolve_edge((3, 1)) == 4
    assert cat4.resolve_edge(2) == 2
    with pytest.raises(TreeValidationError):
        cat4.resolve_edge((2, 4))
    with pytest.raises(TreeValidationError):
        cat4.resolve_edge(7)


@pytest.mark.parametrize("n, diagonals, message", [
    (5, [(1, 3), (2, 4)], "교차"),
    (5, [(1, 3), (1, 3)], "중복"),
    (5, [(1, 3)], "개수"),
    (6, [(1, 2), (1, 4), (1, 5)], "퇴화"),
    (6, [(1, 6), (1, 4), (1, 5)], "퇴화"),
    (6, [(1, 7), (1, 4), (1, 5)], "범위"),
    (2, [], "3 이상"),
])
def test_build_tree_rejects_invalid(n, diagonals, message):
    with pytest.raises(TreeValidationError, match=message):
        build_tree(n, diagonals)


def test_build_tree_error_names_offending_pair():
    with pytest.raises(TreeValidationError) as excinfo:
        build_tree(6, [(1, 3), (2, 5), (1, 5)])
    assert "[2, 5]" in str(excinfo.value)


def test_build_tree_normalizes_pairs():
    tree = build_tree(5, [(4, 1), (3, 1)])
    assert tree.diagonals == ((1, 3), (1, 4))
    assert tree == fan_tree(5)


def test_leaf_sides():
    assert leaf_sides(build_tree(4, [(1, 3)]), (1, 3)) == ((1, 2), (3, 4))
    assert leaf_sides(fan_tree(6), (1, 4)) == ((1, 2, 3), (4, 5, 6))
    assert leaf_sides(build_tree(6, [(2, 4), (2, 5), (2, 6)]), (2, 5)) == ((2, 3, 4), (5, 6, 1))


def test_leaf_sides_rejects_leaf_edge(cat4):
    with pytest.raises(TreeValidationError):
        leaf_sides(cat4, (1, 2))


def test_tree_json():
    tree = fan_tree(6)
    data = tree_to_json(tree)
    assert data == {"n": 6, "diagonals": [[1, 3], [1, 4], [1, 5]]}
    assert tree_from_json('{"n": 6, "diagonals": [[1, 5], [1, 3], [1, 4]]}') == tree


@pytest.mark.parametrize("payload", [
    '{"diagonals": []}',
    '{"n": 4}',
    '{"n": 4, "diagonals": 3}',
    '[1, 2]',
    '{"n": 4,',
    '{"n": "--4", "diagonals": []}',
    '{"n": "²", "diagonals": []}',
])
def test_tree_from_json_format_errors(payload):
    with pytest.raises(InputFormatError):
        tree_from_json(payload)


def test_tree_from_json_names_bad_integer_field():
    with pytest.raises(InputFormatError, match="'n'"):
        tree_from_json('{"n": "--4", "diagonals": []}')


@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_leaf_sides_match_graph_cut(n):
    for tree in enumerate_trees(n):
        graph = tree.to_networkx()
        for e in tree.internal_edges:
            cut = graph.copy()
            u, v = next((u, v) for u, v, data in graph.edges(data=True) if data["edge"] == e)
            cut.remove_edge(u, v)
            components = {
                frozenset(i for kind, i in component if kind == "leaf")
                for component in nx.connected_components(cut)
            }
            assert components == {frozenset(side) for side in leaf_sides(tree, e)}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_internal_edge_parity_matches_leaf_side(n):
    r = WeightVector((1,) * (n - 1) + (2 - (n - 1) % 2,))
    for tree in enumerate_trees(n):
        for k in range(4):
            for omega in enumerate_points(tree, r, k):
                for e in tree.internal_edges:
                    side, _ = leaf_sides(tree, e)
                    leaf_sum = sum(omega.values[i - 1] for i in side)
                    assert omega.values[e] % 2 == leaf_sum % 2
