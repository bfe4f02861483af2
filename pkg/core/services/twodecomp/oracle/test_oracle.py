# pylint: disable=redefined-outer-name
import pathlib
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# import local library
sys.path.append(str(pathlib.Path(__file__).absolute().parent.parent))

from decompose.TwoDecomposition import DecompositionMode
from decompose.verification import verify_decomposition
from graph_core import fixtures
from graph_core.exceptions import BudgetExceeded
from graph_core.Graph import Graph
from oracle.brute_force import brute_force
from oracle.parameters import phi, rho


@st.composite
def connected_subcubic_graphs(draw: st.DrawFn, max_order: int = 8) -> Graph:
    order = draw(st.integers(min_value=1, max_value=max_order))
    degree = [0] * order
    pairs = []
    for vertex in range(1, order):
        parent = draw(st.sampled_from([other for other in range(vertex) if degree[other] < 3]))
        pairs.append((parent, vertex))
        degree[parent] += 1
        degree[vertex] += 1
    possible = [(u, v) for u in range(order) for v in range(u + 1, order) if (u, v) not in pairs]
    for u, v in draw(st.lists(st.sampled_from(possible), unique=True, max_size=4)) if possible else []:
        if degree[u] < 3 and degree[v] < 3:
            pairs.append((u, v))
            degree[u] += 1
            degree[v] += 1
    return Graph.from_edge_list(pairs, isolated=range(order))


@pytest.fixture
def pentagon() -> Graph:
    return fixtures.cycle_graph(5)


def test_parameters(pentagon: Graph) -> None:
    assert (phi(pentagon), rho(pentagon)) == (10, -10), "C5: 5 + 5 and 0 - 2 * 5."
    sk4 = fixtures.subdivided_k4()
    assert (phi(sk4), rho(sk4)) == (14, 0), "SK4: 6 + 8 and 4 - 2 * 2."
    k4 = fixtures.complete_graph(4)
    assert (phi(k4), rho(k4)) == (10, 4), "K4: 4 + 6 and 4 - 0."


def test_cycle(pentagon: Graph) -> None:
    result = brute_force(pentagon, count=True)
    assert result.decomposable and result.count == 5, "Removing any one edge of C5 leaves a spanning path."
    assert result.witness is not None
    assert result.witness.matching_edges == [4], "Forest side first: edge 4 closes the cycle."

    result = brute_force(pentagon, DecompositionMode.Forest, count=True)
    assert result.count == 10, "Every non-empty matching of C5 breaks the cycle: 5 single edges and 5 pairs."


def test_small_graphs() -> None:
    result = brute_force(fixtures.complete_bipartite(2, 3))
    assert result.decomposable, "K_{2,3} splits into a spanning tree and two matching edges."
    assert result.witness is not None and len(result.witness.matching_edges) == 2
    assert verify_decomposition(fixtures.complete_bipartite(2, 3), result.witness).valid

    single = brute_force(Graph.from_edge_list([], isolated=[0]))
    assert single.decomposable and single.witness is not None and single.witness.matching_edges == []

    assert not brute_force(fixtures.complete_graph(4)).decomposable, "K4 needs 3 matching edges on 4 vertices."
    assert not brute_force(fixtures.petersen()).decomposable, "Petersen would need a matching of 6 edges."


def test_budgets() -> None:
    with pytest.raises(BudgetExceeded):
        brute_force(fixtures.petersen(), max_edges=10)
    with pytest.raises(BudgetExceeded):
        brute_force(fixtures.petersen(), node_budget=5)


@pytest.mark.parametrize(
    "graph",
    [
        fixtures.cycle_graph(5),
        fixtures.complete_graph(4),
        fixtures.subdivided_k4(),
        fixtures.complete_bipartite(2, 3),
        fixtures.prism(),
        fixtures.paw(),
        fixtures.diamond(),
    ],
)
def test_forest_and_tree_agree(graph: Graph) -> None:
    forest = brute_force(graph, DecompositionMode.Forest)
    tree = brute_force(graph, DecompositionMode.SpanningTree)
    assert forest.decomposable == tree.decomposable, "On a connected graph a forest can always be completed."
    if tree.witness is not None:
        assert verify_decomposition(graph, tree.witness).valid, "Witness must be a valid decomposition."


@settings(max_examples=60, deadline=None)
@given(connected_subcubic_graphs())
def test_forest_and_tree_agree_on_random_graphs(graph: Graph) -> None:
    forest = brute_force(graph, DecompositionMode.Forest)
    tree = brute_force(graph, DecompositionMode.SpanningTree)
    assert forest.decomposable == tree.decomposable, f"Verdicts differ on {graph.as_dict()}."
    for result in (forest, tree):
        if result.witness is not None:
            report = verify_decomposition(graph, result.witness)
            assert report.valid, f"Invalid witness: {report.failures}"
