# pylint: disable=redefined-outer-name
import pathlib
import sys
from typing import List

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# import local library
sys.path.append(str(pathlib.Path(__file__).absolute().parent.parent))

from class_check.membership import in_S, is_claw_free, is_thick_cacti_collection, minus_degree_two
from decompose.class_h import decompose_H
from decompose.completion import complete_forest, prune_leaves
from decompose.Decomposer import ClassHDecomposer, Decomposer
from decompose.pipelines import decompose_auto, decompose_claw_free, decompose_thick_cacti
from decompose.ReductionTrace import ReductionStep, StepKind
from decompose.TwoDecomposition import DecompositionMode, Side, TwoDecomposition
from decompose.verification import Check, verify_decomposition
from generators.enumeration import enumerate_connected_subcubic
from graph_core import fixtures
from graph_core.exceptions import CannotComplete, InternalInvariantBroken, PreconditionViolated
from graph_core.Graph import Graph
from h_structure.analysis import analyze
from oracle.brute_force import brute_force


@pytest.fixture
def sk4() -> Graph:
    return fixtures.subdivided_k4()


@pytest.fixture
def pentagon() -> Graph:
    return fixtures.cycle_graph(5)


def kinds(trace_steps: list) -> list:
    return [step.kind for step in trace_steps]


def test_two_decomposition_model(sk4: Graph) -> None:
    decomposition = TwoDecomposition(forest_edges=[3, 1, 2], matching_edges=[0], mode=DecompositionMode.Forest)
    assert decomposition.forest_edges == [1, 2, 3], "Edge lists are kept sorted."
    assert decomposition.sides() == {0: Side.Matching, 1: Side.Forest, 2: Side.Forest, 3: Side.Forest}
    with pytest.raises(ValueError):
        TwoDecomposition(forest_edges=[0, 1], matching_edges=[1], mode=DecompositionMode.Forest)

    decomposition = TwoDecomposition(
        forest_edges=[1, 2, 3, 4, 6], matching_edges=[0, 5, 7], mode=DecompositionMode.SpanningTree
    )
    assert decomposition.full_vertices(sk4) == [], "The matching covers every vertex of SK4."
    pairs = decomposition.as_pairs(sk4)
    assert pairs["matching"] == [[0, 1], [2, 4], [3, 5]], "Matching rendered as endpoint pairs."
    assert pairs["matching_edge_ids"] == [0, 5, 7], "Edge ids are kept next to the pairs."


def test_reduction_step_lift() -> None:
    step = ReductionStep(
        kind=StepKind.ClawFreeStep,
        parent=None,
        phi_before=11,
        parent_edges=[0, 1, 2, 3],
        forced={0: Side.Forest},
        copied={1: [10, 11]},
        inverted={2: 10},
    )
    child = {10: Side.Forest, 11: Side.Matching, 3: Side.Forest}
    assert step.lift(child) == {0: Side.Forest, 1: Side.Matching, 2: Side.Matching, 3: Side.Forest}

    with pytest.raises(InternalInvariantBroken):
        step.lift({10: Side.Forest, 11: Side.Forest})

    step.required_forest = [11]
    with pytest.raises(InternalInvariantBroken):
        step.lift(child)


def test_decompose_H_single_cycle(sk4: Graph) -> None:
    decomposition, trace = decompose_H(sk4)
    assert decomposition.matching_edges == [0, 5, 7], "Base case matches a1a2, u a3 and v a4."
    assert decomposition.forest_edges == [1, 2, 3, 4, 6], "Every other edge is in the forest."
    assert decomposition.mode == DecompositionMode.Forest
    assert kinds(trace.steps) == [StepKind.SingleCycleBase], "SK4 is a base case."

    report = verify_decomposition(sk4, decomposition, analyze(sk4))
    assert report.valid, f"Verification failed: {report.failures}"
    assert brute_force(sk4, DecompositionMode.Forest).decomposable, "Oracle agrees."


def test_decompose_H_chord_case() -> None:
    graph = fixtures.chorded_cycle_pair(1)
    decomposition, trace = decompose_H(graph, [10])
    assert kinds(trace.steps) == [StepKind.LeafCycleChordCase, StepKind.SingleCycleBase]
    assert trace.steps[1].parent == 0, "The base case lifts into the leaf step."
    assert decomposition.matching_edges == [0, 9, 13, 15, 16, 18], "Unexpected matching."
    assert 10 in decomposition.full_vertices(graph), "The connector ends up full."

    report = verify_decomposition(graph, decomposition, analyze(graph), [10])
    assert report.valid, f"Verification failed: {report.failures}"
    assert Check.OneMatchingEdgePerBasicCycle in report.checked
    assert trace.phi_decreases(), "|V| + |E| decreases along the recursion."
    assert trace.replay(DecompositionMode.Forest) == decomposition, "Replaying the trace gives the same result."


def test_decompose_H_merge_case() -> None:
    graph = fixtures.chorded_cycle_pair(3)
    decomposition, trace = decompose_H(graph, [11])
    assert kinds(trace.steps) == [StepKind.LeafCycleMergeCase, StepKind.SingleCycleBase]
    assert trace.steps[0].detail["x2"] == 0 and trace.steps[0].detail["x3"] == 4, "Walk goes 1, 0, 4."
    assert decomposition.matching_edges == [4, 6, 11, 14, 16, 18], "Unexpected matching."
    assert 11 in decomposition.full_vertices(graph), "The chosen connector ends up full."

    report = verify_decomposition(graph, decomposition, analyze(graph), [11])
    assert report.valid, f"Verification failed: {report.failures}"
    assert trace.replay(DecompositionMode.Forest) == decomposition


def test_decompose_H_default_collection() -> None:
    for graph in (fixtures.chorded_cycle_pair(3), fixtures.chorded_cycle_star(3), fixtures.chorded_cycle_star(4)):
        decomposition, trace = decompose_H(graph)
        report = verify_decomposition(graph, decomposition, analyze(graph))
        assert report.valid, f"Verification failed on {graph}: {report.failures}"
        assert trace.phi_decreases(), "|V| + |E| decreases along the recursion."
        assert trace.replay(DecompositionMode.Forest) == decomposition


def test_decompose_H_preconditions() -> None:
    with pytest.raises(PreconditionViolated):
        decompose_H(fixtures.complete_graph(4))
    with pytest.raises(PreconditionViolated):
        # parallel connectors
        decompose_H(fixtures.chorded_cycle_pair(3), [10, 11])
    with pytest.raises(PreconditionViolated):
        # 11 is a 2-chord
        decompose_H(fixtures.chorded_cycle_pair(1), [11])


def test_complete_forest(pentagon: Graph, sk4: Graph) -> None:
    split = TwoDecomposition(forest_edges=[0, 1, 3], matching_edges=[2, 4], mode=DecompositionMode.Forest)
    completed = complete_forest(pentagon, split)
    assert completed.mode == DecompositionMode.SpanningTree
    assert completed.forest_edges == [0, 1, 2, 3], "Only edge 2 is moved into the tree."
    assert completed.matching_edges == [4]

    decomposition, _ = decompose_H(sk4)
    assert complete_forest(sk4, decomposition).forest_edges == decomposition.forest_edges, "Already spanning."

    with pytest.raises(CannotComplete):
        complete_forest(
            pentagon, TwoDecomposition(forest_edges=[0, 1, 2, 3, 4], matching_edges=[], mode=DecompositionMode.Forest)
        )
    with pytest.raises(CannotComplete):
        two_edges = fixtures.disjoint_union([fixtures.path_graph(2), fixtures.path_graph(2)])
        complete_forest(
            two_edges, TwoDecomposition(forest_edges=[0, 1], matching_edges=[], mode=DecompositionMode.Forest)
        )


def test_prune_leaves(pentagon: Graph) -> None:
    pruned, trace = prune_leaves(fixtures.path_graph(3))
    assert pruned.order() == 1 and pruned.size() == 0, "A path prunes down to a single vertex."
    assert trace.steps[0].detail["pruned_edges"] == [0, 1], "Both edges are recorded."

    with_pendant = Graph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    pruned, trace = prune_leaves(with_pendant)
    assert pruned == pentagon, "The pendant vertex is removed."
    assert trace.steps[0].lift({edge_id: Side.Forest for edge_id in range(5)})[5] == Side.Forest

    pruned, trace = prune_leaves(pentagon)
    assert pruned == pentagon and not trace.steps, "Nothing to prune on a cycle."


def test_verify_decomposition(pentagon: Graph, sk4: Graph) -> None:
    good = TwoDecomposition(forest_edges=[1, 2, 3, 4], matching_edges=[0], mode=DecompositionMode.SpanningTree)
    assert verify_decomposition(pentagon, good).valid, "A path plus one edge decomposes C5."

    adjacent = TwoDecomposition(forest_edges=[2, 3, 4], matching_edges=[0, 1], mode=DecompositionMode.Forest)
    report = verify_decomposition(pentagon, adjacent)
    assert not report.valid and report.failures[0].check == Check.Matching
    assert report.failures[0].vertices == [1], "Edges 0 and 1 share vertex 1."

    cyclic = TwoDecomposition(forest_edges=[0, 1, 2, 3, 4], matching_edges=[], mode=DecompositionMode.Forest)
    report = verify_decomposition(pentagon, cyclic)
    assert [failure.check for failure in report.failures] == [Check.Acyclic]
    assert sorted(report.failures[0].vertices) == [0, 1, 2, 3, 4], "The whole cycle is the witness."

    missing = TwoDecomposition(forest_edges=[1, 2], matching_edges=[0], mode=DecompositionMode.Forest)
    assert verify_decomposition(pentagon, missing).failures[0].check == Check.Partition

    no_cycle_edge = TwoDecomposition(
        forest_edges=[0, 1, 2, 3, 5, 7], matching_edges=[4, 6], mode=DecompositionMode.Forest
    )
    report = verify_decomposition(sk4, no_cycle_edge, analyze(sk4))
    assert Check.OneMatchingEdgePerBasicCycle in [failure.check for failure in report.failures]


def test_thick_cacti_cycle(pentagon: Graph) -> None:
    decomposition, trace = decompose_thick_cacti(pentagon)
    assert decomposition.matching_edges == [0] and decomposition.forest_edges == [1, 2, 3, 4]
    assert decomposition.mode == DecompositionMode.SpanningTree
    assert kinds(trace.steps) == [StepKind.PlainCycleBase]


def test_thick_cacti_sk4(sk4: Graph) -> None:
    decomposition, trace = decompose_thick_cacti(sk4)
    assert decomposition.matching_edges == [0, 5, 7], "SK4 is already in H with an empty collection."
    assert kinds(trace.steps) == [
        StepKind.ForestCompletion,
        StepKind.PathContraction,
        StepKind.BridgeSubdivision,
        StepKind.SingleCycleBase,
    ]
    assert trace.step(0).forced == {}, "The forest of SK4 already spans."


def test_thick_cacti_contraction_and_bridge() -> None:
    graph = fixtures.bridged_triangles()
    decomposition, trace = decompose_thick_cacti(graph)
    assert decomposition.matching_edges == [0, 5, 9, 10], "Unexpected matching."
    assert decomposition.forest_edges == [1, 2, 3, 4, 6, 7, 8, 11], "Unexpected spanning tree."
    assert kinds(trace.steps) == [
        StepKind.ForestCompletion,
        StepKind.PathContraction,
        StepKind.BridgeSubdivision,
        StepKind.LeafCycleChordCase,
        StepKind.SingleCycleBase,
    ]
    assert trace.step(1).detail["runs"] == [[6, 7]], "The run 6-7 is shortened to 6."
    assert trace.step(1).copied == {9: [12]}, "Edge 7-2 follows the new edge 6-2."
    assert trace.step(2).detail["collection"] == [9], "The bridge 0-3 is subdivided by vertex 9."
    assert trace.phi_decreases()
    assert trace.replay(DecompositionMode.SpanningTree) == decomposition
    assert verify_decomposition(graph, decomposition).valid


def test_thick_cacti_digon() -> None:
    # triangles 0-1-2 and 3-4-5 with 2-chords through 8 and 9, joined through the digon 6-7
    graph = Graph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 6), (6, 7), (6, 7), (7, 3), (1, 8), (8, 2), (4, 9), (9, 5)]
    )
    decomposition, trace = decompose_thick_cacti(graph)
    assert trace.steps[0].kind == StepKind.ParallelEdgeReduction
    assert 8 in decomposition.matching_edges and 7 in decomposition.forest_edges, "e goes to the tree, e' is matched."
    assert verify_decomposition(graph, decomposition).valid
    assert trace.replay(DecompositionMode.SpanningTree) == decomposition


def test_thick_cacti_preconditions() -> None:
    with pytest.raises(PreconditionViolated):
        decompose_thick_cacti(fixtures.complete_graph(4))
    with pytest.raises(PreconditionViolated):
        # min degree 1
        decompose_thick_cacti(fixtures.path_graph(3))


def test_claw_free_cycle() -> None:
    decomposition, trace = decompose_claw_free(fixtures.cycle_graph(6))
    assert decomposition.matching_edges == [0] and decomposition.forest_edges == [1, 2, 3, 4, 5]
    assert kinds(trace.steps) == [StepKind.PlainCycleBase]


def test_claw_free_step() -> None:
    graph = Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (0, 3), (2, 4), (4, 3)])
    decomposition, trace = decompose_claw_free(graph)
    assert kinds(trace.steps) == [StepKind.ClawFreeStep, StepKind.PlainCycleBase]
    assert trace.steps[0].detail == {"v": 0, "x": 1, "y": 2, "z": 3}
    assert decomposition.matching_edges == [0, 4], "vx is matched because yz stays in the tree."
    assert decomposition.forest_edges == [1, 2, 3, 5]
    assert trace.phi_decreases()
    assert trace.replay(DecompositionMode.SpanningTree) == decomposition


def test_claw_free_cut_edge_and_diamond() -> None:
    decomposition, trace = decompose_claw_free(fixtures.paw())
    assert kinds(trace.steps) == [StepKind.CutEdgeSplit, StepKind.PlainCycleBase, StepKind.SmallCaseBase]
    assert decomposition.matching_edges == [0] and decomposition.forest_edges == [1, 2, 3]
    assert trace.replay(DecompositionMode.SpanningTree) == decomposition

    diamond = fixtures.diamond()
    decomposition, trace = decompose_claw_free(diamond)
    assert kinds(trace.steps) == [StepKind.SmallCaseBase], "The diamond has no reducible vertex."
    assert verify_decomposition(diamond, decomposition).valid


def test_claw_free_preconditions() -> None:
    with pytest.raises(PreconditionViolated):
        decompose_claw_free(fixtures.complete_graph(4))
    with pytest.raises(PreconditionViolated):
        decompose_claw_free(fixtures.claw())


def test_auto() -> None:
    decomposition, trace = decompose_auto(fixtures.path_graph(3))
    assert decomposition.forest_edges == [0, 1] and decomposition.matching_edges == []
    assert kinds(trace.steps) == [StepKind.LeafPrune]

    with_pendant = Graph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    decomposition, trace = decompose_auto(with_pendant)
    assert kinds(trace.steps) == [StepKind.LeafPrune, StepKind.PlainCycleBase]
    assert trace.steps[1].parent == 0, "The cycle lifts through the prune step."
    assert decomposition.matching_edges == [0] and decomposition.forest_edges == [1, 2, 3, 4, 5]

    decomposition, trace = decompose_auto(fixtures.subdivided_k4())
    assert decomposition.matching_edges == [0, 5, 7], "SK4 has a claw, so it goes through class H."

    k23 = fixtures.complete_bipartite(2, 3)
    decomposition, trace = decompose_auto(k23)
    assert kinds(trace.steps) == [StepKind.SmallCaseBase], "K_{2,3} falls back to the oracle."
    assert verify_decomposition(k23, decomposition).valid

    decomposition, trace = decompose_auto(Graph.from_edge_list([], isolated=[0]))
    assert decomposition.forest_edges == [] and not trace.steps, "A single vertex needs no step."

    with pytest.raises(PreconditionViolated):
        decompose_auto(fixtures.complete_graph(4))


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=3, max_value=12), st.integers(min_value=0, max_value=4))
def test_auto_cycle_with_tail(length: int, tail: int) -> None:
    pairs = [(i, (i + 1) % length) for i in range(length)]
    pairs += [(length + i - 1 if i else 0, length + i) for i in range(tail)]
    graph = Graph.from_edge_list(pairs)
    decomposition, trace = decompose_auto(graph)
    assert verify_decomposition(graph, decomposition).valid, "Output is a spanning tree plus a matching."
    assert len(decomposition.matching_edges) == 1, "One edge of the cycle is matched."
    assert trace.phi_decreases()
    assert trace.replay(DecompositionMode.SpanningTree) == decomposition


def test_decomposer_registry(sk4: Graph) -> None:
    assert set(Decomposer.possible_algorithms()) == {"thick-cacti", "claw-free", "h", "auto"}
    assert Decomposer.get("h") is ClassHDecomposer
    with pytest.raises(PreconditionViolated):
        Decomposer.get("greedy")

    assert Decomposer.get("thick-cacti").accepts(sk4), "SK4 satisfies the thick-cacti hypothesis."
    assert not Decomposer.get("claw-free").accepts(sk4), "SK4 has a claw."
    decomposition, _ = ClassHDecomposer.decompose(sk4, complete=True)
    assert decomposition.mode == DecompositionMode.SpanningTree, "Completion switches to a spanning tree."


@pytest.fixture(scope="module")
def s13_corpus() -> List[Graph]:
    """Members of S_1,3 among the connected subcubic graphs on at most 9 vertices."""
    return [graph for graph in enumerate_connected_subcubic(9) if in_S(graph, 1, 3).member]


def test_claw_free_corpus(s13_corpus: List[Graph]) -> None:
    claw_free = [graph for graph in s13_corpus if is_claw_free(graph).member]
    assert claw_free, "The corpus has claw-free members."
    for graph in claw_free:
        decomposition, trace = decompose_claw_free(graph)
        report = verify_decomposition(graph, decomposition)
        assert report.valid, f"{graph}: {report.failures}"
        assert decomposition.mode == DecompositionMode.SpanningTree
        assert trace.phi_decreases(), f"phi does not decrease on {graph}"
        assert brute_force(graph, DecompositionMode.SpanningTree).decomposable, f"Oracle disagrees on {graph}"


def test_thick_cacti_corpus(s13_corpus: List[Graph]) -> None:
    thick_cacti = [
        graph
        for graph in s13_corpus
        if in_S(graph, 2, 3).member and is_thick_cacti_collection(minus_degree_two(graph)).member
    ]
    assert thick_cacti, "The corpus has thick-cacti members of S_2,3."
    for graph in thick_cacti:
        decomposition, trace = decompose_thick_cacti(graph)
        assert verify_decomposition(graph, decomposition).valid, f"Invalid decomposition of {graph}"
        assert trace.phi_decreases(), f"phi does not decrease on {graph}"


def test_auto_corpus(s13_corpus: List[Graph]) -> None:
    for graph in s13_corpus:
        decomposition, trace = decompose_auto(graph)
        assert verify_decomposition(graph, decomposition).valid, f"Invalid decomposition of {graph}"
        assert trace.phi_decreases(), f"phi does not decrease on {graph}"
