# pylint: disable=redefined-outer-name
import pathlib
import sys
from typing import List

import pytest

# import local library
sys.path.append(str(pathlib.Path(__file__).absolute().parent.parent))

from decompose.TwoDecomposition import DecompositionMode
from generators.enumeration import enumerate_connected_subcubic
from graph_core import fixtures
from graph_core.Graph import Graph
from graph_core.operations import subdivide
from scan.conjecture import ScanOptions, ScanRecord, conjecture_scan, scan_graph
from scan.profile import MAIN_PROPERTIES, min_counterexample_profile


@pytest.fixture
def small_corpus() -> List[Graph]:
    return list(enumerate_connected_subcubic(6))


def test_profile_square() -> None:
    profile = min_counterexample_profile(fixtures.cycle_graph(4))
    assert not profile.girth_ge_5.holds, "C4 has girth 4."
    assert sorted(profile.girth_ge_5.vertices) == [0, 1, 2, 3], "The witness is the square itself."
    assert profile.simple.holds and profile.two_edge_connected.holds and profile.triangle_free.holds
    assert not profile.v2_dist_ge_2.holds, "Every vertex of C4 has degree 2."
    assert profile.g_minus_v2_connected.holds, "Removing V2 leaves the empty graph."
    assert not profile.cycle_inside_v3.holds


def test_profile_k23() -> None:
    profile = min_counterexample_profile(fixtures.complete_bipartite(2, 3))
    assert not profile.v2_pairwise_dist_ge_3.holds, "The degree-2 vertices are pairwise at distance 2."
    assert profile.v2_pairwise_dist_ge_3.vertices == [2, 3]
    assert profile.v2_dist_ge_2.holds, "V2 is stable."
    assert profile.disjoint_neighborhoods_of_v2.vertices == [2, 3, 0], "2 and 3 share neighbour 0."
    assert not profile.g_minus_v2_connected.holds and profile.g_minus_v2_connected.vertices == [0, 1]


@pytest.mark.parametrize("graph", [fixtures.petersen(), subdivide(fixtures.petersen(), 0).graph])
def test_profile_flags_nothing(graph: Graph) -> None:
    profile = min_counterexample_profile(graph)
    assert profile.failed() == [], f"Unexpected failures {profile.failed()}."
    assert profile.failed(main_only=False) == []


def test_profile_bridge() -> None:
    profile = min_counterexample_profile(fixtures.bridged_triangles())
    assert not profile.two_edge_connected.holds
    assert profile.two_edge_connected.edges == [6], "Edge 6 is the bridge 0-3."
    assert not profile.girth_ge_5.holds and not profile.triangle_free.holds


def test_profile_implications(small_corpus: List[Graph]) -> None:
    for graph in small_corpus:
        profile = min_counterexample_profile(graph)
        if profile.girth_ge_5.holds:
            assert profile.triangle_free.holds, f"girth >= 5 without triangle-freeness on {graph}"
        if profile.v2_pairwise_dist_ge_3.holds:
            assert profile.v2_dist_ge_2.holds and profile.disjoint_neighborhoods_of_v2.holds, f"{graph}"
        assert set(profile.failed()) <= set(MAIN_PROPERTIES)


def test_scan_pentagon() -> None:
    summary = conjecture_scan([fixtures.cycle_graph(5)])
    assert (summary.graphs, summary.members_s13, summary.decomposable) == (1, 1, 1), "C5 is a decomposable member."
    assert summary.counterexamples == [] and summary.constructive_failures == []
    assert summary.min_phi == 10 and summary.rho_histogram == {-10: 1}


def test_scan_k4() -> None:
    summary = conjecture_scan([fixtures.complete_graph(4)])
    assert summary.graphs == 1 and summary.members_s13 == 0, "Triangles of K4 are not separating."


def test_scan_records_budget() -> None:
    options = ScanOptions(max_edges=3, constructive=False)
    record = scan_graph((0, fixtures.cycle_graph(5)), options)
    assert record.s13 and record.budget_exceeded and record.decomposable is None
    assert not record.is_counterexample(), "Budget overruns are not counterexamples."
    summary = conjecture_scan([fixtures.cycle_graph(5)], options=options)
    assert summary.budget_exceeded == 1 and summary.decomposable == 0


def test_scan_counts() -> None:
    record = scan_graph((3, fixtures.cycle_graph(5)), ScanOptions(count=True))
    assert record.ordinal == 3 and record.graph == "Dhc", "C5 in graph6."
    assert record.matchings == 5, "One matching edge per spanning path of C5."
    assert record.constructive_verified is True and record.constructive_error is None


def test_scan_small_corpus(small_corpus: List[Graph]) -> None:
    records: List[ScanRecord] = []
    summary = conjecture_scan(small_corpus, sink=records.append)
    assert summary.graphs == len(small_corpus)
    assert [record.ordinal for record in records] == list(range(len(small_corpus))), "Input order is kept."
    assert summary.members_s13 > 0
    assert summary.counterexamples == [], "Every member of S_1,3 up to 6 vertices is decomposable."
    assert summary.constructive_failures == [], "decompose_auto agrees with the oracle."
    assert summary.members_s23 <= summary.members_s13

    forest = conjecture_scan(small_corpus, mode=DecompositionMode.Forest)
    assert forest.decomposable == summary.decomposable, "On connected graphs forests complete to trees."


def test_scan_parallel_matches_serial() -> None:
    corpus = list(enumerate_connected_subcubic(5))
    serial: List[ScanRecord] = []
    parallel: List[ScanRecord] = []
    conjecture_scan(corpus, sink=serial.append)
    conjecture_scan(corpus, jobs=2, sink=parallel.append)
    assert [record.json() for record in serial] == [record.json() for record in parallel], "Same records, same order."


def test_scan_up_to_eight_vertices() -> None:
    summary = conjecture_scan(enumerate_connected_subcubic(8), jobs=2)
    assert summary.members_s13 > 0 and summary.decomposable == summary.members_s13, "Every member is decomposable."
    assert summary.budget_exceeded == 0, "Graphs on 8 vertices fit the oracle budget."
    assert summary.counterexamples == [], "No counterexample on at most 8 vertices."
    assert summary.constructive_failures == [], "decompose_auto succeeds on every member."
