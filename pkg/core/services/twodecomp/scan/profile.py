import itertools
from typing import Dict, FrozenSet, List, Optional, Tuple

import networkx as nx
from pydantic import BaseModel

from class_check.membership import minus_degree_two
from graph_core.Cycle import Cycle
from graph_core.Graph import Graph
from graph_core.operations import bridges, components, find_cycle, shortest_cycle, vertices_of_degree

# Properties every minimum counterexample has; the others are consequences used as cross-checks
MAIN_PROPERTIES = (
    "simple",
    "two_edge_connected",
    "girth_ge_5",
    "v2_pairwise_dist_ge_3",
    "g_minus_v2_connected",
    "cycle_inside_v3",
)


class PropertyVerdict(BaseModel):
    holds: bool
    vertices: List[int] = []
    edges: List[int] = []
    detail: str = ""

    @staticmethod
    def ok() -> "PropertyVerdict":
        return PropertyVerdict(holds=True)

    @staticmethod
    def fails(
        detail: str, vertices: Optional[List[int]] = None, edges: Optional[List[int]] = None
    ) -> "PropertyVerdict":
        return PropertyVerdict(holds=False, vertices=vertices or [], edges=edges or [], detail=detail)

    @staticmethod
    def cycle(detail: str, cycle: Cycle) -> "PropertyVerdict":
        return PropertyVerdict.fails(detail, list(cycle.vertices), list(cycle.edges))


class PropertyReport(BaseModel):
    simple: PropertyVerdict
    two_edge_connected: PropertyVerdict
    girth_ge_5: PropertyVerdict
    v2_pairwise_dist_ge_3: PropertyVerdict
    g_minus_v2_connected: PropertyVerdict
    cycle_inside_v3: PropertyVerdict
    triangle_free: PropertyVerdict
    v2_dist_ge_2: PropertyVerdict
    disjoint_neighborhoods_of_v2: PropertyVerdict

    def failed(self, main_only: bool = True) -> List[str]:
        names = MAIN_PROPERTIES if main_only else tuple(self.__fields__)
        return [name for name in names if not getattr(self, name).holds]


def _simple(graph: Graph) -> PropertyVerdict:
    parallel = graph.parallel_classes()
    if not parallel:
        return PropertyVerdict.ok()
    return PropertyVerdict.fails("parallel edges", list(graph.endpoints(parallel[0][0])), parallel[0])


def _two_edge_connected(graph: Graph) -> PropertyVerdict:
    parts = components(graph)
    if len(parts) > 1:
        return PropertyVerdict.fails(f"{len(parts)} components", [min(part) for part in parts])
    cut = sorted(bridges(graph))
    if cut:
        return PropertyVerdict.fails("bridge", list(graph.endpoints(cut[0])), [cut[0]])
    return PropertyVerdict.ok()


def _girth_ge_5(graph: Graph) -> PropertyVerdict:
    cycle = shortest_cycle(graph)
    if cycle is not None and cycle.length < 5:
        return PropertyVerdict.cycle(f"cycle of length {cycle.length}", cycle)
    return PropertyVerdict.ok()


def _triangle_free(graph: Graph) -> PropertyVerdict:
    for centre in graph.sorted_vertices():
        for first, second in itertools.combinations(sorted(set(graph.neighbors(centre))), 2):
            if graph.is_adjacent(first, second):
                return PropertyVerdict.fails("triangle", [centre, first, second])
    return PropertyVerdict.ok()


def _close_v2_pair(graph: Graph, light: FrozenSet[int], within: int) -> Optional[Tuple[int, int, int]]:
    """Smallest pair of degree-2 vertices at distance at most ``within``, with that distance."""
    simple = graph.to_simple_networkx()
    for source in sorted(light):
        reached: Dict[int, int] = nx.single_source_shortest_path_length(simple, source, cutoff=within)
        close = sorted(target for target in reached if target in light and target > source)
        if close:
            return source, close[0], reached[close[0]]
    return None


def _v2_distance(graph: Graph, light: FrozenSet[int], at_least: int) -> PropertyVerdict:
    pair = _close_v2_pair(graph, light, at_least - 1)
    if pair is None:
        return PropertyVerdict.ok()
    first, second, length = pair
    return PropertyVerdict.fails(f"degree-2 vertices at distance {length}", [first, second])


def _disjoint_neighborhoods(graph: Graph, light: FrozenSet[int]) -> PropertyVerdict:
    for first, second in itertools.combinations(sorted(light), 2):
        common = sorted(set(graph.neighbors(first)) & set(graph.neighbors(second)))
        if common:
            return PropertyVerdict.fails("common neighbour", [first, second, common[0]])
    return PropertyVerdict.ok()


def _g_minus_v2_connected(graph: Graph) -> PropertyVerdict:
    parts = components(minus_degree_two(graph))
    if len(parts) > 1:
        return PropertyVerdict.fails(f"G - V2 has {len(parts)} components", [min(part) for part in parts])
    return PropertyVerdict.ok()


def _cycle_inside_v3(graph: Graph) -> PropertyVerdict:
    heavy = vertices_of_degree(graph, 3)
    if find_cycle(graph.induced(heavy)) is None:
        return PropertyVerdict.fails("the degree-3 vertices induce a forest", sorted(heavy))
    return PropertyVerdict.ok()


def min_counterexample_profile(graph: Graph) -> PropertyReport:
    """Which structural properties of a minimum counterexample the graph has.

    Every verdict is computed from the graph alone and carries a witness when
    it fails: the offending cycle, bridge, vertex pair or components.
    """
    light = vertices_of_degree(graph, 2)
    return PropertyReport(
        simple=_simple(graph),
        two_edge_connected=_two_edge_connected(graph),
        girth_ge_5=_girth_ge_5(graph),
        v2_pairwise_dist_ge_3=_v2_distance(graph, light, 3),
        g_minus_v2_connected=_g_minus_v2_connected(graph),
        cycle_inside_v3=_cycle_inside_v3(graph),
        triangle_free=_triangle_free(graph),
        v2_dist_ge_2=_v2_distance(graph, light, 2),
        disjoint_neighborhoods_of_v2=_disjoint_neighborhoods(graph, light),
    )
