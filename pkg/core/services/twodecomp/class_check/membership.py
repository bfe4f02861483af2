import itertools
from typing import Iterable, List, Optional

import networkx as nx

from class_check.reports import ClassName, ClassReport, SeparationVerdict, Violation, ViolationKind
from graph_core.Cycle import Cycle
from graph_core.cycles import DEFAULT_CYCLE_CAP, cycles_by_length
from graph_core.exceptions import NotACycle
from graph_core.Graph import Graph
from graph_core.operations import components, vertices_of_degree


def check_cycle(graph: Graph, cycle: Cycle) -> None:
    """Raise NotACycle unless ``cycle`` is a cycle of ``graph``."""
    if cycle.length < 2 or len(cycle.vertices) != cycle.length:
        raise NotACycle(f"A cycle needs as many vertices as edges and at least 2 of them: {cycle}")
    if len(cycle.vertex_set) != cycle.length or len(cycle.edge_set) != cycle.length:
        raise NotACycle(f"Vertices and edges of a cycle must be pairwise distinct: {cycle}")
    for index, edge_id in enumerate(cycle.edges):
        if not graph.has_edge_id(edge_id):
            raise NotACycle(f"Edge {edge_id} is not in the graph.")
        ends = {cycle.vertices[index], cycle.vertices[(index + 1) % cycle.length]}
        if set(graph.endpoints(edge_id)) != ends:
            raise NotACycle(f"Edge {edge_id} does not join {sorted(ends)}.")


def is_separating(graph: Graph, cycle: Cycle) -> SeparationVerdict:
    check_cycle(graph, cycle)
    parts = components(graph.without_edges(cycle.edges))
    return SeparationVerdict(
        cycle_vertices=list(cycle.vertices),
        cycle_edges=list(cycle.edges),
        separating=len(parts) > 1,
        components=[sorted(part) for part in parts],
    )


def _first_non_separating(graph: Graph, candidates: Iterable[Cycle]) -> Optional[Cycle]:
    for cycle in candidates:
        if not is_separating(graph, cycle).separating:
            return cycle
    return None


def _degree_and_connectivity(graph: Graph, min_degree: int, max_degree: int) -> Optional[Violation]:
    parts = components(graph)
    if len(parts) > 1:
        return Violation(
            kind=ViolationKind.Disconnected,
            vertices=[min(part) for part in parts],
            detail=f"{len(parts)} components",
        )
    for vertex in graph.sorted_vertices():
        degree = graph.degree(vertex)
        if degree < min_degree:
            return Violation(kind=ViolationKind.MinDegree, vertices=[vertex], detail=f"degree {degree} < {min_degree}")
        if degree > max_degree:
            return Violation(kind=ViolationKind.MaxDegree, vertices=[vertex], detail=f"degree {degree} > {max_degree}")
    return None


def _non_separating_violation(cycle: Cycle) -> Violation:
    return Violation(
        kind=ViolationKind.NonSeparatingCycle,
        vertices=list(cycle.vertices),
        edges=list(cycle.edges),
        detail=f"deleting this {cycle.length}-cycle leaves the graph connected",
    )


def in_S(graph: Graph, min_degree: int, max_degree: int, cap: int = DEFAULT_CYCLE_CAP) -> ClassReport:
    """Connected, degrees within bounds, every cycle separating.

    Deleting the edges of a cycle through a degree-2 vertex isolates that
    vertex, so only the cycles of the subgraph induced by the vertices of
    degree at least 3 need an explicit test. They are tried shortest first and
    the first non-separating one is returned as witness.

    Raises:
        BudgetExceeded: The cycle enumeration exceeded ``cap``.
    """
    parameters = {"p": min_degree, "q": max_degree}
    violation = _degree_and_connectivity(graph, min_degree, max_degree)
    if violation is not None:
        return ClassReport.reject(ClassName.S_pq, violation, **parameters)

    heavy = [vertex for vertex, degree in graph.degrees().items() if degree >= 3]
    witness = _first_non_separating(graph, cycles_by_length(graph.induced(heavy), cap))
    if witness is not None:
        return ClassReport.reject(ClassName.S_pq, _non_separating_violation(witness), **parameters)
    return ClassReport.accept(ClassName.S_pq, **parameters)


def in_S_exhaustive(graph: Graph, min_degree: int, max_degree: int, cap: int = DEFAULT_CYCLE_CAP) -> ClassReport:
    """Same verdict as ``in_S`` but deletes the edges of every cycle of the graph."""
    parameters = {"p": min_degree, "q": max_degree}
    violation = _degree_and_connectivity(graph, min_degree, max_degree)
    if violation is not None:
        return ClassReport.reject(ClassName.S_pq, violation, **parameters)
    witness = _first_non_separating(graph, cycles_by_length(graph, cap))
    if witness is not None:
        return ClassReport.reject(ClassName.S_pq, _non_separating_violation(witness), **parameters)
    return ClassReport.accept(ClassName.S_pq, **parameters)


def is_thick_cacti_collection(graph: Graph) -> ClassReport:
    """Every block is a cycle or a bridge and every vertex lies in a cycle block.

    Blocks come from the simple underlying graph; a block is a cycle exactly
    when it has as many edges (counted with multiplicity) as vertices, which
    also turns a doubled bridge into a two-edge cycle.
    """
    on_cycle = set()
    for block in nx.biconnected_component_edges(graph.to_simple_networkx()):
        block_vertices = {end for pair in block for end in pair}
        block_edges = sorted(edge_id for u, v in block for edge_id in graph.edges_between(u, v))
        if len(block_edges) > len(block_vertices):
            return ClassReport.reject(
                ClassName.thick_cacti,
                Violation(
                    kind=ViolationKind.EdgeOnTwoCycles,
                    vertices=sorted(block_vertices),
                    edges=block_edges,
                    detail=f"edge {block_edges[0]} lies on two cycles of this block",
                ),
            )
        if len(block_edges) == len(block_vertices):
            on_cycle.update(block_vertices)

    for vertex in graph.sorted_vertices():
        if vertex not in on_cycle:
            return ClassReport.reject(
                ClassName.thick_cacti,
                Violation(kind=ViolationKind.VertexOnNoCycle, vertices=[vertex], detail="vertex lies on no cycle"),
            )
    return ClassReport.accept(ClassName.thick_cacti)


def find_claw(graph: Graph) -> Optional[List[int]]:
    """Centre followed by three pairwise non-adjacent neighbours, or None."""
    for centre in graph.sorted_vertices():
        for leaves in itertools.combinations(graph.neighbors(centre), 3):
            if not any(graph.is_adjacent(a, b) for a, b in itertools.combinations(leaves, 2)):
                return [centre, *leaves]
    return None


def is_claw_free(graph: Graph) -> ClassReport:
    claw = find_claw(graph)
    if claw is None:
        return ClassReport.accept(ClassName.claw_free)
    return ClassReport.reject(
        ClassName.claw_free, Violation(kind=ViolationKind.Claw, vertices=claw, detail="induced K_{1,3}")
    )


def minus_degree_two(graph: Graph) -> Graph:
    """G - V2(G)."""
    return graph.without_vertices(vertices_of_degree(graph, 2))
