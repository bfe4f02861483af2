from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx
from networkx.utils import UnionFind

from class_check.membership import is_separating
from class_check.reports import ClassName, ClassReport, Violation, ViolationKind
from graph_core.Cycle import Cycle
from graph_core.exceptions import InternalInvariantBroken, NotInClassH, PreconditionViolated
from graph_core.Graph import Graph
from graph_core.operations import components
from h_structure.BasicStructure import (
    BasicStructure,
    BCGraph,
    Connector,
    ConnectorCollection,
    CycleType,
    Role,
    TwoChord,
)


def _local_violation(graph: Graph) -> Optional[Violation]:
    if graph.order() == 0:
        return Violation(kind=ViolationKind.Disconnected, detail="empty graph")
    parts = components(graph)
    if len(parts) > 1:
        return Violation(kind=ViolationKind.Disconnected, vertices=[min(part) for part in parts])
    for vertex, degree in sorted(graph.degrees().items()):
        if degree < 2:
            return Violation(kind=ViolationKind.MinDegree, vertices=[vertex], detail=f"degree {degree} < 2")
        if degree > 3:
            return Violation(kind=ViolationKind.MaxDegree, vertices=[vertex], detail=f"degree {degree} > 3")
    parallel = graph.parallel_classes()
    if parallel:
        first = parallel[0]
        return Violation(kind=ViolationKind.ParallelEdges, vertices=list(graph.endpoints(first[0])), edges=first)

    degrees = graph.degrees()
    for edge_id in graph.edge_ids():
        u, v = graph.endpoints(edge_id)
        if degrees[u] == 2 and degrees[v] == 2:
            return Violation(kind=ViolationKind.DegreeTwoNotStable, vertices=[u, v], edges=[edge_id])
    for vertex in graph.sorted_vertices():
        if degrees[vertex] != 3:
            continue
        light = [neighbor for neighbor in graph.neighbors(vertex) if degrees[neighbor] == 2]
        if len(light) != 1:
            return Violation(
                kind=ViolationKind.DegreeTwoNeighbours,
                vertices=[vertex, *light],
                detail=f"{len(light)} neighbours of degree 2",
            )
    return None


def _oriented_cycle(graph: Graph, part: Iterable[int]) -> Cycle:
    """Walk a 2-regular component from its smallest vertex towards its smaller neighbour."""
    members = set(part)
    start = min(members)
    vertices = [start]
    edges: List[int] = []
    previous, current = None, start
    while True:
        steps = sorted(
            (graph.other_end(edge_id, current), edge_id)
            for edge_id in graph.incident(current)
            if graph.other_end(edge_id, current) in members and graph.other_end(edge_id, current) != previous
        )
        following, edge_id = steps[0]
        edges.append(edge_id)
        if following == start:
            break
        vertices.append(following)
        previous, current = current, following
    return Cycle(tuple(vertices), tuple(edges))


def _basic_cycles(graph: Graph) -> Dict[int, Cycle]:
    light = [vertex for vertex, degree in graph.degrees().items() if degree == 2]
    core = graph.without_vertices(light)
    return {min(part): _oriented_cycle(core, part) for part in components(core)}


def _roles(graph: Graph, cycles: Dict[int, Cycle]) -> Dict[int, Role]:
    cycle_of = {vertex: cycle_id for cycle_id, cycle in cycles.items() for vertex in cycle.vertices}
    roles: Dict[int, Role] = {}
    for vertex, degree in graph.degrees().items():
        if degree != 2:
            continue
        x, y = graph.neighbors(vertex)
        if cycle_of[x] == cycle_of[y]:
            roles[vertex] = TwoChord(vertex, (x, y), cycle_of[x])
        else:
            if cycle_of[x] > cycle_of[y]:
                x, y = y, x
            roles[vertex] = Connector(vertex, (x, y), (cycle_of[x], cycle_of[y]))
    return roles


def in_H(graph: Graph) -> ClassReport:
    """Membership in class H.

    Once the local conditions hold every cycle other than a basic cycle goes
    through a degree-2 vertex, and a basic cycle carrying a 2-chord cuts off
    that chord, so only chordless basic cycles need the separation test.
    """
    violation = _local_violation(graph)
    if violation is not None:
        return ClassReport.reject(ClassName.class_H, violation)

    cycles = _basic_cycles(graph)
    roles = _roles(graph, cycles)
    with_chord = {role.cycle for role in roles.values() if isinstance(role, TwoChord)}
    for cycle_id, cycle in cycles.items():
        if cycle_id in with_chord:
            continue
        if not is_separating(graph, cycle).separating:
            return ClassReport.reject(
                ClassName.class_H,
                Violation(
                    kind=ViolationKind.NonSeparatingCycle,
                    vertices=list(cycle.vertices),
                    edges=list(cycle.edges),
                    detail=f"basic cycle {cycle_id} is not separating",
                ),
            )
    return ClassReport.accept(ClassName.class_H)


def analyze(graph: Graph) -> BasicStructure:
    """Basic cycles, 2-chords and connectors of a graph of class H.

    Raises:
        NotInClassH: The graph is not in H; the message names the violated condition.
        InternalInvariantBroken: A counting or cut-vertex property of H failed.
    """
    report = in_H(graph)
    if not report.member:
        violation = report.violation
        assert violation is not None
        raise NotInClassH(f"Not in class H: {violation.kind.value} at {violation.vertices} {violation.detail}".rstrip())

    cycles = _basic_cycles(graph)
    structure = BasicStructure(cycles, _roles(graph, cycles))
    heavy = len(structure.cycle_of)
    if heavy != 2 * len(structure.roles) or heavy + len(structure.roles) != graph.order():
        raise InternalInvariantBroken(f"|V3| = {heavy} but |V2| = {len(structure.roles)}", graph=graph.as_dict())
    check_type1_cut_vertices(graph, structure)
    return structure


def bc_graph(structure: BasicStructure) -> BCGraph:
    realisers: Dict[Tuple[int, int], List[int]] = {}
    for connector in structure.connectors():
        realisers.setdefault(connector.cycles, []).append(connector.inner)
    return BCGraph(
        tuple(structure.cycle_ids()),
        tuple(sorted(realisers)),
        {pair: tuple(members) for pair, members in sorted(realisers.items())},
    )


def underlying_bc_graph(structure: BasicStructure, collection: ConnectorCollection) -> Graph:
    """Spanning subgraph of the BC-graph induced by ``collection``.

    Nodes are basic-cycle ids; each edge id is the smallest connector of the
    collection realising it.

    Raises:
        NotAConnector: A member of the collection is not a connector.
    """
    edges: Dict[int, Tuple[int, int]] = {}
    seen = set()
    for vertex in collection.connectors:
        pair = structure.connector(vertex).cycles
        if pair not in seen:
            seen.add(pair)
            edges[vertex] = pair
    return Graph(structure.cycle_ids(), edges)


def cycle_type(structure: BasicStructure, cycle_id: int) -> CycleType:
    if cycle_id not in structure.basic_cycles:
        raise PreconditionViolated(f"{cycle_id} is not a basic cycle id.")
    return structure.cycle_type(cycle_id)


def check_type1_cut_vertices(graph: Graph, structure: BasicStructure) -> None:
    """A chordless basic cycle is a cut vertex of the BC-graph."""
    if len(structure.basic_cycles) < 2:
        return
    cut = set(nx.articulation_points(bc_graph(structure).to_networkx()))
    for cycle_id in structure.cycle_ids():
        if structure.cycle_type(cycle_id) == CycleType.Type1 and cycle_id not in cut:
            raise InternalInvariantBroken(
                f"Basic cycle {cycle_id} has no 2-chord but is not a cut vertex of the BC-graph.",
                graph=graph.as_dict(),
            )


def spanning_collection(
    structure: BasicStructure, collection: Optional[ConnectorCollection] = None
) -> ConnectorCollection:
    """Extend ``collection`` to a simple collection realising a spanning tree of the BC-graph.

    Connectors are added in increasing id order, so every added BC-edge is
    realised by its smallest connector.

    Raises:
        PreconditionViolated: The collection is not simple or its BC-graph has a cycle.
    """
    base = collection or ConnectorCollection((), True)
    if not base.simple:
        raise PreconditionViolated(f"Connector collection {list(base.connectors)} has parallel connectors.")
    forest = UnionFind(structure.cycle_ids())
    chosen: List[int] = []
    for vertex in base.connectors:
        first, second = structure.connector(vertex).cycles
        if forest[first] == forest[second]:
            raise PreconditionViolated(
                f"The BC-graph of connectors {list(base.connectors)} has a cycle through connector {vertex}."
            )
        forest.union(first, second)
        chosen.append(vertex)
    for connector in structure.connectors():
        first, second = connector.cycles
        if forest[first] != forest[second]:
            forest.union(first, second)
            chosen.append(connector.inner)
    return ConnectorCollection.of(structure, chosen)
