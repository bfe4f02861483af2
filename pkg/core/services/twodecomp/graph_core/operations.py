import math
from typing import Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Union

import networkx as nx

from graph_core.Cycle import Cycle, PathSeq
from graph_core.exceptions import EmptySet, UnknownEdge, UnknownVertex
from graph_core.Graph import EdgePair, Graph

Distance = Union[int, float]
VertexMap = Dict[int, int]
EdgeLineage = Dict[int, int]


class Shrink(NamedTuple):
    graph: Graph
    vertex_map: VertexMap
    vertex: int


class Subdivision(NamedTuple):
    graph: Graph
    lineage: EdgeLineage
    vertex: int
    # original endpoint -> the new edge incident to it
    half_at: Dict[int, int]


def degree_partition(graph: Graph) -> Dict[int, FrozenSet[int]]:
    """V_k for every degree k that occurs, keys in increasing order."""
    partition: Dict[int, set] = {}
    for vertex, degree in graph.degrees().items():
        partition.setdefault(degree, set()).add(vertex)
    return {degree: frozenset(partition[degree]) for degree in sorted(partition)}


def vertices_of_degree(graph: Graph, degree: int) -> FrozenSet[int]:
    return frozenset(vertex for vertex, value in graph.degrees().items() if value == degree)


def components(graph: Graph) -> List[FrozenSet[int]]:
    """Connected components sorted by their smallest vertex."""
    parts = [frozenset(part) for part in nx.connected_components(graph.to_networkx())]
    return sorted(parts, key=min)


def is_connected(graph: Graph) -> bool:
    # The empty graph and a single vertex are connected.
    return len(components(graph)) <= 1


def bridges(graph: Graph) -> FrozenSet[int]:
    """Edge ids whose removal disconnects their component; parallel edges never are."""
    found = set()
    for u, v in nx.bridges(graph.to_simple_networkx()):
        parallel = graph.edges_between(u, v)
        if len(parallel) == 1:
            found.add(parallel[0])
    return frozenset(found)


def cut_vertices(graph: Graph) -> FrozenSet[int]:
    return frozenset(nx.articulation_points(graph.to_simple_networkx()))


def shrink(graph: Graph, merged: Iterable[int]) -> Shrink:
    """Identify ``merged`` into one fresh vertex, dropping the edges inside it.

    Parallel edges created by the identification are kept and every
    surviving edge keeps its id.

    Raises:
        EmptySet: Nothing to identify.
        UnknownVertex: A vertex of ``merged`` is not in the graph.
    """
    merged_set = frozenset(merged)
    if not merged_set:
        raise EmptySet("Cannot shrink an empty vertex set.")
    for vertex in merged_set:
        if not graph.has_vertex(vertex):
            raise UnknownVertex(f"Vertex {vertex} does not exist.")

    new_vertex = graph.next_vertex_id
    vertex_map: VertexMap = {vertex: (new_vertex if vertex in merged_set else vertex) for vertex in graph.vertices}
    edges: Dict[int, EdgePair] = {}
    for edge_id, (u, v) in graph.edges.items():
        if u in merged_set and v in merged_set:
            continue
        edges[edge_id] = (vertex_map[u], vertex_map[v])
    vertices = (graph.vertices - merged_set) | {new_vertex}
    result = Graph(vertices, edges, graph.next_vertex_id + 1, graph.next_edge_id)
    return Shrink(result, vertex_map, new_vertex)


def subdivide(graph: Graph, edge_id: int) -> Subdivision:
    """Replace ``edge_id`` by a path of length two through a fresh vertex.

    Raises:
        UnknownEdge: ``edge_id`` is not in the graph.
    """
    if not graph.has_edge_id(edge_id):
        raise UnknownEdge(f"Edge {edge_id} does not exist.")
    u, v = graph.endpoints(edge_id)
    middle = graph.next_vertex_id
    first, second = graph.next_edge_id, graph.next_edge_id + 1
    edges = {key: pair for key, pair in graph.edges.items() if key != edge_id}
    edges[first] = (u, middle)
    edges[second] = (middle, v)
    result = Graph(graph.vertices | {middle}, edges, middle + 1, second + 1)
    return Subdivision(result, {first: edge_id, second: edge_id}, middle, {u: first, v: second})


def _check_vertex(graph: Graph, vertex: int) -> None:
    if not graph.has_vertex(vertex):
        raise UnknownVertex(f"Vertex {vertex} does not exist.")


def distance(graph: Graph, source: int, target: int) -> Distance:
    """BFS distance, ``math.inf`` when unreachable."""
    _check_vertex(graph, source)
    _check_vertex(graph, target)
    try:
        return int(nx.shortest_path_length(graph.to_networkx(), source, target))
    except nx.NetworkXNoPath:
        return math.inf


def _walk_edges(graph: Graph, walk: List[int], excluded: Optional[int] = None) -> List[int]:
    edges = []
    for u, v in zip(walk, walk[1:]):
        candidates = [edge_id for edge_id in graph.edges_between(u, v) if edge_id != excluded]
        edges.append(min(candidates))
    return edges


def shortest_path(graph: Graph, source: int, target: int) -> Optional[PathSeq]:
    _check_vertex(graph, source)
    _check_vertex(graph, target)
    try:
        walk = nx.shortest_path(graph.to_networkx(), source, target)
    except nx.NetworkXNoPath:
        return None
    return PathSeq(tuple(walk), tuple(_walk_edges(graph, walk)))


def shortest_cycle(graph: Graph) -> Optional[Cycle]:
    """A cycle of minimum length, searched edge by edge; ties go to the smallest edge id."""
    multigraph = graph.to_networkx()
    best: Optional[Cycle] = None
    for edge_id in graph.edge_ids():
        u, v = graph.endpoints(edge_id)
        view = nx.restricted_view(multigraph, [], [(u, v, edge_id)])
        try:
            walk = nx.shortest_path(view, u, v)
        except nx.NetworkXNoPath:
            continue
        if best is not None and len(walk) >= best.length:
            continue
        best = Cycle(tuple(walk), tuple(_walk_edges(graph, walk, excluded=edge_id) + [edge_id]))
        if best.length == 2:
            break
    return best


def girth(graph: Graph) -> Distance:
    """Length of a shortest cycle (2 with a parallel pair), ``math.inf`` for forests."""
    cycle = shortest_cycle(graph)
    return math.inf if cycle is None else cycle.length


def find_cycle(graph: Graph) -> Optional[Cycle]:
    """Any cycle of the graph, ``None`` when it is a forest."""
    if graph.size() == 0:
        return None
    try:
        found = nx.find_cycle(graph.to_networkx())
    except nx.NetworkXNoCycle:
        return None
    return Cycle(tuple(edge[0] for edge in found), tuple(edge[2] for edge in found))


def is_forest(graph: Graph) -> bool:
    return find_cycle(graph) is None


def is_spanning_tree(graph: Graph) -> bool:
    return graph.size() == max(graph.order() - 1, 0) and is_connected(graph) and is_forest(graph)
