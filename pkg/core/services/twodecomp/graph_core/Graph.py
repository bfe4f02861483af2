from types import MappingProxyType
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from graph_core.exceptions import LoopRejected, UnknownEdge, UnknownVertex

EdgePair = Tuple[int, int]


class Graph:
    """Finite loopless multigraph with stable integer vertex and edge ids.

    Values are immutable: every rewrite returns a new graph. Fresh ids handed
    out by a rewrite are larger than any id ever used by the graph it was
    derived from, so ids are never reused along a chain of rewrites and
    decompositions can be lifted back by id.
    """

    __slots__ = ("_vertices", "_edges", "_incidence", "_next_vertex", "_next_edge", "_networkx")

    def __init__(
        self,
        vertices: Iterable[int] = (),
        edges: Optional[Mapping[int, EdgePair]] = None,
        next_vertex: int = 0,
        next_edge: int = 0,
    ) -> None:
        self._vertices: FrozenSet[int] = frozenset(vertices)
        incidence: Dict[int, List[int]] = {vertex: [] for vertex in self._vertices}
        edge_map: Dict[int, EdgePair] = {}
        for edge_id, (u, v) in sorted((edges or {}).items()):
            if u == v:
                raise LoopRejected(f"Edge {edge_id} is a loop on vertex {u}.")
            for end in (u, v):
                if end not in incidence:
                    raise UnknownVertex(f"Edge {edge_id} uses vertex {end}, which is not in the graph.")
            edge_map[edge_id] = (u, v) if u < v else (v, u)
            incidence[u].append(edge_id)
            incidence[v].append(edge_id)

        self._edges: Dict[int, EdgePair] = edge_map
        self._incidence: Dict[int, Tuple[int, ...]] = {vertex: tuple(ids) for vertex, ids in incidence.items()}
        self._next_vertex = max(next_vertex, max(self._vertices, default=-1) + 1)
        self._next_edge = max(next_edge, max(edge_map, default=-1) + 1)
        self._networkx: Optional[nx.MultiGraph] = None

    @staticmethod
    def from_edge_list(pairs: Sequence[Sequence[int]], isolated: Iterable[int] = ()) -> "Graph":
        """Build a graph with edge id i for the i-th pair.

        Args:
            pairs: Endpoint pairs, parallel pairs allowed.
            isolated: Extra vertices without incident edges.

        Raises:
            LoopRejected: A pair has equal endpoints.
        """
        edges: Dict[int, EdgePair] = {}
        vertices = set(isolated)
        for edge_id, pair in enumerate(pairs):
            u, v = pair
            if u == v:
                raise LoopRejected(f"Pair {edge_id} ({u}, {v}) is a loop.")
            edges[edge_id] = (u, v)
            vertices.update((u, v))
        return Graph(vertices, edges)

    @property
    def vertices(self) -> FrozenSet[int]:
        return self._vertices

    @property
    def edges(self) -> Mapping[int, EdgePair]:
        return MappingProxyType(self._edges)

    @property
    def next_vertex_id(self) -> int:
        return self._next_vertex

    @property
    def next_edge_id(self) -> int:
        return self._next_edge

    def sorted_vertices(self) -> List[int]:
        return sorted(self._vertices)

    def edge_ids(self) -> List[int]:
        return sorted(self._edges)

    def order(self) -> int:
        return len(self._vertices)

    def size(self) -> int:
        return len(self._edges)

    def has_vertex(self, vertex: int) -> bool:
        return vertex in self._vertices

    def has_edge_id(self, edge_id: int) -> bool:
        return edge_id in self._edges

    def endpoints(self, edge_id: int) -> EdgePair:
        try:
            return self._edges[edge_id]
        except KeyError as error:
            raise UnknownEdge(f"Edge {edge_id} does not exist.") from error

    def other_end(self, edge_id: int, vertex: int) -> int:
        u, v = self.endpoints(edge_id)
        if vertex == u:
            return v
        if vertex == v:
            return u
        raise UnknownVertex(f"Vertex {vertex} is not an end of edge {edge_id}.")

    def incident(self, vertex: int) -> Tuple[int, ...]:
        try:
            return self._incidence[vertex]
        except KeyError as error:
            raise UnknownVertex(f"Vertex {vertex} does not exist.") from error

    def degree(self, vertex: int) -> int:
        return len(self.incident(vertex))

    def degrees(self) -> Dict[int, int]:
        return {vertex: len(ids) for vertex, ids in self._incidence.items()}

    def max_degree(self) -> int:
        return max((len(ids) for ids in self._incidence.values()), default=0)

    def min_degree(self) -> int:
        return min((len(ids) for ids in self._incidence.values()), default=0)

    def neighbors(self, vertex: int) -> List[int]:
        return sorted({self.other_end(edge_id, vertex) for edge_id in self.incident(vertex)})

    def edges_between(self, u: int, v: int) -> List[int]:
        return [edge_id for edge_id in self.incident(u) if self.other_end(edge_id, u) == v]

    def is_adjacent(self, u: int, v: int) -> bool:
        return bool(self.edges_between(u, v))

    def is_simple(self) -> bool:
        return len(set(self._edges.values())) == len(self._edges)

    def parallel_classes(self) -> List[List[int]]:
        """Groups of two or more edge ids sharing the same endpoints, in id order."""
        by_pair: Dict[EdgePair, List[int]] = {}
        for edge_id in self.edge_ids():
            by_pair.setdefault(self._edges[edge_id], []).append(edge_id)
        return [ids for ids in by_pair.values() if len(ids) > 1]

    def _derive(self, vertices: Iterable[int], edges: Mapping[int, EdgePair]) -> "Graph":
        return Graph(vertices, edges, self._next_vertex, self._next_edge)

    def without_vertices(self, removed: Iterable[int]) -> "Graph":
        removed_set = set(removed)
        for vertex in removed_set:
            if vertex not in self._vertices:
                raise UnknownVertex(f"Vertex {vertex} does not exist.")
        edges = {
            edge_id: pair
            for edge_id, pair in self._edges.items()
            if pair[0] not in removed_set and pair[1] not in removed_set
        }
        return self._derive(self._vertices - removed_set, edges)

    def without_edges(self, removed: Iterable[int]) -> "Graph":
        removed_set = set(removed)
        for edge_id in removed_set:
            if edge_id not in self._edges:
                raise UnknownEdge(f"Edge {edge_id} does not exist.")
        edges = {edge_id: pair for edge_id, pair in self._edges.items() if edge_id not in removed_set}
        return self._derive(self._vertices, edges)

    def spanning_subgraph(self, kept: Iterable[int]) -> "Graph":
        """All vertices, only the given edges."""
        kept_set = set(kept)
        return self.without_edges(set(self._edges) - kept_set)

    def induced(self, kept: Iterable[int]) -> "Graph":
        return self.without_vertices(self._vertices - set(kept))

    def with_vertex(self) -> Tuple["Graph", int]:
        vertex = self._next_vertex
        return self._derive(self._vertices | {vertex}, self._edges), vertex

    def with_edge(self, u: int, v: int) -> Tuple["Graph", int]:
        edge_id = self._next_edge
        edges = dict(self._edges)
        edges[edge_id] = (u, v)
        return self._derive(self._vertices, edges), edge_id

    def to_networkx(self) -> nx.MultiGraph:
        """MultiGraph view with edge keys equal to edge ids. Cached, do not mutate."""
        if self._networkx is None:
            graph = nx.MultiGraph()
            graph.add_nodes_from(self.sorted_vertices())
            for edge_id in self.edge_ids():
                u, v = self._edges[edge_id]
                graph.add_edge(u, v, key=edge_id)
            self._networkx = graph
        return self._networkx

    def to_simple_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.sorted_vertices())
        graph.add_edges_from(self._edges.values())
        return graph

    def as_dict(self) -> Dict[str, Any]:
        edge_ids = self.edge_ids()
        return {
            "vertices": self.sorted_vertices(),
            "edges": [list(self._edges[edge_id]) for edge_id in edge_ids],
            "edge_ids": edge_ids,
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, frozenset(self._edges.items())))

    def __repr__(self) -> str:
        return f"Graph(|V|={self.order()}, |E|={self.size()})"
