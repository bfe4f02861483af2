from typing import Dict, Iterable, List, Optional, Set, Tuple

from loguru import logger
from pydantic import BaseModel

from decompose.TwoDecomposition import DecompositionMode, TwoDecomposition
from graph_core.exceptions import BudgetExceeded
from graph_core.Graph import Graph

DEFAULT_MAX_EDGES = 30
DEFAULT_NODE_BUDGET = 5_000_000


class OracleResult(BaseModel):
    decomposable: bool
    witness: Optional[TwoDecomposition] = None
    # number of matchings M with G - M a forest (or spanning tree), when requested
    count: Optional[int] = None
    nodes: int = 0


class _RollbackForest:
    """Union-find without path compression, so unions can be undone in stack order."""

    def __init__(self, vertices: Iterable[int]) -> None:
        self._parent: Dict[int, int] = {vertex: vertex for vertex in vertices}
        self._size: Dict[int, int] = {vertex: 1 for vertex in self._parent}
        self._history: List[Tuple[int, int]] = []

    def _root(self, vertex: int) -> int:
        while self._parent[vertex] != vertex:
            vertex = self._parent[vertex]
        return vertex

    def union(self, u: int, v: int) -> bool:
        first, second = self._root(u), self._root(v)
        if first == second:
            return False
        if self._size[first] < self._size[second]:
            first, second = second, first
        self._parent[second] = first
        self._size[first] += self._size[second]
        self._history.append((first, second))
        return True

    def undo(self) -> None:
        first, second = self._history.pop()
        self._parent[second] = second
        self._size[first] -= self._size[second]


class _Search:
    """Branch and bound over the edges in id order, forest side tried first."""

    def __init__(self, graph: Graph, mode: DecompositionMode, count: bool, node_budget: int) -> None:
        self.graph = graph
        self.edges = graph.edge_ids()
        self.count_all = count
        self.node_budget = node_budget
        # a spanning tree leaves exactly |E| - |V| + 1 edges for the matching
        self.target = (
            max(graph.size() - graph.order() + 1, 0) if mode == DecompositionMode.SpanningTree else None
        )
        self.forest = _RollbackForest(graph.vertices)
        self.matched: Set[int] = set()
        self.matching: List[int] = []
        self.witness: Optional[List[int]] = None
        self.count = 0
        self.nodes = 0

    def run(self, index: int = 0) -> bool:
        """Explore from edge ``index``; True means stop searching."""
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceeded(f"Oracle search exceeded {self.node_budget} nodes.", budget=self.node_budget)
        if self.target is not None:
            missing = self.target - len(self.matching)
            if missing < 0 or missing > len(self.edges) - index:
                return False
        if index == len(self.edges):
            self.count += 1
            if self.witness is None:
                self.witness = list(self.matching)
            return not self.count_all

        edge_id = self.edges[index]
        u, v = self.graph.endpoints(edge_id)
        if self.forest.union(u, v):
            stop = self.run(index + 1)
            self.forest.undo()
            if stop:
                return True
        if u not in self.matched and v not in self.matched:
            self.matched.update((u, v))
            self.matching.append(edge_id)
            stop = self.run(index + 1)
            self.matching.pop()
            self.matched.difference_update((u, v))
            if stop:
                return True
        return False


def brute_force(
    graph: Graph,
    mode: DecompositionMode = DecompositionMode.SpanningTree,
    count: bool = False,
    max_edges: int = DEFAULT_MAX_EDGES,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> OracleResult:
    """Decide by exhaustive search whether the graph splits into a forest (or spanning tree) and a matching.

    Raises:
        BudgetExceeded: The graph has more than ``max_edges`` edges or the search visited more than
            ``node_budget`` nodes.
    """
    if graph.size() > max_edges:
        raise BudgetExceeded(f"Oracle accepts at most {max_edges} edges, graph has {graph.size()}.", budget=max_edges)

    search = _Search(graph, mode, count, node_budget)
    search.run()
    logger.debug(f"oracle visited {search.nodes} nodes on {graph}, {search.count} matchings found")

    witness = None
    if search.witness is not None:
        matching = set(search.witness)
        witness = TwoDecomposition(
            forest_edges=[edge_id for edge_id in search.edges if edge_id not in matching],
            matching_edges=sorted(matching),
            mode=mode,
        )
    return OracleResult(
        decomposable=witness is not None,
        witness=witness,
        count=search.count if count else None,
        nodes=search.nodes,
    )
