from typing import List, Optional, Tuple

from networkx.utils import UnionFind

from decompose.ReductionTrace import ReductionTrace, StepKind
from decompose.TwoDecomposition import DecompositionMode, Side, TwoDecomposition
from graph_core.exceptions import CannotComplete
from graph_core.Graph import Graph
from oracle.parameters import phi


def complete_forest(graph: Graph, decomposition: TwoDecomposition) -> TwoDecomposition:
    """Move a minimal set of matching edges into the forest so that it spans the graph.

    Matching edges are tried in increasing id order and kept only when they
    join two components of the current forest.

    Raises:
        CannotComplete: The graph is disconnected, or the forest part was not a forest.
    """
    forest = UnionFind(graph.sorted_vertices())
    for edge_id in decomposition.forest_edges:
        u, v = graph.endpoints(edge_id)
        if forest[u] == forest[v]:
            raise CannotComplete(f"Forest part closes a cycle at edge {edge_id}.", graph=graph.as_dict())
        forest.union(u, v)

    moved = []
    for edge_id in decomposition.matching_edges:
        u, v = graph.endpoints(edge_id)
        if forest[u] != forest[v]:
            forest.union(u, v)
            moved.append(edge_id)

    roots = {forest[vertex] for vertex in graph.vertices}
    if len(roots) > 1:
        raise CannotComplete(f"Forest plus matching still has {len(roots)} components.", graph=graph.as_dict())
    return TwoDecomposition(
        forest_edges=decomposition.forest_edges + moved,
        matching_edges=[edge_id for edge_id in decomposition.matching_edges if edge_id not in moved],
        mode=DecompositionMode.SpanningTree,
    )


def prune_leaves(
    graph: Graph, trace: Optional[ReductionTrace] = None, parent: Optional[int] = None
) -> Tuple[Graph, ReductionTrace]:
    """Delete degree-1 vertices until none is left.

    A single ``leaf_prune`` step is recorded when anything was removed; lifting
    it puts every removed edge in the tree.
    """
    trace = trace if trace is not None else ReductionTrace()
    pruned: List[int] = []
    current = graph
    leaves = [vertex for vertex in current.sorted_vertices() if current.degree(vertex) == 1]
    while leaves and current.order() > 1:
        leaf = leaves[0]
        pruned.append(current.incident(leaf)[0])
        current = current.without_vertices([leaf])
        leaves = [vertex for vertex in current.sorted_vertices() if current.degree(vertex) == 1]

    if pruned:
        index = trace.record(StepKind.LeafPrune, graph, parent, pruned_edges=pruned)
        step = trace.step(index)
        step.forced = {edge_id: Side.Forest for edge_id in pruned}
        step.phi_after = phi(current)
    return current, trace
