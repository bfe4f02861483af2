from typing import Iterator, List, Optional, Tuple

from graph_core.Cycle import Cycle
from graph_core.exceptions import BudgetExceeded
from graph_core.Graph import Graph

DEFAULT_CYCLE_CAP = 1_000_000


def enumerate_cycles(graph: Graph, cap: int = DEFAULT_CYCLE_CAP, max_length: Optional[int] = None) -> Iterator[Cycle]:
    """Yield every cycle once, two-edge cycles on parallel pairs included.

    Each cycle starts at its smallest vertex. Of the two traversal directions
    the one whose first edge id is smaller than its closing edge id is kept.

    Args:
        graph: Graph to search.
        cap: Number of cycles after which the search gives up.
        max_length: Skip cycles longer than this.

    Raises:
        BudgetExceeded: More than ``cap`` cycles.
    """
    found = 0
    limit = graph.order() if max_length is None else min(max_length, graph.order())
    for start in graph.sorted_vertices():
        path: List[int] = [start]
        path_edges: List[int] = []
        on_path = {start}
        # One iterator over incident edges per vertex of the current path
        stack: List[Iterator[int]] = [iter(graph.incident(start))]
        while stack:
            current = path[-1]
            edge_id = next(stack[-1], None)
            if edge_id is None:
                stack.pop()
                if path_edges:
                    path_edges.pop()
                on_path.discard(path.pop())
                continue

            other = graph.other_end(edge_id, current)
            if other == start:
                if path_edges and path_edges[0] < edge_id:
                    found += 1
                    if found > cap:
                        raise BudgetExceeded(f"More than {cap} cycles.", cap)
                    yield Cycle(tuple(path), tuple(path_edges) + (edge_id,))
                continue
            if other < start or other in on_path or len(path) >= limit:
                continue

            path.append(other)
            path_edges.append(edge_id)
            on_path.add(other)
            stack.append(iter(graph.incident(other)))


def cycles_by_length(graph: Graph, cap: int = DEFAULT_CYCLE_CAP) -> List[Cycle]:
    """All cycles, shortest first; ties ordered by canonical key."""
    keyed: List[Tuple[int, Tuple[int, ...], Cycle]] = [
        (cycle.length, cycle.canonical_key(), cycle) for cycle in enumerate_cycles(graph, cap)
    ]
    keyed.sort(key=lambda item: (item[0], item[1]))
    return [item[2] for item in keyed]
