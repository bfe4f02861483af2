import itertools
from pathlib import Path
from typing import Dict, Iterator, List, Optional

import networkx as nx
from loguru import logger
from tqdm import tqdm

from graph_core.exceptions import BudgetExceeded, PreconditionViolated
from graph_core.formats import read_graphs
from graph_core.Graph import Graph
from graph_core.operations import is_connected

DEFAULT_MAX_VERTICES = 12


class _IsomorphismClasses:
    """Representatives bucketed by Weisfeiler-Lehman hash, confirmed by an exact isomorphism test."""

    def __init__(self) -> None:
        self.buckets: Dict[str, List[nx.Graph]] = {}
        self.representatives: List[nx.Graph] = []

    def add(self, candidate: nx.Graph) -> bool:
        bucket = self.buckets.setdefault(nx.weisfeiler_lehman_graph_hash(candidate), [])
        if any(nx.is_isomorphic(candidate, known) for known in bucket):
            return False
        bucket.append(candidate)
        self.representatives.append(candidate)
        return True


def _as_graph(simple: nx.Graph) -> Graph:
    return Graph.from_edge_list(sorted(tuple(sorted(pair)) for pair in simple.edges()), isolated=simple.nodes())


def _grow(previous: List[nx.Graph], order: int, progress: bool) -> List[nx.Graph]:
    """Connected subcubic graphs on ``order`` vertices from those on ``order - 1``.

    Every connected graph has a vertex whose removal keeps it connected, so
    attaching a new vertex to one, two or three unsaturated vertices of every
    smaller representative reaches every class.
    """
    classes = _IsomorphismClasses()
    new_vertex = order - 1
    for base in tqdm(previous, desc=f"{order} vertices", unit="graph", disable=not progress, leave=False):
        open_vertices = sorted(vertex for vertex, degree in base.degree() if degree < 3)
        for size in range(1, 4):
            for neighbours in itertools.combinations(open_vertices, size):
                candidate = base.copy()
                candidate.add_edges_from((vertex, new_vertex) for vertex in neighbours)
                classes.add(candidate)
    return classes.representatives


def read_graph6_file(path: Path, n_max: int) -> Iterator[Graph]:
    """Connected subcubic graphs with at most ``n_max`` vertices from a graph6 file, in file order."""
    with open(path, "r", encoding="ascii") as file:
        for graph in read_graphs(file):
            if graph.order() > n_max:
                continue
            if graph.order() == 0 or not is_connected(graph) or graph.max_degree() > 3:
                logger.debug(f"Skipping {graph}: not a connected subcubic graph.")
                continue
            yield graph


def enumerate_connected_subcubic(
    n_max: int,
    source: Optional[Path] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
    progress: bool = False,
) -> Iterator[Graph]:
    """Every connected simple graph of maximum degree at most 3 on 1 to ``n_max`` vertices.

    One graph per isomorphism class, by increasing order, vertices labelled
    from 0. With ``source`` the graphs come from that graph6 file instead,
    which is then trusted to hold one graph per class.

    Raises:
        BudgetExceeded: ``n_max`` is above ``max_vertices``.
    """
    if n_max < 1:
        raise PreconditionViolated(f"n_max must be at least 1, got {n_max}.")
    if n_max > max_vertices:
        raise BudgetExceeded(f"Enumerating up to {n_max} vertices exceeds the limit of {max_vertices}.", max_vertices)
    if source is not None:
        yield from read_graph6_file(source, n_max)
        return

    level = [nx.empty_graph(1)]
    for order in range(1, n_max + 1):
        if order > 1:
            level = _grow(level, order, progress)
        logger.info(f"{len(level)} connected subcubic graphs on {order} vertices.")
        for simple in level:
            yield _as_graph(simple)
