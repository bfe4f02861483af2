from graph_core.Graph import Graph
from graph_core.operations import vertices_of_degree


def phi(graph: Graph) -> int:
    """|V| + |E|, the size measure every reduction decreases."""
    return graph.order() + graph.size()


def rho(graph: Graph) -> int:
    """|V3| - 2|V2|."""
    return len(vertices_of_degree(graph, 3)) - 2 * len(vertices_of_degree(graph, 2))
