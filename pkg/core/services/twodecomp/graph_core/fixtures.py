"""Named graphs shared by the tests, the generators and the documentation.

Vertex and edge ids are fixed so that expected decompositions can be written
down by hand.
"""
from typing import List, Sequence, Tuple

from graph_core.Graph import Graph


def cycle_graph(length: int) -> Graph:
    return Graph.from_edge_list([(i, (i + 1) % length) for i in range(length)])


def path_graph(order: int) -> Graph:
    return Graph.from_edge_list([(i, i + 1) for i in range(order - 1)], isolated=[0])


def digon() -> Graph:
    return Graph.from_edge_list([(0, 1), (0, 1)])


def complete_graph(order: int) -> Graph:
    return Graph.from_edge_list([(u, v) for u in range(order) for v in range(u + 1, order)], isolated=range(order))


def complete_bipartite(left: int, right: int) -> Graph:
    """Left part 0..left-1, right part left..left+right-1."""
    return Graph.from_edge_list([(u, left + v) for u in range(left) for v in range(right)])


def claw() -> Graph:
    return complete_bipartite(1, 3)


def paw() -> Graph:
    return Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (2, 3)])


def diamond() -> Graph:
    return Graph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])


def subdivided_k4() -> Graph:
    """4-cycle a1a2a3a4 (0, 1, 2, 3) with 2-chords a1-u-a3 (u = 4) and a2-v-a4 (v = 5).

    Edges: 0 a1a2, 1 a2a3, 2 a3a4, 3 a4a1, 4 a1u, 5 ua3, 6 a2v, 7 va4.
    """
    return Graph.from_edge_list([(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 2), (1, 5), (5, 3)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edge_list(outer + spokes + inner)


def prism() -> Graph:
    return Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def subdivided_prism() -> Graph:
    """Two triangles joined by three rungs, each rung subdivided once (6, 7, 8)."""
    return Graph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 6), (6, 3), (1, 7), (7, 4), (2, 8), (8, 5)]
    )


def two_triangles_sharing_vertex() -> Graph:
    return Graph.from_edge_list([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    pairs: List[Tuple[int, int]] = []
    isolated: List[int] = []
    offset = 0
    for graph in graphs:
        shift = {vertex: offset + index for index, vertex in enumerate(graph.sorted_vertices())}
        isolated.extend(shift.values())
        for edge_id in graph.edge_ids():
            u, v = graph.endpoints(edge_id)
            pairs.append((shift[u], shift[v]))
        offset += graph.order()
    return Graph.from_edge_list(pairs, isolated=isolated)


def chorded_cycle_pair(connectors: int = 1) -> Graph:
    """Two 5-cycles joined by ``connectors`` connectors, the other slots paired by 2-chords.

    First cycle 0..4, second 5..9. Connectors start at vertex 10, each joins
    vertex i of the first cycle to vertex 5 + i. The remaining slots of each
    cycle are consecutive pairs (i, i + 2) joined through a 2-chord.
    """
    if connectors not in (1, 3):
        raise ValueError("A 5-cycle has an odd number of slots: use 1 or 3 connectors.")
    pairs: List[Tuple[int, int]] = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 1) % 5) for i in range(5)]
    next_vertex = 10
    for i in range(connectors):
        pairs += [(i, next_vertex), (next_vertex, 5 + i)]
        next_vertex += 1
    free = list(range(connectors, 5))
    for base in (0, 5):
        slots = [base + i for i in free]
        for first, second in zip(slots[0::2], slots[1::2]):
            pairs += [(first, next_vertex), (next_vertex, second)]
            next_vertex += 1
    return Graph.from_edge_list(pairs)


def chorded_cycle_star(leaves: int = 3) -> Graph:
    """A chordless centre cycle 0..leaves-1, each vertex joined to its own 5-cycle.

    Leaf cycle j uses vertices leaves + 5j .. leaves + 5j + 4 and is joined
    through its first vertex. Connectors come next, then the 2-chords
    (i + 1, i + 3) and (i + 2, i + 4) of every leaf cycle.
    """
    if leaves < 3:
        raise ValueError("The centre cycle needs at least 3 vertices.")
    pairs: List[Tuple[int, int]] = [(i, (i + 1) % leaves) for i in range(leaves)]
    bases = [leaves + 5 * j for j in range(leaves)]
    for base in bases:
        pairs += [(base + i, base + (i + 1) % 5) for i in range(5)]
    next_vertex = leaves + 5 * leaves
    for centre, base in enumerate(bases):
        pairs += [(centre, next_vertex), (next_vertex, base)]
        next_vertex += 1
    for base in bases:
        for first, second in ((base + 1, base + 3), (base + 2, base + 4)):
            pairs += [(first, next_vertex), (next_vertex, second)]
            next_vertex += 1
    return Graph.from_edge_list(pairs)


def bridged_triangles() -> Graph:
    """Triangles 0-1-2 and 3-4-5 joined by the bridge 0-3.

    1 and 2 are also joined through the degree-2 run 6-7, and 4 and 5 through
    the single degree-2 vertex 8. The bridge is edge 6, the run uses edges 7, 8, 9.
    """
    return Graph.from_edge_list(
        [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 6), (6, 7), (7, 2), (4, 8), (8, 5)]
    )
