from typing import Any, Dict, FrozenSet, NamedTuple, Tuple

from graph_core.exceptions import NotACycle


class Cycle(NamedTuple):
    """Closed walk without repeated vertices.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[(i + 1) % length]``.
    Two-edge cycles on a parallel pair are legal.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> FrozenSet[int]:
        return frozenset(self.edges)

    def position(self, vertex: int) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError as error:
            raise NotACycle(f"Vertex {vertex} is not on the cycle.") from error

    def successor(self, vertex: int) -> int:
        return self.vertices[(self.position(vertex) + 1) % self.length]

    def predecessor(self, vertex: int) -> int:
        return self.vertices[(self.position(vertex) - 1) % self.length]

    def edge_to_successor(self, vertex: int) -> int:
        return self.edges[self.position(vertex)]

    def canonical_key(self) -> Tuple[int, ...]:
        """Smallest rotation or reflection of the edge id sequence."""
        forward = list(self.edges)
        backward = forward[::-1]
        candidates = []
        for sequence in (forward, backward):
            for shift in range(len(sequence)):
                candidates.append(tuple(sequence[shift:] + sequence[:shift]))
        return min(candidates)

    def as_dict(self) -> Dict[str, Any]:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}


class PathSeq(NamedTuple):
    """Path with distinct vertices; ``edges[i]`` joins ``vertices[i]`` and ``vertices[i + 1]``."""

    vertices: Tuple[int, ...]
    edges: Tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edges)

    def as_dict(self) -> Dict[str, Any]:
        return {"vertices": list(self.vertices), "edges": list(self.edges)}
