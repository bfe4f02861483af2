from enum import Enum
from typing import Any, Dict, List, Mapping, NamedTuple, Tuple, Union

import networkx as nx

from graph_core.Cycle import Cycle
from graph_core.exceptions import NotAConnector


class CycleType(str, Enum):
    # no 2-chord has both ends on the cycle
    Type1 = "type1"
    Type2 = "type2"


class TwoChord(NamedTuple):
    inner: int
    ends: Tuple[int, int]
    cycle: int

    def as_dict(self) -> Dict[str, Any]:
        return {"role": "two_chord", "inner": self.inner, "ends": list(self.ends), "cycle": self.cycle}


class Connector(NamedTuple):
    inner: int
    # ends[i] lies on cycles[i]; cycles are in increasing id order
    ends: Tuple[int, int]
    cycles: Tuple[int, int]

    def end_on(self, cycle: int) -> int:
        return self.ends[self.cycles.index(cycle)]

    def as_dict(self) -> Dict[str, Any]:
        return {"role": "connector", "inner": self.inner, "ends": list(self.ends), "cycles": list(self.cycles)}


Role = Union[TwoChord, Connector]


class BasicStructure:
    """Basic cycles of a graph of class H and the role of every degree-2 vertex.

    A basic cycle is identified by its smallest vertex. Its vertices are stored
    starting there and continuing towards the smaller of its two neighbours on
    the cycle, which fixes the successor of every vertex.
    """

    def __init__(self, basic_cycles: Mapping[int, Cycle], roles: Mapping[int, Role]) -> None:
        self.basic_cycles: Dict[int, Cycle] = dict(sorted(basic_cycles.items()))
        self.roles: Dict[int, Role] = dict(sorted(roles.items()))
        self.cycle_of: Dict[int, int] = {
            vertex: cycle_id for cycle_id, cycle in self.basic_cycles.items() for vertex in cycle.vertices
        }
        # every vertex of a basic cycle has exactly one degree-2 neighbour
        self.partner: Dict[int, int] = {end: inner for inner, role in self.roles.items() for end in role.ends}

    def cycle_ids(self) -> List[int]:
        return list(self.basic_cycles)

    def two_chords(self) -> List[TwoChord]:
        return [role for role in self.roles.values() if isinstance(role, TwoChord)]

    def connectors(self) -> List[Connector]:
        return [role for role in self.roles.values() if isinstance(role, Connector)]

    def connector(self, vertex: int) -> Connector:
        role = self.roles.get(vertex)
        if not isinstance(role, Connector):
            raise NotAConnector(f"Vertex {vertex} is not a connector.")
        return role

    def chords_of(self, cycle_id: int) -> List[TwoChord]:
        return [chord for chord in self.two_chords() if chord.cycle == cycle_id]

    def connectors_at(self, cycle_id: int) -> List[Connector]:
        return [connector for connector in self.connectors() if cycle_id in connector.cycles]

    def cycle_type(self, cycle_id: int) -> CycleType:
        return CycleType.Type2 if self.chords_of(cycle_id) else CycleType.Type1

    def parallel_classes(self) -> List[List[int]]:
        """Connectors grouped by the pair of cycles they join, singletons included."""
        by_pair: Dict[Tuple[int, int], List[int]] = {}
        for connector in self.connectors():
            by_pair.setdefault(connector.cycles, []).append(connector.inner)
        return [by_pair[pair] for pair in sorted(by_pair)]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "basic_cycles": {str(cycle_id): cycle.as_dict() for cycle_id, cycle in self.basic_cycles.items()},
            "roles": {str(vertex): role.as_dict() for vertex, role in self.roles.items()},
            "parallel_classes": self.parallel_classes(),
        }


class BCGraph(NamedTuple):
    """Basic cycles graph: one node per basic cycle, one edge per joined pair."""

    nodes: Tuple[int, ...]
    edges: Tuple[Tuple[int, int], ...]
    # joined pair -> connectors joining it, in id order
    realisers: Dict[Tuple[int, int], Tuple[int, ...]]

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph

    def is_connected(self) -> bool:
        return not self.nodes or nx.is_connected(self.to_networkx())

    def degree_sequence(self) -> List[int]:
        return sorted((degree for _, degree in self.to_networkx().degree()), reverse=True)

    def as_dict(self) -> Dict[str, Any]:
        return {"nodes": list(self.nodes), "edges": [list(edge) for edge in self.edges]}


class ConnectorCollection(NamedTuple):
    connectors: Tuple[int, ...]
    # no two members join the same pair of basic cycles
    simple: bool

    @staticmethod
    def of(structure: BasicStructure, vertices: Any = ()) -> "ConnectorCollection":
        """Collection of the given connector vertices.

        Raises:
            NotAConnector: A vertex is not a connector of ``structure``.
        """
        members = tuple(sorted(set(vertices)))
        pairs = [structure.connector(vertex).cycles for vertex in members]
        return ConnectorCollection(members, len(set(pairs)) == len(pairs))

    def without(self, vertex: int) -> "ConnectorCollection":
        return ConnectorCollection(tuple(member for member in self.connectors if member != vertex), self.simple)

    def __contains__(self, vertex: object) -> bool:
        return vertex in self.connectors
