from enum import Enum
from typing import Any, Dict, List, Mapping, Type

from pydantic import BaseModel, root_validator, validator

from graph_core.Graph import Graph


class DecompositionMode(str, Enum):
    Forest = "forest"
    SpanningTree = "spanning_tree"


class Side(str, Enum):
    Forest = "F"
    Matching = "M"

    def flipped(self) -> "Side":
        return Side.Matching if self == Side.Forest else Side.Forest


Sides = Dict[int, Side]


class TwoDecomposition(BaseModel):
    """Edge ids split into a forest (or spanning tree) part and a matching part."""

    forest_edges: List[int]
    matching_edges: List[int]
    mode: DecompositionMode

    @validator("forest_edges", "matching_edges")
    @classmethod
    def sorted_ids(cls: Type["TwoDecomposition"], value: List[int]) -> List[int]:
        return sorted(value)

    @root_validator
    @classmethod
    def disjoint_parts(cls: Type["TwoDecomposition"], values: Any) -> Any:
        shared = set(values.get("forest_edges") or []) & set(values.get("matching_edges") or [])
        if shared:
            raise ValueError(f"Edges {sorted(shared)} are in both parts.")
        return values

    @staticmethod
    def from_sides(sides: Mapping[int, Side], mode: DecompositionMode) -> "TwoDecomposition":
        return TwoDecomposition(
            forest_edges=[edge_id for edge_id, side in sides.items() if side == Side.Forest],
            matching_edges=[edge_id for edge_id, side in sides.items() if side == Side.Matching],
            mode=mode,
        )

    def sides(self) -> Sides:
        result = {edge_id: Side.Forest for edge_id in self.forest_edges}
        result.update({edge_id: Side.Matching for edge_id in self.matching_edges})
        return result

    def full_vertices(self, graph: Graph) -> List[int]:
        """Vertices all of whose incident edges are in the forest part."""
        matched = {end for edge_id in self.matching_edges for end in graph.endpoints(edge_id)}
        return [vertex for vertex in graph.sorted_vertices() if vertex not in matched]

    def as_pairs(self, graph: Graph) -> Dict[str, Any]:
        return {
            "tree": [list(graph.endpoints(edge_id)) for edge_id in self.forest_edges],
            "matching": [list(graph.endpoints(edge_id)) for edge_id in self.matching_edges],
            "tree_edge_ids": self.forest_edges,
            "matching_edge_ids": self.matching_edges,
            "mode": self.mode.value,
        }
