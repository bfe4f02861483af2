from enum import Enum
from typing import Any, Dict, List, Optional, Type

from pydantic import BaseModel, root_validator

from graph_core.Cycle import Cycle


class ClassName(str, Enum):
    S_pq = "S_pq"
    thick_cacti = "thick_cacti"
    claw_free = "claw_free"
    class_H = "class_H"


class ViolationKind(str, Enum):
    Disconnected = "disconnected"
    MinDegree = "min_degree"
    MaxDegree = "max_degree"
    NonSeparatingCycle = "non_separating_cycle"
    EdgeOnTwoCycles = "edge_on_two_cycles"
    VertexOnNoCycle = "vertex_on_no_cycle"
    Claw = "claw"
    ParallelEdges = "parallel_edges"
    DegreeTwoNotStable = "degree_two_not_stable"
    DegreeTwoNeighbours = "degree_two_neighbours"


class Violation(BaseModel):
    kind: ViolationKind
    vertices: List[int] = []
    edges: List[int] = []
    detail: str = ""


class ClassReport(BaseModel):
    class_name: ClassName
    parameters: Dict[str, int] = {}
    member: bool
    violation: Optional[Violation] = None

    @root_validator
    @classmethod
    def has_witness_when_rejected(cls: Type["ClassReport"], values: Any) -> Any:
        member, violation = values.get("member"), values.get("violation")
        if member and violation is not None:
            raise ValueError("A member cannot carry a violation.")
        if member is False and violation is None:
            raise ValueError("A rejection needs a violation witness.")
        return values

    @staticmethod
    def accept(class_name: ClassName, **parameters: int) -> "ClassReport":
        return ClassReport(class_name=class_name, parameters=parameters, member=True)

    @staticmethod
    def reject(class_name: ClassName, violation: Violation, **parameters: int) -> "ClassReport":
        return ClassReport(class_name=class_name, parameters=parameters, member=False, violation=violation)


class SeparationVerdict(BaseModel):
    cycle_vertices: List[int]
    cycle_edges: List[int]
    separating: bool
    # components of G minus the cycle edges; a single component is the connectivity witness
    components: List[List[int]]

    @root_validator
    @classmethod
    def matches_components(cls: Type["SeparationVerdict"], values: Any) -> Any:
        separating, components = values.get("separating"), values.get("components") or []
        if separating != (len(components) > 1):
            raise ValueError("Verdict does not match the component partition.")
        return values

    @property
    def cycle(self) -> Cycle:
        return Cycle(tuple(self.cycle_vertices), tuple(self.cycle_edges))
