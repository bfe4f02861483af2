from enum import Enum
from typing import Iterable, List, Optional

from pydantic import BaseModel

from decompose.TwoDecomposition import DecompositionMode, TwoDecomposition
from graph_core.Graph import Graph
from graph_core.operations import components, find_cycle
from h_structure.BasicStructure import BasicStructure


class Check(str, Enum):
    Partition = "partition"
    Matching = "matching"
    Acyclic = "acyclic"
    Spanning = "spanning"
    OneMatchingEdgePerBasicCycle = "one_matching_edge_per_basic_cycle"
    ConnectorNearFullVertex = "connector_near_full_vertex"


class Failure(BaseModel):
    check: Check
    detail: str
    vertices: List[int] = []
    edges: List[int] = []


class VerificationReport(BaseModel):
    valid: bool
    checked: List[Check]
    failures: List[Failure] = []


def _partition_failures(graph: Graph, decomposition: TwoDecomposition) -> List[Failure]:
    failures = []
    listed = decomposition.forest_edges + decomposition.matching_edges
    unknown = sorted(set(listed) - set(graph.edge_ids()))
    if unknown:
        failures.append(Failure(check=Check.Partition, detail="edges not in the graph", edges=unknown))
    missing = sorted(set(graph.edge_ids()) - set(listed))
    if missing:
        failures.append(Failure(check=Check.Partition, detail="edges in neither part", edges=missing))
    repeated = sorted({edge_id for edge_id in listed if listed.count(edge_id) > 1})
    if repeated:
        failures.append(Failure(check=Check.Partition, detail="edges listed twice", edges=repeated))
    return failures


def _matching_failures(graph: Graph, matching: Iterable[int]) -> List[Failure]:
    seen = {}
    for edge_id in matching:
        for end in graph.endpoints(edge_id):
            if end in seen:
                return [
                    Failure(
                        check=Check.Matching,
                        detail=f"vertex {end} is covered twice",
                        vertices=[end],
                        edges=[seen[end], edge_id],
                    )
                ]
            seen[end] = edge_id
    return []


def _structure_failures(
    graph: Graph, decomposition: TwoDecomposition, structure: BasicStructure, connectors: Iterable[int]
) -> List[Failure]:
    failures = []
    matching = set(decomposition.matching_edges)
    for cycle_id, cycle in structure.basic_cycles.items():
        hits = sorted(cycle.edge_set & matching)
        if len(hits) != 1:
            failures.append(
                Failure(
                    check=Check.OneMatchingEdgePerBasicCycle,
                    detail=f"basic cycle {cycle_id} has {len(hits)} matching edges",
                    vertices=list(cycle.vertices),
                    edges=hits,
                )
            )
    full = set(decomposition.full_vertices(graph))
    for connector in connectors:
        if connector in full or full.intersection(graph.neighbors(connector)):
            continue
        failures.append(
            Failure(
                check=Check.ConnectorNearFullVertex,
                detail=f"connector {connector} is not full and has no full neighbour",
                vertices=[connector],
            )
        )
    return failures


def verify_decomposition(
    graph: Graph,
    decomposition: TwoDecomposition,
    structure: Optional[BasicStructure] = None,
    connectors: Iterable[int] = (),
) -> VerificationReport:
    """Re-check a decomposition from scratch against the graph.

    With ``structure`` the two extra guarantees for graphs of class H are
    checked too: one matching edge per basic cycle, and every vertex of
    ``connectors`` full or next to a full vertex.
    """
    checked = [Check.Partition, Check.Matching, Check.Acyclic]
    failures = _partition_failures(graph, decomposition)
    if not failures:
        failures += _matching_failures(graph, decomposition.matching_edges)
        forest = graph.spanning_subgraph(decomposition.forest_edges)
        cycle = find_cycle(forest)
        if cycle is not None:
            failures.append(
                Failure(
                    check=Check.Acyclic,
                    detail="the forest part has a cycle",
                    vertices=list(cycle.vertices),
                    edges=list(cycle.edges),
                )
            )
        if decomposition.mode == DecompositionMode.SpanningTree:
            checked.append(Check.Spanning)
            parts = components(forest)
            if len(parts) > 1:
                failures.append(
                    Failure(
                        check=Check.Spanning,
                        detail=f"the tree part has {len(parts)} components",
                        vertices=[min(part) for part in parts],
                    )
                )
        if structure is not None:
            checked += [Check.OneMatchingEdgePerBasicCycle, Check.ConnectorNearFullVertex]
            failures += _structure_failures(graph, decomposition, structure, connectors)
    return VerificationReport(valid=not failures, checked=checked, failures=failures)
