"""Decomposition of graphs of class H into a forest and a matching.

The recursion removes a leaf basic cycle of a spanning tree of the BC-graph,
builds a smaller graph of class H, decomposes it and lifts the result back.
Besides being a decomposition, the result has exactly one matching edge on
every basic cycle, and every connector of the given collection is full or
next to a full vertex.
"""
from typing import Dict, Iterable, NamedTuple, Optional, Set, Tuple, Union

from loguru import logger

from decompose.ReductionTrace import ReductionTrace, StepKind
from decompose.TwoDecomposition import DecompositionMode, Side, Sides, TwoDecomposition
from decompose.verification import verify_decomposition
from graph_core.exceptions import InternalInvariantBroken, NotAConnector, NotInClassH, PreconditionViolated
from graph_core.Graph import Graph
from graph_core.operations import shrink, subdivide
from h_structure.analysis import analyze, bc_graph, spanning_collection, underlying_bc_graph
from h_structure.BasicStructure import BasicStructure, ConnectorCollection, CycleType, TwoChord
from oracle.parameters import phi


class _Attachment(NamedTuple):
    """A degree-2 vertex with exactly one neighbour on the leaf cycle."""

    inner: int
    near: int
    far: int
    # successor of ``far`` on its basic cycle and the edge leading there
    far_next: int
    far_edge: int


def _edge(graph: Graph, u: int, v: int) -> int:
    between = graph.edges_between(u, v)
    if len(between) != 1:
        raise InternalInvariantBroken(f"Expected one edge between {u} and {v}, found {between}.", graph=graph.as_dict())
    return between[0]


def _single_cycle(graph: Graph, structure: BasicStructure, trace: ReductionTrace, parent: Optional[int]) -> Sides:
    (cycle,) = structure.basic_cycles.values()
    if structure.connectors():
        raise trace.broken("A single basic cycle cannot have connectors.", graph)

    for position in range(cycle.length):
        first, second = cycle.vertices[position], cycle.vertices[(position + 1) % cycle.length]
        if structure.partner[first] != structure.partner[second]:
            break
    else:
        raise trace.broken("No two adjacent cycle vertices end distinct 2-chords.", graph)

    matching = {cycle.edges[position]}
    for end in (first, second):
        inner = structure.partner[end]
        far = next(neighbour for neighbour in graph.neighbors(inner) if neighbour != end)
        matching.add(_edge(graph, inner, far))
    for inner in structure.roles:
        if inner not in (structure.partner[first], structure.partner[second]):
            matching.add(min(graph.incident(inner)))

    index = trace.record(StepKind.SingleCycleBase, graph, parent, cycle=cycle.vertices[0], x1=first, x2=second)
    step = trace.step(index)
    step.forced = {edge_id: Side.Matching if edge_id in matching else Side.Forest for edge_id in graph.edge_ids()}
    return step.lift({})


class _LeafCycle:
    """Choices made around the leaf cycle: its attachments, the case and the pivot vertices."""

    def __init__(self, graph: Graph, structure: BasicStructure, extended: ConnectorCollection) -> None:
        tree = underlying_bc_graph(structure, extended)
        self.cycle_id = min(node for node in tree.sorted_vertices() if tree.degree(node) == 1)
        self.cycle = structure.basic_cycles[self.cycle_id]
        self.type = structure.cycle_type(self.cycle_id)
        if self.type == CycleType.Type1:
            raise InternalInvariantBroken(
                f"Leaf cycle {self.cycle_id} of the BC spanning tree has no 2-chord.", graph=graph.as_dict()
            )

        self.chords: Dict[int, TwoChord] = {chord.inner: chord for chord in structure.chords_of(self.cycle_id)}
        self.attachments: Dict[int, _Attachment] = {}
        for connector in structure.connectors_at(self.cycle_id):
            near = connector.end_on(self.cycle_id)
            far = connector.ends[0] if connector.ends[1] == near else connector.ends[1]
            far_cycle = structure.basic_cycles[structure.cycle_of[far]]
            self.attachments[connector.inner] = _Attachment(
                connector.inner, near, far, far_cycle.successor(far), far_cycle.edge_to_successor(far)
            )

        (self.y1,) = [inner for inner in extended.connectors if inner in self.attachments]
        self.x1 = self.attachments[self.y1].near

        cycle = self.cycle
        chord_ends = {end for chord in self.chords.values() for end in chord.ends}
        admissible = sorted(n for n in (cycle.successor(self.x1), cycle.predecessor(self.x1)) if n in chord_ends)
        self.chord_case = bool(admissible)
        if self.chord_case:
            second = admissible[0]
        else:
            second = min(cycle.successor(self.x1), cycle.predecessor(self.x1))
        forward = second == cycle.successor(self.x1)
        start = cycle.position(self.x1)
        step = 1 if forward else -1
        self.walk = [cycle.vertices[(start + step * offset) % cycle.length] for offset in range(cycle.length)]

        self.x3: Optional[int] = None
        if self.chord_case:
            self.x2 = second
        else:
            for position in range(1, cycle.length):
                following = self.walk[(position + 1) % cycle.length]
                if following in chord_ends:
                    self.x2, self.x3 = self.walk[position], following
                    break
            else:
                raise InternalInvariantBroken(
                    f"No 2-chord end found on leaf cycle {self.cycle_id}.", graph=graph.as_dict()
                )
        self.y2 = structure.partner[self.x2]

    def detail(self) -> Dict[str, object]:
        return {
            "leaf_cycle": self.cycle_id,
            "y1": self.y1,
            "x1": self.x1,
            "x2": self.x2,
            "x3": self.x3,
            "I": sorted(self.attachments),
            "J": sorted(self.chords),
        }


def _forced_sides(graph: Graph, leaf: _LeafCycle, structure: BasicStructure) -> Dict[int, Side]:
    """Sides of the edges on the leaf cycle and at its degree-2 neighbours."""
    if leaf.chord_case:
        matched_pair, pivot = (leaf.x1, leaf.x2), leaf.x2
    else:
        assert leaf.x3 is not None
        matched_pair, pivot = (leaf.x2, leaf.x3), leaf.x3
    matched_edge = _edge(graph, *matched_pair)
    forced = {edge_id: Side.Forest for edge_id in leaf.cycle.edges}
    forced[matched_edge] = Side.Matching

    pivot_chord = structure.partner[pivot]
    for inner, chord in leaf.chords.items():
        forest_end = pivot if inner == pivot_chord else min(chord.ends)
        for end in chord.ends:
            forced[_edge(graph, inner, end)] = Side.Forest if end == forest_end else Side.Matching

    for inner, attachment in leaf.attachments.items():
        near_edge, far_edge = _edge(graph, inner, attachment.near), _edge(graph, inner, attachment.far)
        if inner == leaf.y1:
            forced[near_edge] = Side.Forest
            if leaf.chord_case:
                forced[far_edge] = Side.Forest
        elif inner == leaf.y2 and not leaf.chord_case:
            forced[near_edge] = Side.Forest
        else:
            forced[near_edge] = Side.Matching
            forced[far_edge] = Side.Forest
    return forced


def _reduced_graph(graph: Graph, leaf: _LeafCycle, trace: ReductionTrace, index: int) -> Tuple[Graph, int]:
    """Delete the leaf cycle and its 2-chords, then reattach the other degree-2 neighbours."""
    step = trace.step(index)
    child = graph.without_vertices(set(leaf.cycle.vertices) | set(leaf.chords))
    merged = -1
    reattached = sorted(leaf.attachments)
    if not leaf.chord_case:
        merged_shrink = shrink(child, [leaf.y1, leaf.y2])
        child, merged = merged_shrink.graph, merged_shrink.vertex
        reattached = [inner for inner in reattached if inner not in (leaf.y1, leaf.y2)]

    for inner in reattached:
        attachment = leaf.attachments[inner]
        split = subdivide(child, attachment.far_edge)
        child, _ = split.graph.with_edge(inner, split.vertex)
        step.copied[attachment.far_edge] = [split.half_at[attachment.far_next]]
        step.required_forest.append(split.half_at[attachment.far])
    return child, merged


def _predicted_bc_edges(structure: BasicStructure, leaf: _LeafCycle) -> Set[Tuple[int, int]]:
    edges = {edge for edge in bc_graph(structure).edges if leaf.cycle_id not in edge}
    if not leaf.chord_case:
        first = structure.cycle_of[leaf.attachments[leaf.y1].far]
        second = structure.cycle_of[leaf.attachments[leaf.y2].far]
        if first != second:
            edges.add((min(first, second), max(first, second)))
    return edges


def _decompose(
    graph: Graph,
    structure: BasicStructure,
    collection: ConnectorCollection,
    trace: ReductionTrace,
    parent: Optional[int],
    check: bool,
) -> Sides:
    if len(structure.basic_cycles) == 1:
        return _single_cycle(graph, structure, trace, parent)

    extended = spanning_collection(structure, collection)
    try:
        leaf = _LeafCycle(graph, structure, extended)
    except InternalInvariantBroken as error:
        raise trace.broken(str(error), graph) from error

    kind = StepKind.LeafCycleChordCase if leaf.chord_case else StepKind.LeafCycleMergeCase
    index = trace.record(kind, graph, parent, **leaf.detail())
    step = trace.step(index)
    step.forced = _forced_sides(graph, leaf, structure)
    child, merged = _reduced_graph(graph, leaf, trace, index)
    step.phi_after = phi(child)
    if not leaf.chord_case:
        step.detail["merged_vertex"] = merged

    try:
        child_structure = analyze(child)
        child_collection = ConnectorCollection.of(child_structure, extended.without(leaf.y1).connectors)
    except (NotInClassH, NotAConnector) as error:
        raise trace.broken(f"Reduced graph left class H: {error}", child) from error

    if check:
        if step.phi_after >= step.phi_before:
            raise trace.broken("Reduction did not decrease |V| + |E|.", graph)
        predicted = _predicted_bc_edges(structure, leaf)
        actual = bc_graph(child_structure)
        if set(actual.nodes) != set(structure.cycle_ids()) - {leaf.cycle_id} or set(actual.edges) != predicted:
            raise trace.broken(f"BC-graph of the reduced graph is {actual.edges}, expected {sorted(predicted)}.", child)

    child_sides = _decompose(child, child_structure, child_collection, trace, index, check)
    try:
        sides = step.lift(child_sides)
    except InternalInvariantBroken as error:
        raise trace.broken(str(error), graph) from error

    if check:
        report = verify_decomposition(
            graph, TwoDecomposition.from_sides(sides, DecompositionMode.Forest), structure, extended.connectors
        )
        if not report.valid:
            raise trace.broken(f"Lifted decomposition fails {report.failures[0].detail}.", graph)
    return sides


def decompose_H(
    graph: Graph,
    collection: Union[ConnectorCollection, Iterable[int], None] = None,
    check_subproblems: bool = True,
    trace: Optional[ReductionTrace] = None,
    parent: Optional[int] = None,
) -> Tuple[TwoDecomposition, ReductionTrace]:
    """Forest and matching with one matching edge per basic cycle.

    Every connector of ``collection`` ends up full or adjacent to a full
    vertex.

    Args:
        graph: A graph of class H.
        collection: Simple connector collection whose BC-graph is a forest.
        check_subproblems: Re-check every reduced graph and every lifted decomposition.
        trace: Trace to append to; a new one when omitted.
        parent: Step of ``trace`` this decomposition lifts into.

    Raises:
        PreconditionViolated: The graph is not in H, or the collection is not simple or spans a cycle.
        InternalInvariantBroken: A property guaranteed by the construction did not hold.
    """
    try:
        structure = analyze(graph)
    except NotInClassH as error:
        raise PreconditionViolated(str(error)) from error
    if isinstance(collection, ConnectorCollection):
        members: Iterable[int] = collection.connectors
    else:
        members = collection or ()
    try:
        chosen = ConnectorCollection.of(structure, members)
    except NotAConnector as error:
        raise PreconditionViolated(str(error)) from error
    # rejects a non-simple collection or one whose BC-graph has a cycle
    spanning_collection(structure, chosen)

    trace = trace if trace is not None else ReductionTrace()
    sides = _decompose(graph, structure, chosen, trace, parent, check_subproblems)
    decomposition = TwoDecomposition.from_sides(sides, DecompositionMode.Forest)
    report = verify_decomposition(graph, decomposition, structure, chosen.connectors)
    if not report.valid:
        raise trace.broken(f"Decomposition of class H graph fails {report.failures[0].check.value}.", graph)
    logger.debug(f"decompose_H finished on {graph} with {len(decomposition.matching_edges)} matching edges")
    return decomposition, trace
