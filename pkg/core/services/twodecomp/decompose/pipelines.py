"""Spanning tree plus matching for thick cacti in S_{2,3} and for claw-free graphs in S_{1,3}.

Both recursions reduce the graph, decompose the smaller one and lift the
result through a ``ReductionStep``. ``decompose_auto`` prunes leaves first and
then picks whichever recursion applies to what is left.
"""
from typing import List, NamedTuple, Optional, Tuple

from loguru import logger

from class_check.membership import in_S, is_claw_free, is_thick_cacti_collection, minus_degree_two
from class_check.reports import ClassReport
from decompose.class_h import decompose_H
from decompose.completion import complete_forest, prune_leaves
from decompose.ReductionTrace import ReductionTrace, StepKind
from decompose.TwoDecomposition import DecompositionMode, Side, Sides, TwoDecomposition
from decompose.verification import verify_decomposition
from graph_core.cycles import DEFAULT_CYCLE_CAP
from graph_core.exceptions import PreconditionViolated
from graph_core.Graph import Graph
from graph_core.operations import bridges, components, subdivide
from oracle.brute_force import DEFAULT_MAX_EDGES, DEFAULT_NODE_BUDGET, brute_force
from oracle.parameters import phi


class _Limits(NamedTuple):
    cap: int
    max_edges: int
    node_budget: int
    check: bool


def _require(report: ClassReport, what: str) -> None:
    if not report.member:
        assert report.violation is not None
        raise PreconditionViolated(
            f"Graph is not {what}: {report.violation.kind.value} at {report.violation.vertices} "
            f"{report.violation.detail}".rstrip()
        )


def _expect(report: ClassReport, what: str, graph: Graph, trace: ReductionTrace) -> None:
    if not report.member:
        assert report.violation is not None
        raise trace.broken(f"Reduced graph is not {what}: {report.violation.kind.value}", graph)


def _is_thick_cacti_s23(graph: Graph, cap: int) -> bool:
    return in_S(graph, 2, 3, cap).member and is_thick_cacti_collection(minus_degree_two(graph)).member


def _finish(graph: Graph, sides: Sides, trace: ReductionTrace, name: str) -> TwoDecomposition:
    decomposition = TwoDecomposition.from_sides(sides, DecompositionMode.SpanningTree)
    report = verify_decomposition(graph, decomposition)
    if not report.valid:
        raise trace.broken(f"{name} produced an invalid decomposition: {report.failures[0].detail}", graph)
    logger.debug(f"{name} decomposed {graph} in {len(trace.steps)} steps")
    return decomposition


def _small_case(graph: Graph, trace: ReductionTrace, parent: Optional[int], limits: _Limits) -> Sides:
    index = trace.record(StepKind.SmallCaseBase, graph, parent)
    result = brute_force(
        graph, DecompositionMode.SpanningTree, max_edges=limits.max_edges, node_budget=limits.node_budget
    )
    if result.witness is None:
        raise trace.broken("Exhaustive search found no spanning tree plus matching.", graph)
    step = trace.step(index)
    step.forced = result.witness.sides()
    return step.lift({})


def _plain_cycle(graph: Graph, trace: ReductionTrace, parent: Optional[int]) -> Sides:
    index = trace.record(StepKind.PlainCycleBase, graph, parent)
    step = trace.step(index)
    matched = min(graph.edge_ids())
    step.forced = {edge_id: Side.Matching if edge_id == matched else Side.Forest for edge_id in graph.edge_ids()}
    return step.lift({})


def _parallel_pair(graph: Graph) -> Optional[Tuple[int, int]]:
    """Smallest pair of parallel edges whose ends both have degree 3."""
    for parallel in graph.parallel_classes():
        u, v = graph.endpoints(parallel[0])
        if len(parallel) == 2 and graph.degree(u) == 3 and graph.degree(v) == 3:
            return parallel[0], parallel[1]
    return None


def _reduce_parallel_pair(
    graph: Graph, pair: Tuple[int, int], trace: ReductionTrace, parent: Optional[int]
) -> Tuple[Graph, int]:
    """G - {x, y} + uv for a digon xy; ``e`` goes to the tree and ``e'`` to the matching."""
    tree_edge, matching_edge = pair
    x, y = graph.endpoints(tree_edge)
    (x_edge,) = [edge_id for edge_id in graph.incident(x) if edge_id not in pair]
    (y_edge,) = [edge_id for edge_id in graph.incident(y) if edge_id not in pair]
    u, v = graph.other_end(x_edge, x), graph.other_end(y_edge, y)
    if u == v:
        raise trace.broken(f"Both sides of the digon {x}{y} lead to vertex {u}.", graph)

    index = trace.record(StepKind.ParallelEdgeReduction, graph, parent, x=x, y=y, u=u, v=v)
    child, joined = graph.without_vertices([x, y]).with_edge(u, v)
    step = trace.step(index)
    step.forced = {tree_edge: Side.Forest, matching_edge: Side.Matching}
    step.copied = {x_edge: [joined], y_edge: [joined]}
    # uv is a cut edge of the child, so every spanning tree holds it
    step.required_forest = [joined]
    step.phi_after = phi(child)
    return child, index


def _degree_two_paths(graph: Graph) -> List[Tuple[List[int], int]]:
    """Maximal runs x1..xk of degree-2 vertices with k >= 2, and the heavy end ``v`` after ``xk``.

    Runs start next to their smaller heavy end.
    """
    light = [vertex for vertex in graph.sorted_vertices() if graph.degree(vertex) == 2]
    inside = graph.induced(light)
    runs = []
    for part in components(inside):
        if len(part) < 2:
            continue
        ends = sorted(vertex for vertex in part if inside.degree(vertex) == 1)
        if len(ends) != 2:
            continue
        outer = {end: [n for n in graph.neighbors(end) if n not in part][0] for end in ends}
        first = min(ends, key=lambda end: (outer[end], end))
        last = ends[1] if first == ends[0] else ends[0]
        run = [first]
        while run[-1] != last:
            run.append(next(n for n in inside.neighbors(run[-1]) if n not in run))
        runs.append((run, outer[last]))
    return runs


def _contract_paths(graph: Graph, trace: ReductionTrace, parent: int) -> Tuple[Graph, int]:
    """Shorten every maximal degree-2 run to a single vertex; the run keeps its first vertex."""
    index = trace.record(StepKind.PathContraction, graph, parent)
    step = trace.step(index)
    current = graph
    for run, heavy_end in _degree_two_paths(graph):
        for previous, following in zip(run, run[1:]):
            step.forced[graph.edges_between(previous, following)[0]] = Side.Forest
        current, joined = current.without_vertices(run[1:]).with_edge(run[0], heavy_end)
        step.copied[graph.edges_between(run[-1], heavy_end)[0]] = [joined]
        step.detail.setdefault("runs", []).append(run)
    step.phi_after = phi(current)
    return current, index


def _subdivide_bridges(graph: Graph, trace: ReductionTrace, parent: int) -> Tuple[Graph, List[int], int]:
    """Subdivide every bridge of G - V2(G); the new vertices are connectors of the result."""
    index = trace.record(StepKind.BridgeSubdivision, graph, parent)
    step = trace.step(index)
    current = graph
    added = []
    for edge_id in sorted(bridges(minus_degree_two(graph))):
        split = subdivide(current, edge_id)
        current = split.graph
        added.append(split.vertex)
        step.copied[edge_id] = sorted(split.half_at.values())
    step.detail["collection"] = added
    step.phi_after = phi(current)
    return current, added, index


def _through_class_h(graph: Graph, trace: ReductionTrace, parent: Optional[int], limits: _Limits) -> Sides:
    completion = trace.record(StepKind.ForestCompletion, graph, parent)
    contracted, contraction = _contract_paths(graph, trace, completion)
    subdivided, collection, subdivision = _subdivide_bridges(contracted, trace, contraction)
    try:
        decomposition, _ = decompose_H(subdivided, collection, limits.check, trace=trace, parent=subdivision)
    except PreconditionViolated as error:
        raise trace.broken(f"Contracted graph is not in class H: {error}", subdivided) from error

    sides = trace.step(subdivision).lift(decomposition.sides())
    sides = trace.step(contraction).lift(sides)
    completed = complete_forest(graph, TwoDecomposition.from_sides(sides, DecompositionMode.Forest))
    step = trace.step(completion)
    step.forced = {edge_id: Side.Forest for edge_id in completed.forest_edges if sides[edge_id] == Side.Matching}
    step.phi_after = phi(graph)
    return step.lift(sides)


def _thick_cacti(graph: Graph, trace: ReductionTrace, parent: Optional[int], limits: _Limits) -> Sides:
    if graph.size() <= 3:
        return _small_case(graph, trace, parent, limits)
    if all(degree == 2 for degree in graph.degrees().values()):
        return _plain_cycle(graph, trace, parent)
    pair = _parallel_pair(graph)
    if pair is not None:
        child, index = _reduce_parallel_pair(graph, pair, trace, parent)
        if limits.check:
            _expect(in_S(child, 2, 3, limits.cap), "in S_{2,3}", child, trace)
            _expect(is_thick_cacti_collection(minus_degree_two(child)), "a thick cacti collection", child, trace)
        return trace.step(index).lift(_thick_cacti(child, trace, index, limits))
    if not graph.is_simple():
        raise trace.broken("Parallel edges left with an end of degree 2.", graph)
    return _through_class_h(graph, trace, parent, limits)


def _claw_free_triple(graph: Graph) -> Optional[Tuple[int, int, int, int]]:
    """(v, x, y, z): N(v) = {x, y, z}, d(x) = 2, xy an edge and yz not."""
    for v in graph.sorted_vertices():
        if graph.degree(v) != 3:
            continue
        around = sorted(graph.neighbors(v))
        for x in around:
            if graph.degree(x) != 2:
                continue
            for y in around:
                if y == x or not graph.is_adjacent(x, y):
                    continue
                (z,) = [n for n in around if n not in (x, y)]
                if not graph.is_adjacent(y, z):
                    return v, x, y, z
    return None


def _split_cut_edge(
    graph: Graph, edge_id: int, trace: ReductionTrace, parent: Optional[int], limits: _Limits
) -> Sides:
    index = trace.record(StepKind.CutEdgeSplit, graph, parent, edge=edge_id)
    child = graph.without_edges([edge_id])
    step = trace.step(index)
    step.forced = {edge_id: Side.Forest}
    step.phi_after = phi(child)
    merged: Sides = {}
    for part in components(child):
        piece = child.induced(part)
        if limits.check and piece.order() > 1:
            _expect(in_S(piece, 1, 3, limits.cap), "in S_{1,3}", piece, trace)
        merged.update(_claw_free(piece, trace, index, limits))
    return step.lift(merged)


def _claw_free(graph: Graph, trace: ReductionTrace, parent: Optional[int], limits: _Limits) -> Sides:
    if graph.order() <= 2:
        return _small_case(graph, trace, parent, limits)
    pair = _parallel_pair(graph)
    if pair is not None:
        child, index = _reduce_parallel_pair(graph, pair, trace, parent)
        if limits.check:
            _expect(in_S(child, 1, 3, limits.cap), "in S_{1,3}", child, trace)
        return trace.step(index).lift(_claw_free(child, trace, index, limits))
    cut = sorted(bridges(graph))
    if cut:
        return _split_cut_edge(graph, cut[0], trace, parent, limits)
    if all(degree == 2 for degree in graph.degrees().values()):
        return _plain_cycle(graph, trace, parent)

    triple = _claw_free_triple(graph)
    if triple is None:
        # only the diamond lacks such a vertex
        if graph.size() <= limits.max_edges:
            return _small_case(graph, trace, parent, limits)
        raise trace.broken("No degree-3 vertex with a degree-2 neighbour in a triangle.", graph)
    v, x, y, z = triple
    index = trace.record(StepKind.ClawFreeStep, graph, parent, v=v, x=x, y=y, z=z)
    child, joined = graph.without_vertices([x, v]).with_edge(y, z)
    step = trace.step(index)
    step.forced = {graph.edges_between(y, v)[0]: Side.Forest}
    step.copied = {graph.edges_between(v, z)[0]: [joined], graph.edges_between(x, y)[0]: [joined]}
    step.inverted = {graph.edges_between(v, x)[0]: joined}
    step.phi_after = phi(child)
    if limits.check:
        _expect(in_S(child, 1, 3, limits.cap), "in S_{1,3}", child, trace)
        _expect(is_claw_free(child), "claw-free", child, trace)
    return step.lift(_claw_free(child, trace, index, limits))


def decompose_thick_cacti(
    graph: Graph,
    check_subproblems: bool = True,
    cap: int = DEFAULT_CYCLE_CAP,
    max_edges: int = DEFAULT_MAX_EDGES,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Tuple[TwoDecomposition, ReductionTrace]:
    """Spanning tree and matching of a graph in S_{2,3} whose degree-3 part is a collection of thick cacti.

    Digons are removed first. A simple graph has its degree-2 runs shortened and
    the bridges of its degree-3 part subdivided, which lands in class H with
    the new vertices as connector collection; that decomposition is lifted
    back and its forest completed to a spanning tree.

    Raises:
        PreconditionViolated: The graph is not in S_{2,3} or G - V2(G) is not a thick cacti collection.
        InternalInvariantBroken: A guarantee of the construction failed.
    """
    _require(in_S(graph, 2, 3, cap), "in S_{2,3}")
    _require(is_thick_cacti_collection(minus_degree_two(graph)), "a thick cacti collection once V2 is removed")
    trace = ReductionTrace()
    sides = _thick_cacti(graph, trace, None, _Limits(cap, max_edges, node_budget, check_subproblems))
    return _finish(graph, sides, trace, "thick-cacti"), trace


def decompose_claw_free(
    graph: Graph,
    check_subproblems: bool = True,
    cap: int = DEFAULT_CYCLE_CAP,
    max_edges: int = DEFAULT_MAX_EDGES,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Tuple[TwoDecomposition, ReductionTrace]:
    """Spanning tree and matching of a claw-free graph in S_{1,3}.

    Raises:
        PreconditionViolated: The graph is not in S_{1,3} or has an induced claw.
        InternalInvariantBroken: A guarantee of the construction failed.
    """
    _require(in_S(graph, 1, 3, cap), "in S_{1,3}")
    _require(is_claw_free(graph), "claw-free")
    trace = ReductionTrace()
    sides = _claw_free(graph, trace, None, _Limits(cap, max_edges, node_budget, check_subproblems))
    return _finish(graph, sides, trace, "claw-free"), trace


def decompose_auto(
    graph: Graph,
    check_subproblems: bool = True,
    cap: int = DEFAULT_CYCLE_CAP,
    max_edges: int = DEFAULT_MAX_EDGES,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> Tuple[TwoDecomposition, ReductionTrace]:
    """Spanning tree and matching of any graph in S_{1,3} the constructive recursions or the oracle can handle.

    Raises:
        PreconditionViolated: The graph is not in S_{1,3}.
        BudgetExceeded: Neither recursion applies and the graph is too large for the oracle.
    """
    if graph.order() > 1:
        _require(in_S(graph, 1, 3, cap), "in S_{1,3}")
    limits = _Limits(cap, max_edges, node_budget, check_subproblems)
    trace = ReductionTrace()
    pruned, trace = prune_leaves(graph, trace)
    prune = 0 if trace.steps else None

    if pruned.size() == 0:
        sides: Sides = {}
    elif is_claw_free(pruned).member:
        logger.debug(f"auto: {pruned} is claw-free")
        sides = _claw_free(pruned, trace, prune, limits)
    elif _is_thick_cacti_s23(pruned, cap):
        logger.debug(f"auto: {pruned} is a thick cacti graph in S_2,3")
        sides = _thick_cacti(pruned, trace, prune, limits)
    else:
        logger.debug(f"auto: no recursion applies to {pruned}, using the oracle")
        sides = _small_case(pruned, trace, prune, limits)

    if prune is not None:
        sides = trace.step(prune).lift(sides)
    return _finish(graph, sides, trace, "auto"), trace
