import random
from typing import Any, Callable, Iterator, List, Mapping, Tuple, Union

from loguru import logger

from class_check.membership import in_S, is_thick_cacti_collection, minus_degree_two
from class_check.reports import ClassReport
from generators.parameters import DEFAULT_MAX_ATTEMPTS, HParams, ThickCactiParams, parse_params
from graph_core.exceptions import GeneratorExhausted
from graph_core.Graph import Graph
from h_structure.analysis import in_H


class _Builder:
    """Edge list with fresh vertex ids handed out in order."""

    def __init__(self) -> None:
        self.pairs: List[Tuple[int, int]] = []
        self.next_vertex = 0

    def cycle(self, length: int) -> List[int]:
        vertices = list(range(self.next_vertex, self.next_vertex + length))
        self.next_vertex += length
        self.pairs += [(vertex, vertices[(index + 1) % length]) for index, vertex in enumerate(vertices)]
        return vertices

    def thread(self, start: int, end: int, inner: int) -> None:
        previous = start
        for _ in range(inner):
            self.pairs.append((previous, self.next_vertex))
            previous = self.next_vertex
            self.next_vertex += 1
        self.pairs.append((previous, end))

    def graph(self) -> Graph:
        return Graph.from_edge_list(self.pairs, isolated=range(self.next_vertex))


def _shuffled_slots(rng: random.Random, lengths: List[int], builder: _Builder) -> List[List[int]]:
    slots = []
    for length in lengths:
        cycle = builder.cycle(length)
        rng.shuffle(cycle)
        slots.append(cycle)
    return slots


def _build_h(params: HParams, rng: random.Random) -> Graph:
    builder = _Builder()
    slots = _shuffled_slots(rng, params.cycle_lengths, builder)
    for first, second in params.connectors:
        builder.thread(slots[first].pop(), slots[second].pop(), 1)
    for free in slots:
        for index in range(0, len(free), 2):
            builder.thread(free[index], free[index + 1], 1)
    return builder.graph()


def _build_thick_cacti(params: ThickCactiParams, rng: random.Random) -> Graph:
    builder = _Builder()
    if not params.cycle_lengths:
        builder.cycle(params.plain_length)
        return builder.graph()

    slots = _shuffled_slots(rng, params.cycle_lengths, builder)
    for first, second in params.bridges:
        builder.thread(slots[first].pop(), slots[second].pop(), 0)
    # Threads first pair vertices of one cycle, the odd one out of each cycle is paired across cycles
    leftovers = []
    for free in slots:
        if len(free) % 2:
            leftovers.append(free.pop())
        for index in range(0, len(free), 2):
            builder.thread(free[index], free[index + 1], rng.randint(*params.thread_length))
    rng.shuffle(leftovers)
    for index in range(0, len(leftovers), 2):
        builder.thread(leftovers[index], leftovers[index + 1], rng.randint(*params.thread_length))
    return builder.graph()


def _thick_cacti_report(graph: Graph) -> ClassReport:
    report = in_S(graph, 2, 3)
    if not report.member:
        return report
    return is_thick_cacti_collection(minus_degree_two(graph))


def _filtered(
    build: Callable[[random.Random], Graph],
    accept: Callable[[Graph], ClassReport],
    seed: int,
    count: int,
    max_attempts: int,
    name: str,
) -> Iterator[Graph]:
    rng = random.Random(seed)
    for emitted in range(count):
        for attempt in range(max_attempts):
            candidate = build(rng)
            report = accept(candidate)
            if report.member:
                yield candidate
                break
            assert report.violation is not None
            logger.debug(f"{name} candidate {emitted}.{attempt} rejected: {report.violation.kind.value}")
        else:
            logger.warning(f"{name}: no candidate accepted in {max_attempts} attempts (seed {seed}).")
            raise GeneratorExhausted(f"{name}: every one of {max_attempts} candidates was rejected.")
    logger.info(f"{name}: {count} graphs emitted for seed {seed}.")


def gen_h(params: Union[HParams, Mapping[str, Any]], max_attempts: int = DEFAULT_MAX_ATTEMPTS) -> Iterator[Graph]:
    """Stream ``params.count`` graphs of class H with the requested shape.

    Connector and 2-chord attachment points are drawn at random, then the
    candidate goes through in_H; rejected candidates are drawn again. The
    stream only depends on the parameters, seed included.

    Raises:
        SpecInfeasible: The parameters cannot describe a graph of class H.
        GeneratorExhausted: ``max_attempts`` consecutive candidates were rejected.
    """
    shape = parse_params(HParams, params)
    return _filtered(
        lambda rng: _build_h(shape, rng), in_H, shape.seed, shape.count, max_attempts, "class H generator"
    )


def gen_thick_cacti_s23(
    params: Union[ThickCactiParams, Mapping[str, Any]], max_attempts: int = DEFAULT_MAX_ATTEMPTS
) -> Iterator[Graph]:
    """Stream graphs of S(2,3) whose degree-3 part is a collection of thick cacti.

    Raises:
        SpecInfeasible: The parameters leave cycle vertices unpaired.
        GeneratorExhausted: ``max_attempts`` consecutive candidates were rejected.
    """
    shape = parse_params(ThickCactiParams, params)
    return _filtered(
        lambda rng: _build_thick_cacti(shape, rng),
        _thick_cacti_report,
        shape.seed,
        shape.count,
        max_attempts,
        "thick-cacti generator",
    )
