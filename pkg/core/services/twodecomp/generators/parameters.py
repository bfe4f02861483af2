import random
from collections import Counter
from typing import Any, Dict, List, Mapping, Optional, Set, Tuple, Type, TypeVar, Union

import networkx as nx
from pydantic import BaseModel, ValidationError, conint, root_validator, validator

from graph_core.exceptions import SpecInfeasible

DEFAULT_MAX_ATTEMPTS = 200

ParamsModel = TypeVar("ParamsModel", bound=BaseModel)


def _ends_per_cycle(pairs: List[Tuple[int, int]], cycles: int) -> Dict[int, int]:
    ends: Dict[int, int] = Counter()
    for pair in pairs:
        for index in pair:
            if index not in range(cycles):
                raise ValueError(f"Cycle index {index} out of range, there are {cycles} cycles.")
            ends[index] += 1
    return ends


class HParams(BaseModel):
    """Shape of a class H instance.

    Cycle i gets ``cycle_lengths[i]`` vertices. Every connector joins two
    cycles by their indices; repeating a pair gives parallel connectors. The
    slots left on a cycle are paired by 2-chords, ``chords[i]`` of them when
    given.
    """

    cycle_lengths: List[conint(ge=3)]  # type: ignore
    connectors: List[Tuple[int, int]] = []
    chords: Optional[List[conint(ge=0)]] = None  # type: ignore
    n_cycles: Optional[int] = None
    count: conint(ge=1) = 1  # type: ignore
    seed: int = 0

    @root_validator(skip_on_failure=True)
    @classmethod
    def slots_add_up(cls: Type["HParams"], values: Any) -> Any:
        lengths, connectors, chords = values["cycle_lengths"], values["connectors"], values.get("chords")
        if not lengths:
            raise ValueError("At least one basic cycle is needed.")
        if values.get("n_cycles") not in (None, len(lengths)):
            raise ValueError(f"n_cycles is {values['n_cycles']} but {len(lengths)} cycle lengths are given.")
        if chords is not None and len(chords) != len(lengths):
            raise ValueError(f"{len(chords)} chord counts for {len(lengths)} cycles.")

        for first, second in connectors:
            if first == second:
                raise ValueError(f"Connector ({first}, {second}) joins a cycle to itself, that is a 2-chord.")
        ends = _ends_per_cycle(connectors, len(lengths))
        for index, length in enumerate(lengths):
            left = length - ends[index]
            if left < 0:
                raise ValueError(f"Cycle {index} has {length} vertices, no vertex left for {ends[index]} connectors.")
            if left % 2:
                raise ValueError(f"Cycle {index} has an odd number ({left}) of slots left for 2-chords.")
            if chords is not None and 2 * chords[index] != left:
                raise ValueError(f"Cycle {index} has {left} slots left, {chords[index]} 2-chords cannot fill them.")

        joined = nx.MultiGraph()
        joined.add_nodes_from(range(len(lengths)))
        joined.add_edges_from(connectors)
        if not nx.is_connected(joined):
            raise ValueError("The connectors leave the basic cycles in more than one component.")
        return values

    def order(self) -> int:
        return sum(self.cycle_lengths) * 3 // 2


class ThickCactiParams(BaseModel):
    """Shape of a graph whose degree-3 part is a collection of thick cacti.

    Cycles are joined by bridges given as pairs of cycle indices. Every other
    cycle vertex starts a thread of ``thread_length`` degree-2 vertices to a
    second free cycle vertex. Without cycles the graph is a plain cycle of
    ``plain_length`` vertices.
    """

    cycle_lengths: List[conint(ge=3)] = []  # type: ignore
    bridges: List[Tuple[int, int]] = []
    thread_length: Tuple[conint(ge=1), conint(ge=1)] = (1, 1)  # type: ignore
    plain_length: conint(ge=3) = 5  # type: ignore
    count: conint(ge=1) = 1  # type: ignore
    seed: int = 0

    @validator("thread_length")
    @classmethod
    def is_range(cls: Type["ThickCactiParams"], value: Tuple[int, int]) -> Tuple[int, int]:
        if value[0] > value[1]:
            raise ValueError(f"Thread length range {value} is empty.")
        return value

    @root_validator(skip_on_failure=True)
    @classmethod
    def slots_add_up(cls: Type["ThickCactiParams"], values: Any) -> Any:
        lengths, bridges = values["cycle_lengths"], values["bridges"]
        ends = _ends_per_cycle(bridges, len(lengths))
        for index, length in enumerate(lengths):
            if ends[index] > length:
                raise ValueError(f"Cycle {index} has {length} vertices, no vertex left for {ends[index]} bridges.")
        for first, second in bridges:
            if first == second:
                raise ValueError(f"Bridge ({first}, {second}) joins a cycle to itself.")
        free = sum(lengths) - 2 * len(bridges)
        if free % 2:
            raise ValueError(f"{free} cycle vertices are left for threads, an odd number cannot be paired.")
        return values


def parse_params(model: Type[ParamsModel], params: Union[ParamsModel, Mapping[str, Any]]) -> ParamsModel:
    """Validated parameters, any validation error reported as SpecInfeasible."""
    if isinstance(params, model):
        return params
    try:
        return model.parse_obj(params)
    except ValidationError as error:
        raise SpecInfeasible(f"Infeasible {model.__name__}: {error}") from error


def _random_tree(rng: random.Random, nodes: int) -> List[Tuple[int, int]]:
    return [(rng.randrange(child), child) for child in range(1, nodes)]


def random_h_params(seed: int, max_vertices: int = 40) -> HParams:
    """Random consistent class H shape with at most ``max_vertices`` vertices.

    The BC-graph is a random tree over the basic cycles, with some tree edges
    doubled into parallel connectors. Cycles touching two or more other cycles
    through at least three connectors are sometimes left without 2-chords.
    """
    budget = 2 * max_vertices // 3
    if budget < 4:
        raise SpecInfeasible(f"A class H instance needs at least 6 vertices, got {max_vertices}.")
    rng = random.Random(seed)
    n_cycles = rng.randint(1, max(1, budget // 5))
    connectors = _random_tree(rng, n_cycles)
    neighbours: Dict[int, Set[int]] = {index: set() for index in range(n_cycles)}
    for first, second in connectors:
        neighbours[first].add(second)
        neighbours[second].add(first)

    def lengths_for(pairs: List[Tuple[int, int]]) -> List[int]:
        ends = _ends_per_cycle(pairs, n_cycles)
        return [max(ends[index] + 2, 4 if ends[index] == 0 else 3) for index in range(n_cycles)]

    for pair in list(connectors):
        if rng.random() < 0.3 and sum(lengths_for(connectors + [pair])) <= budget:
            connectors.append(pair)

    ends = _ends_per_cycle(connectors, n_cycles)
    lengths = lengths_for(connectors)
    for index in range(n_cycles):
        if len(neighbours[index]) >= 2 and ends[index] >= 3 and rng.random() < 0.3:
            lengths[index] = ends[index]
    while sum(lengths) + 2 <= budget and rng.random() < 0.7:
        lengths[rng.randrange(n_cycles)] += 2
    return HParams(cycle_lengths=lengths, connectors=connectors, seed=seed)


def random_thick_cacti_params(seed: int, max_vertices: int = 30) -> ThickCactiParams:
    """Random consistent thick-cacti shape: cycles on a random bridge tree, threads of one or two vertices."""
    rng = random.Random(seed)
    if max_vertices < 6:
        return ThickCactiParams(plain_length=max(3, max_vertices), seed=seed)

    n_cycles = rng.randint(1, max(1, max_vertices // 6))
    lengths = [rng.randint(3, 4) for _ in range(n_cycles)]
    ends: Dict[int, int] = Counter()
    bridges: List[Tuple[int, int]] = []
    for child in range(1, n_cycles):
        parents = [parent for parent in range(child) if ends[parent] < lengths[parent] - 1]
        parent = rng.choice(parents) if parents else rng.randrange(child)
        if ends[parent] == lengths[parent]:
            lengths[parent] += 1
        bridges.append((parent, child))
        ends[parent] += 1
        ends[child] += 1
    if (sum(lengths) - 2 * len(bridges)) % 2:
        lengths[rng.randrange(n_cycles)] += 1

    free = sum(lengths) - 2 * len(bridges)
    longest = 2 if sum(lengths) + free <= max_vertices else 1
    return ThickCactiParams(cycle_lengths=lengths, bridges=bridges, thread_length=(1, longest), seed=seed)
