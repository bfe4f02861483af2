import abc
from typing import Any, List, Tuple, Type

from class_check.membership import in_S, is_claw_free, is_thick_cacti_collection, minus_degree_two
from decompose.class_h import decompose_H
from decompose.completion import complete_forest
from decompose.pipelines import decompose_auto, decompose_claw_free, decompose_thick_cacti
from decompose.ReductionTrace import ReductionTrace
from decompose.TwoDecomposition import TwoDecomposition
from graph_core.exceptions import PreconditionViolated
from graph_core.Graph import Graph
from h_structure.analysis import in_H


class Decomposer(metaclass=abc.ABCMeta):
    """A decomposition algorithm selectable by name."""

    @staticmethod
    @abc.abstractmethod
    def name() -> str:
        pass

    @staticmethod
    @abc.abstractmethod
    def accepts(graph: Graph) -> bool:
        """Whether the graph satisfies the algorithm's hypothesis."""

    @staticmethod
    @abc.abstractmethod
    def decompose(graph: Graph, **options: Any) -> Tuple[TwoDecomposition, ReductionTrace]:
        pass

    @staticmethod
    def possible_algorithms() -> List[str]:
        return [subclass.name() for subclass in Decomposer.__subclasses__()]

    @staticmethod
    def get(name: str) -> Type["Decomposer"]:
        for algorithm in Decomposer.__subclasses__():
            if algorithm.name() == name:
                return algorithm
        raise PreconditionViolated(f"Unknown algorithm {name}, expected one of {Decomposer.possible_algorithms()}.")


class ThickCactiDecomposer(Decomposer):
    @staticmethod
    def name() -> str:
        return "thick-cacti"

    @staticmethod
    def accepts(graph: Graph) -> bool:
        return in_S(graph, 2, 3).member and is_thick_cacti_collection(minus_degree_two(graph)).member

    @staticmethod
    def decompose(graph: Graph, **options: Any) -> Tuple[TwoDecomposition, ReductionTrace]:
        return decompose_thick_cacti(graph, **options)


class ClawFreeDecomposer(Decomposer):
    @staticmethod
    def name() -> str:
        return "claw-free"

    @staticmethod
    def accepts(graph: Graph) -> bool:
        return in_S(graph, 1, 3).member and is_claw_free(graph).member

    @staticmethod
    def decompose(graph: Graph, **options: Any) -> Tuple[TwoDecomposition, ReductionTrace]:
        return decompose_claw_free(graph, **options)


class ClassHDecomposer(Decomposer):
    """Forest plus matching; ``complete=True`` grows the forest into a spanning tree."""

    @staticmethod
    def name() -> str:
        return "h"

    @staticmethod
    def accepts(graph: Graph) -> bool:
        return in_H(graph).member

    @staticmethod
    def decompose(graph: Graph, **options: Any) -> Tuple[TwoDecomposition, ReductionTrace]:
        complete = options.pop("complete", False)
        options.pop("cap", None)
        options.pop("max_edges", None)
        options.pop("node_budget", None)
        decomposition, trace = decompose_H(graph, **options)
        if complete:
            decomposition = complete_forest(graph, decomposition)
        return decomposition, trace


class AutoDecomposer(Decomposer):
    @staticmethod
    def name() -> str:
        return "auto"

    @staticmethod
    def accepts(graph: Graph) -> bool:
        return in_S(graph, 1, 3).member

    @staticmethod
    def decompose(graph: Graph, **options: Any) -> Tuple[TwoDecomposition, ReductionTrace]:
        return decompose_auto(graph, **options)
