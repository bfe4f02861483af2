from enum import Enum
from typing import Any, Dict, List, Mapping, Optional

from loguru import logger
from pydantic import BaseModel

from decompose.TwoDecomposition import DecompositionMode, Side, Sides, TwoDecomposition
from graph_core.exceptions import InternalInvariantBroken
from graph_core.Graph import Graph
from oracle.parameters import phi


class StepKind(str, Enum):
    ParallelEdgeReduction = "parallel_edge_reduction"
    LeafPrune = "leaf_prune"
    PathContraction = "path_contraction"
    BridgeSubdivision = "bridge_subdivision"
    SingleCycleBase = "single_cycle_base"
    LeafCycleChordCase = "leaf_cycle_chord_case"
    LeafCycleMergeCase = "leaf_cycle_merge_case"
    ClawFreeStep = "claw_free_step"
    CutEdgeSplit = "cut_edge_split"
    PlainCycleBase = "plain_cycle_base"
    SmallCaseBase = "small_case_base"
    ForestCompletion = "forest_completion"


# Steps whose child is a strictly smaller instance of the same problem.
RECURSIVE_KINDS = frozenset(
    {
        StepKind.ParallelEdgeReduction,
        StepKind.LeafPrune,
        StepKind.LeafCycleChordCase,
        StepKind.LeafCycleMergeCase,
        StepKind.ClawFreeStep,
        StepKind.CutEdgeSplit,
    }
)


class ReductionStep(BaseModel):
    """One rewrite of a parent graph into child graphs, with the rule lifting the children back.

    A parent edge named in ``forced`` gets that side. A parent edge in
    ``copied`` goes to the matching iff one of its child edges does, and one
    in ``inverted`` takes the side opposite to its child edge. Any other
    parent edge survives in a child under the same id and copies its side.
    """

    kind: StepKind
    parent: Optional[int]
    phi_before: int
    phi_after: Optional[int] = None
    parent_edges: List[int]
    forced: Dict[int, Side] = {}
    copied: Dict[int, List[int]] = {}
    inverted: Dict[int, int] = {}
    # child edges that must lie in the child forest for the lift to be valid
    required_forest: List[int] = []
    detail: Dict[str, Any] = {}

    def lift(self, child: Mapping[int, Side]) -> Sides:
        for edge_id in self.required_forest:
            if child.get(edge_id) != Side.Forest:
                raise InternalInvariantBroken(
                    f"{self.kind.value}: child edge {edge_id} should be in the forest but is {child.get(edge_id)}."
                )
        sides: Sides = {}
        for edge_id in self.parent_edges:
            if edge_id in self.forced:
                sides[edge_id] = self.forced[edge_id]
            elif edge_id in self.copied:
                images = [child.get(image) for image in self.copied[edge_id]]
                if None in images:
                    raise InternalInvariantBroken(f"{self.kind.value}: images of edge {edge_id} were not decomposed.")
                sides[edge_id] = Side.Matching if Side.Matching in images else Side.Forest
            elif edge_id in self.inverted:
                image = child.get(self.inverted[edge_id])
                if image is None:
                    raise InternalInvariantBroken(f"{self.kind.value}: image of edge {edge_id} was not decomposed.")
                sides[edge_id] = image.flipped()
            elif edge_id in child:
                sides[edge_id] = child[edge_id]
            else:
                raise InternalInvariantBroken(f"{self.kind.value}: no rule lifts edge {edge_id}.")
        return sides


class ReductionTrace(BaseModel):
    """Steps in pre-order: a step always comes after the step it was derived from."""

    steps: List[ReductionStep] = []

    def record(self, kind: StepKind, graph: Graph, parent: Optional[int], **detail: Any) -> int:
        self.steps.append(
            ReductionStep(kind=kind, parent=parent, phi_before=phi(graph), parent_edges=graph.edge_ids(), detail=detail)
        )
        index = len(self.steps) - 1
        logger.debug(f"step {index} {kind.value} (parent {parent}) phi={phi(graph)} {detail}")
        return index

    def step(self, index: int) -> ReductionStep:
        return self.steps[index]

    def children(self, index: int) -> List[int]:
        return [position for position, step in enumerate(self.steps) if step.parent == index]

    def replay(self, mode: DecompositionMode) -> TwoDecomposition:
        """Lift every step again, innermost first, and return the decomposition of the root."""
        if not self.steps:
            return TwoDecomposition(forest_edges=[], matching_edges=[], mode=mode)
        lifted: Dict[int, Sides] = {}
        pending: Dict[int, Sides] = {}
        for index in reversed(range(len(self.steps))):
            step = self.steps[index]
            lifted[index] = step.lift(pending.pop(index, {}))
            if step.parent is not None:
                pending.setdefault(step.parent, {}).update(lifted[index])
        return TwoDecomposition.from_sides(lifted[0], mode)

    def broken(self, message: str, graph: Graph) -> InternalInvariantBroken:
        """Error for a failed guarantee, carrying the steps so far and the graph at hand."""
        return InternalInvariantBroken(message, trace=self.as_list(), graph=graph.as_dict())

    def phi_decreases(self) -> bool:
        return all(
            step.phi_after is not None and step.phi_after < step.phi_before
            for step in self.steps
            if step.kind in RECURSIVE_KINDS
        )

    def as_list(self) -> List[Dict[str, Any]]:
        return [step.dict() for step in self.steps]
