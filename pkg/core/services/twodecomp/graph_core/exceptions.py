from typing import Any, Dict, List, Optional


class TwoDecompError(Exception):
    """Base of every error raised by the twodecomp packages."""

    exit_code = 1


class PreconditionError(TwoDecompError, ValueError):
    """The input does not satisfy what the called operation requires."""

    exit_code = 2


class LoopRejected(PreconditionError):
    pass


class EmptySet(PreconditionError):
    pass


class UnknownEdge(PreconditionError, KeyError):
    pass


class UnknownVertex(PreconditionError, KeyError):
    pass


class NotACycle(PreconditionError):
    pass


class NotInClassH(PreconditionError):
    pass


class NotAConnector(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class SpecInfeasible(PreconditionError):
    pass


class GeneratorExhausted(TwoDecompError):
    exit_code = 2


class BudgetExceeded(TwoDecompError):
    exit_code = 4

    def __init__(self, message: str, budget: Optional[int] = None) -> None:
        super().__init__(message)
        self.budget = budget


class InternalInvariantBroken(TwoDecompError, AssertionError):
    """A property that the construction guarantees did not hold at runtime.

    Always a bug. Carries what is needed to reproduce it: the reduction trace
    up to the failure and the graph being processed.
    """

    exit_code = 3

    def __init__(
        self, message: str, trace: Optional[List[Dict[str, Any]]] = None, graph: Optional[Dict[str, Any]] = None
    ) -> None:
        super().__init__(message)
        self.trace = trace or []
        self.graph = graph

    def as_dict(self) -> Dict[str, Any]:
        return {"error": str(self), "graph": self.graph, "trace": self.trace}


class CannotComplete(InternalInvariantBroken):
    pass
