import functools
import multiprocessing
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel
from tqdm import tqdm

from class_check.membership import in_S, is_claw_free
from decompose.pipelines import decompose_auto
from decompose.TwoDecomposition import DecompositionMode
from decompose.verification import verify_decomposition
from graph_core.cycles import DEFAULT_CYCLE_CAP
from graph_core.exceptions import BudgetExceeded, TwoDecompError
from graph_core.formats import graph_to_graph6
from graph_core.Graph import Graph
from oracle.brute_force import DEFAULT_MAX_EDGES, DEFAULT_NODE_BUDGET, brute_force
from oracle.parameters import phi, rho
from scan.profile import PropertyReport, min_counterexample_profile

GraphCode = Union[str, Dict[str, Any]]


def encode(graph: Graph) -> GraphCode:
    """graph6 for simple graphs, the JSON edge list otherwise."""
    return graph_to_graph6(graph) if graph.is_simple() else graph.as_dict()


class ScanOptions(BaseModel):
    mode: DecompositionMode = DecompositionMode.SpanningTree
    count: bool = False
    constructive: bool = True
    cap: int = DEFAULT_CYCLE_CAP
    max_edges: int = DEFAULT_MAX_EDGES
    node_budget: int = DEFAULT_NODE_BUDGET


class ScanRecord(BaseModel):
    ordinal: int
    graph: GraphCode
    order: int
    size: int
    phi: int
    rho: int
    s13: bool
    s23: bool
    claw_free: bool
    profile: PropertyReport
    # None outside S_{1,3} and when the oracle ran out of budget
    decomposable: Optional[bool] = None
    matchings: Optional[int] = None
    budget_exceeded: bool = False
    # decompose_auto output re-verified, None when not attempted
    constructive_verified: Optional[bool] = None
    constructive_error: Optional[str] = None

    def is_counterexample(self) -> bool:
        return self.s13 and self.decomposable is False


class NearMiss(BaseModel):
    ordinal: int
    graph: GraphCode
    failed: List[str]


class ScanSummary(BaseModel):
    graphs: int = 0
    members_s13: int = 0
    members_s23: int = 0
    claw_free_members: int = 0
    decomposable: int = 0
    budget_exceeded: int = 0
    counterexamples: List[GraphCode] = []
    constructive_failures: List[int] = []
    min_phi: Optional[int] = None
    rho_histogram: Dict[int, int] = {}
    near_misses: List[NearMiss] = []

    def add(self, record: ScanRecord) -> None:
        self.graphs += 1
        if not record.s13:
            return
        self.members_s13 += 1
        self.members_s23 += record.s23
        self.claw_free_members += record.claw_free
        self.decomposable += bool(record.decomposable)
        self.budget_exceeded += record.budget_exceeded
        self.min_phi = record.phi if self.min_phi is None else min(self.min_phi, record.phi)
        self.rho_histogram[record.rho] = self.rho_histogram.get(record.rho, 0) + 1
        if record.constructive_verified is False:
            self.constructive_failures.append(record.ordinal)
        failed = record.profile.failed()
        if len(failed) <= 1:
            self.near_misses.append(NearMiss(ordinal=record.ordinal, graph=record.graph, failed=failed))
        if record.is_counterexample():
            logger.critical(f"Graph #{record.ordinal} {record.graph} is in S_1,3 and has no 2-decomposition.")
            self.counterexamples.append(record.graph)


def _constructive(graph: Graph, options: ScanOptions) -> Tuple[bool, Optional[str]]:
    try:
        decomposition, _ = decompose_auto(
            graph, cap=options.cap, max_edges=options.max_edges, node_budget=options.node_budget
        )
    except BudgetExceeded as error:
        return False, str(error)
    except TwoDecompError as error:
        logger.error(f"decompose_auto failed on {encode(graph)}: {error}")
        return False, f"{type(error).__name__}: {error}"
    report = verify_decomposition(graph, decomposition)
    return report.valid, None if report.valid else str([failure.detail for failure in report.failures])


def scan_graph(item: Tuple[int, Graph], options: ScanOptions) -> ScanRecord:
    """Everything the scan records about one graph; oracle budget overruns are recorded, not raised."""
    ordinal, graph = item
    s13 = in_S(graph, 1, 3, options.cap).member
    record = ScanRecord(
        ordinal=ordinal,
        graph=encode(graph),
        order=graph.order(),
        size=graph.size(),
        phi=phi(graph),
        rho=rho(graph),
        s13=s13,
        s23=s13 and in_S(graph, 2, 3, options.cap).member,
        claw_free=is_claw_free(graph).member,
        profile=min_counterexample_profile(graph),
    )
    if not s13:
        return record

    try:
        result = brute_force(
            graph, options.mode, count=options.count, max_edges=options.max_edges, node_budget=options.node_budget
        )
        record.decomposable = result.decomposable
        record.matchings = result.count
    except BudgetExceeded as error:
        logger.warning(f"Graph #{ordinal}: {error}")
        record.budget_exceeded = True
    if options.constructive:
        record.constructive_verified, record.constructive_error = _constructive(graph, options)
    return record


def scan_records(
    graphs: Iterable[Graph], options: ScanOptions, jobs: int = 1, progress: bool = False
) -> Iterator[ScanRecord]:
    """Scan records in input order, computed by ``jobs`` worker processes."""
    worker = functools.partial(scan_graph, options=options)
    if jobs <= 1:
        yield from tqdm(map(worker, enumerate(graphs)), desc="scan", unit="graph", disable=not progress)
        return
    with multiprocessing.Pool(processes=jobs) as pool:
        results = pool.imap(worker, enumerate(graphs), chunksize=16)
        yield from tqdm(results, desc="scan", unit="graph", disable=not progress)


def conjecture_scan(
    graphs: Iterable[Graph],
    mode: DecompositionMode = DecompositionMode.SpanningTree,
    jobs: int = 1,
    options: Optional[ScanOptions] = None,
    sink: Optional[Callable[[ScanRecord], None]] = None,
    progress: bool = False,
) -> ScanSummary:
    """Brute-force every member of S_{1,3} in the stream and summarise.

    Args:
        graphs: Graphs to scan; non-members are counted and profiled only.
        mode: Whether the oracle looks for a spanning tree or a forest.
        jobs: Worker processes; records keep the input order either way.
        options: Budgets and extra checks, ``mode`` overrides its mode.
        sink: Called with every record, in input order.
        progress: Show a progress bar on stderr.

    Returns:
        ScanSummary: Counts, counterexamples (expected none) and near misses.
    """
    settings = (options or ScanOptions()).copy(update={"mode": mode})
    summary = ScanSummary()
    for record in scan_records(graphs, settings, jobs, progress):
        summary.add(record)
        if sink is not None:
            sink(record)
    logger.info(
        f"Scanned {summary.graphs} graphs: {summary.members_s13} in S_1,3, {summary.decomposable} decomposable, "
        f"{len(summary.counterexamples)} counterexamples, {summary.budget_exceeded} over budget."
    )
    return summary
