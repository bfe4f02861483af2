#! /usr/bin/env python3
import argparse
import contextlib
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional, TextIO

from commonwealth.utils.jsonio import dumps
from commonwealth.utils.logs import init_logger
from loguru import logger
from pydantic import BaseModel, ValidationError

from class_check.membership import in_S, is_claw_free, is_thick_cacti_collection
from class_check.reports import ClassReport
from decompose.Decomposer import Decomposer
from decompose.TwoDecomposition import DecompositionMode, TwoDecomposition
from decompose.verification import verify_decomposition
from generators.construction import gen_h, gen_thick_cacti_s23
from generators.enumeration import enumerate_connected_subcubic
from generators.parameters import random_h_params, random_thick_cacti_params
from graph_core.exceptions import InternalInvariantBroken, PreconditionViolated, TwoDecompError
from graph_core.formats import graph_from_json, graph_to_graph6, read_graph, read_graphs, to_dot
from graph_core.Graph import Graph
from h_structure.analysis import analyze, bc_graph, in_H, underlying_bc_graph
from h_structure.BasicStructure import ConnectorCollection
from oracle.brute_force import brute_force
from scan.conjecture import ScanOptions, ScanRecord, conjecture_scan
from settings import Budgets

USAGE_ERROR = 1

MODES = {"tree": DecompositionMode.SpanningTree, "forest": DecompositionMode.Forest}

CLASS_CHECKS: Dict[str, Callable[[Graph, Budgets], ClassReport]] = {
    "s13": lambda graph, budgets: in_S(graph, 1, 3, budgets.cycle_cap),
    "s23": lambda graph, budgets: in_S(graph, 2, 3, budgets.cycle_cap),
    "thick-cacti": lambda graph, _: is_thick_cacti_collection(graph),
    "claw-free": lambda graph, _: is_claw_free(graph),
    "h": lambda graph, _: in_H(graph),
}


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with code 1."""

    def error(self, message: str) -> None:  # type: ignore
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def plain(model: BaseModel) -> Any:
    return json.loads(model.json())


@contextlib.contextmanager
def opened(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdin
        return
    with open(path, "r", encoding="utf-8") as file:
        yield file


@contextlib.contextmanager
def output(path: Optional[Path]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8", newline="\n") as file:
        yield file


def write_line(stream: TextIO, content: Any, pretty: bool = False) -> None:
    stream.write(content if isinstance(content, str) else dumps(content, pretty))
    stream.write("\n")


def command_check(args: argparse.Namespace, budgets: Budgets) -> None:
    with opened(args.input) as source:
        lines = [line for line in source if line.strip()]
    if args.verify:
        for line in lines:
            write_line(sys.stdout, plain(verify_emitted(json.loads(line))), args.pretty)
        return
    check = CLASS_CHECKS[args.class_name]
    for graph in read_graphs(lines):
        write_line(sys.stdout, plain(check(graph, budgets)), args.pretty)


def verify_emitted(content: Dict[str, Any]) -> BaseModel:
    """Verification report of a document written by ``decompose``."""
    try:
        graph = graph_from_json(content["graph"])
        decomposition = TwoDecomposition(
            forest_edges=content["tree_edge_ids"],
            matching_edges=content["matching_edge_ids"],
            mode=content["mode"],
        )
    except (KeyError, TypeError, ValidationError) as error:
        raise PreconditionViolated(f"Not a decomposition document: {error}") from error
    if content.get("algorithm") == "h":
        structure = analyze(graph)
        return verify_decomposition(graph, decomposition, structure, content.get("connectors") or ())
    return verify_decomposition(graph, decomposition)


def command_bcgraph(args: argparse.Namespace, _: Budgets) -> None:
    with opened(args.input) as source:
        graph = read_graph(source)
    structure = analyze(graph)
    if args.dot:
        every_connector = ConnectorCollection.of(structure, [connector.inner for connector in structure.connectors()])
        labels = {cycle_id: f"{cycle_id} {structure.cycle_type(cycle_id).value}" for cycle_id in structure.cycle_ids()}
        sys.stdout.write(to_dot(underlying_bc_graph(structure, every_connector), "BC", labels))
        return
    content = {
        "structure": structure.as_dict(),
        "bc_graph": bc_graph(structure).as_dict(),
        "cycle_types": {str(cycle_id): structure.cycle_type(cycle_id).value for cycle_id in structure.cycle_ids()},
    }
    write_line(sys.stdout, content, args.pretty)


def parse_connectors(text: Optional[str]) -> List[int]:
    if not text:
        return []
    try:
        return [int(vertex) for vertex in text.split(",")]
    except ValueError as error:
        raise PreconditionViolated(f"--connectors expects comma separated vertex ids, got {text!r}.") from error


def command_decompose(args: argparse.Namespace, budgets: Budgets) -> None:
    with opened(args.input) as source:
        graph = read_graph(source)
    options: Dict[str, Any] = {
        "check_subproblems": budgets.assert_subproblems,
        "cap": budgets.cycle_cap,
        "max_edges": budgets.oracle_max_edges,
        "node_budget": budgets.oracle_node_budget,
    }
    connectors = parse_connectors(args.connectors)
    if args.algorithm == "h":
        options.update(collection=connectors or None, complete=args.complete)
    elif args.complete or connectors:
        raise PreconditionViolated("--complete and --connectors only apply to --algorithm h.")

    decomposition, trace = Decomposer.get(args.algorithm).decompose(graph, **options)
    content = {"algorithm": args.algorithm, "graph": graph.as_dict(), **decomposition.as_pairs(graph)}
    if args.algorithm == "h":
        content["connectors"] = connectors
    if args.emit_trace:
        content["trace"] = trace.as_list()
    write_line(sys.stdout, content, args.pretty)


def command_oracle(args: argparse.Namespace, budgets: Budgets) -> None:
    with opened(args.input) as source:
        graph = read_graph(source)
    result = brute_force(
        graph,
        MODES[args.mode],
        count=args.count,
        max_edges=budgets.oracle_max_edges,
        node_budget=budgets.oracle_node_budget,
    )
    content = plain(result)
    if result.witness is not None:
        content["witness"] = result.witness.as_pairs(graph)
    write_line(sys.stdout, content, args.pretty)


def generated(args: argparse.Namespace, budgets: Budgets) -> Iterator[Graph]:
    if args.kind == "enumerate":
        return enumerate_connected_subcubic(
            args.n_max, args.source, budgets.enumeration_max_vertices, progress=args.progress
        )
    overrides = {key: value for key, value in (("seed", args.seed), ("count", args.count)) if value is not None}
    if args.params:
        try:
            params: Any = {**json.loads(args.params), **overrides}
        except (json.JSONDecodeError, TypeError) as error:
            raise PreconditionViolated(f"--params must be a JSON object: {error}") from error
    else:
        make = random_h_params if args.kind == "h" else random_thick_cacti_params
        params = make(args.seed or 0, args.max_vertices).copy(update=overrides)
    if args.kind == "h":
        return gen_h(params, budgets.generator_max_attempts)
    return gen_thick_cacti_s23(params, budgets.generator_max_attempts)


def command_gen(args: argparse.Namespace, budgets: Budgets) -> None:
    as_jsonl = args.format == "jsonl" or (args.out is not None and args.out.suffix == ".jsonl")
    with output(args.out) as stream:
        for graph in generated(args, budgets):
            write_line(stream, graph.as_dict() if as_jsonl else graph_to_graph6(graph))


def command_scan(args: argparse.Namespace, budgets: Budgets) -> None:
    options = ScanOptions(
        count=args.count,
        constructive=not args.no_constructive,
        cap=budgets.cycle_cap,
        max_edges=budgets.oracle_max_edges,
        node_budget=budgets.oracle_node_budget,
    )
    with contextlib.ExitStack() as stack:
        if args.n_max is not None:
            graphs: Any = enumerate_connected_subcubic(args.n_max, max_vertices=budgets.enumeration_max_vertices)
        else:
            graphs = read_graphs(stack.enter_context(opened(args.input)))
        stream = stack.enter_context(output(args.out))

        def sink(record: ScanRecord) -> None:
            write_line(stream, plain(record))

        summary = conjecture_scan(graphs, MODES[args.mode], args.jobs, options, sink, args.progress)
        write_line(stream, {"summary": plain(summary)})


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="twodecomp", description="Separating cycles and 2-decompositions of subcubic graphs")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logs")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    parser.add_argument("--cycle-cap", type=int, help="maximum number of cycles enumerated per membership test")
    parser.add_argument("--max-edges", type=int, help="largest graph the oracle accepts")
    parser.add_argument("--node-budget", type=int, help="search nodes the oracle may visit")
    parser.add_argument("--no-check", action="store_true", help="skip the per-step assertions of the recursions")
    subparsers = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    check = subparsers.add_parser("check", help="class membership, one JSON report per input graph")
    target = check.add_mutually_exclusive_group(required=True)
    target.add_argument("--class", dest="class_name", choices=sorted(CLASS_CHECKS))
    target.add_argument("--verify", action="store_true", help="verify documents written by decompose")
    check.add_argument("--in", dest="input", type=Path)
    check.set_defaults(handler=command_check)

    bcgraph = subparsers.add_parser("bcgraph", help="basic cycles and BC-graph of a graph of class H")
    bcgraph.add_argument("--in", dest="input", type=Path)
    bcgraph.add_argument("--dot", action="store_true", help="write the BC-graph in DOT instead of JSON")
    bcgraph.set_defaults(handler=command_bcgraph)

    decompose = subparsers.add_parser("decompose", help="forest or spanning tree plus matching")
    decompose.add_argument("--algorithm", choices=Decomposer.possible_algorithms(), default="auto")
    decompose.add_argument("--in", dest="input", type=Path)
    decompose.add_argument("--emit-trace", action="store_true", help="include the reduction trace")
    decompose.add_argument("--complete", action="store_true", help="grow the forest of 'h' into a spanning tree")
    decompose.add_argument("--connectors", help="comma separated connector vertices for 'h'")
    decompose.set_defaults(handler=command_decompose)

    oracle = subparsers.add_parser("oracle", help="exhaustive search for a 2-decomposition")
    oracle.add_argument("--in", dest="input", type=Path)
    oracle.add_argument("--mode", choices=sorted(MODES), default="tree")
    oracle.add_argument("--count", action="store_true", help="count every valid matching")
    oracle.set_defaults(handler=command_oracle)

    gen = subparsers.add_parser("gen", help="generate graphs, graph6 or JSON lines")
    gen.add_argument("kind", choices=["h", "thick-cacti", "enumerate"])
    gen.add_argument("--seed", type=int)
    gen.add_argument("--count", type=int)
    gen.add_argument("--params", help="JSON object with the shape parameters, random when omitted")
    gen.add_argument("--max-vertices", type=int, default=30, help="size of random shapes")
    gen.add_argument("--n-max", type=int, default=6, help="largest order for 'enumerate'")
    gen.add_argument("--source", type=Path, help="graph6 file replacing the internal enumeration")
    gen.add_argument("--format", choices=["g6", "jsonl"], default="g6")
    gen.add_argument("--out", type=Path)
    gen.add_argument("--progress", action="store_true")
    gen.set_defaults(handler=command_gen)

    scan = subparsers.add_parser("scan", help="brute-force every S_1,3 member of a corpus")
    scan.add_argument("--in", dest="input", type=Path)
    scan.add_argument("--n-max", type=int, help="scan the internal enumeration instead of a file")
    scan.add_argument("--mode", choices=sorted(MODES), default="tree")
    scan.add_argument("--jobs", type=int, default=1)
    scan.add_argument("--count", action="store_true", help="record the number of valid matchings")
    scan.add_argument("--no-constructive", action="store_true", help="skip re-deriving members with decompose_auto")
    scan.add_argument("--out", type=Path)
    scan.add_argument("--progress", action="store_true")
    scan.set_defaults(handler=command_scan)
    return parser


def resolve_budgets(args: argparse.Namespace) -> Budgets:
    flags = {
        "cycle_cap": args.cycle_cap,
        "oracle_max_edges": args.max_edges,
        "oracle_node_budget": args.node_budget,
        "assert_subproblems": False if args.no_check else None,
    }
    return Budgets(**{name: value for name, value in flags.items() if value is not None})


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    init_logger(args.verbose)

    try:
        budgets = resolve_budgets(args)
    except ValidationError as error:
        parser.print_usage(sys.stderr)
        logger.error(f"Invalid budgets: {error}")
        return USAGE_ERROR

    try:
        args.handler(args, budgets)
    except InternalInvariantBroken as error:
        logger.critical(f"Internal invariant broken: {error}")
        write_line(sys.stderr, error.as_dict(), pretty=True)
        return error.exit_code
    except TwoDecompError as error:
        logger.error(f"{type(error).__name__}: {error}")
        return error.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())
