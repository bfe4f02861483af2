import json
from typing import Any, Dict, Iterable, Iterator, Mapping, Optional, TextIO

import networkx as nx

from graph_core.exceptions import PreconditionViolated
from graph_core.Graph import EdgePair, Graph

GRAPH6_HEADER = ">>graph6<<"


def graph_from_graph6(line: str) -> Graph:
    text = line.strip()
    if text.startswith(GRAPH6_HEADER):
        text = text[len(GRAPH6_HEADER) :]
    try:
        parsed = nx.from_graph6_bytes(text.encode("ascii"))
    except (nx.NetworkXError, ValueError) as error:
        raise PreconditionViolated(f"Invalid graph6 line {text!r}: {error}") from error
    edges = {edge_id: (u, v) for edge_id, (u, v) in enumerate(sorted(parsed.edges()))}
    return Graph(parsed.nodes(), edges)


def graph_to_graph6(graph: Graph) -> str:
    """graph6 of the graph with vertices relabelled 0..n-1 in increasing id order."""
    if not graph.is_simple():
        raise PreconditionViolated("graph6 cannot carry parallel edges, use the JSON edge list.")
    relabelled = nx.convert_node_labels_to_integers(graph.to_simple_networkx(), ordering="sorted")
    return str(nx.to_graph6_bytes(relabelled, header=False).decode("ascii").strip())


def graph_from_json(content: Mapping[str, Any]) -> Graph:
    """Read ``{"vertices": [...], "edges": [[u, v], ...]}``; edge i gets id i unless ``edge_ids`` is given."""
    try:
        pairs = [tuple(pair) for pair in content["edges"]]
    except (KeyError, TypeError) as error:
        raise PreconditionViolated(f"JSON graph needs an 'edges' list: {error}") from error
    edge_ids = content.get("edge_ids") or list(range(len(pairs)))
    if len(edge_ids) != len(pairs):
        raise PreconditionViolated("'edge_ids' and 'edges' differ in length.")
    vertices = set(content.get("vertices") or [])
    edges: Dict[int, EdgePair] = {}
    for edge_id, pair in zip(edge_ids, pairs):
        if len(pair) != 2:
            raise PreconditionViolated(f"Edge {edge_id} is not a pair: {list(pair)}")
        u, v = int(pair[0]), int(pair[1])
        vertices.update((u, v))
        edges[int(edge_id)] = (u, v)
    return Graph(vertices, edges)


def graph_to_json(graph: Graph) -> Dict[str, Any]:
    return graph.as_dict()


def parse_graph_line(line: str) -> Graph:
    """JSON when the first non-blank character is ``{``, graph6 otherwise."""
    text = line.strip()
    if text.startswith("{"):
        try:
            content = json.loads(text)
        except json.JSONDecodeError as error:
            raise PreconditionViolated(f"Invalid JSON graph: {error}") from error
        if "graph" in content and "edges" not in content:
            content = content["graph"]
        return graph_from_json(content)
    return graph_from_graph6(text)


def read_graphs(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        if line.strip() and not line.strip() == GRAPH6_HEADER:
            yield parse_graph_line(line)


def read_graph(stream: TextIO) -> Graph:
    """Single graph: either one graph6 line or a (possibly multi-line) JSON document."""
    text = stream.read().strip()
    if text.startswith("{"):
        return parse_graph_line(text)
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 1:
        raise PreconditionViolated(f"Expected exactly one graph, got {len(lines)} lines.")
    return graph_from_graph6(lines[0])


def to_dot(graph: Graph, name: str = "G", labels: Optional[Mapping[int, str]] = None) -> str:
    lines = [f"graph {name} {{"]
    for vertex in graph.sorted_vertices():
        label = labels.get(vertex) if labels else None
        lines.append(f'  {vertex} [label="{label}"];' if label is not None else f"  {vertex};")
    for edge_id in graph.edge_ids():
        u, v = graph.endpoints(edge_id)
        lines.append(f'  {u} -- {v} [id="e{edge_id}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
