# pylint: disable=redefined-outer-name
import io
import json
import pathlib
import sys
from typing import Any, Callable, List, Tuple

import pytest

# import local library
sys.path.append(str(pathlib.Path(__file__).absolute().parent))

from graph_core import fixtures
from graph_core.formats import graph_to_graph6
from main import main
from settings import Budgets, Settings

PENTAGON_JSON = '{"edges": [[0, 1], [1, 2], [2, 3], [3, 4], [4, 0]]}'

Run = Callable[..., Tuple[int, List[str]]]


@pytest.fixture
def run(capsys: Any, monkeypatch: Any, tmp_path: pathlib.Path) -> Run:
    """Run the CLI on ``stdin`` and return the exit code and stdout lines."""
    monkeypatch.setattr(Settings, "settings_file", tmp_path / "settings.json")

    def invoke(argv: List[str], stdin: str = "") -> Tuple[int, List[str]]:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
        code = main(argv)
        return code, capsys.readouterr().out.splitlines()

    return invoke


def test_decompose_and_verify(run: Run) -> None:
    code, lines = run(["decompose", "--algorithm", "thick-cacti"], PENTAGON_JSON)
    assert code == 0, "C5 is a thick-cacti graph in S_2,3."
    document = json.loads(lines[0])
    assert document["matching_edge_ids"] == [0] and document["mode"] == "spanning_tree"
    assert "trace" not in document, "Traces are only written with --emit-trace."

    code, lines = run(["check", "--verify"], lines[0] + "\n")
    assert code == 0 and json.loads(lines[0])["valid"], "decompose output passes check --verify."


def test_decompose_with_trace(run: Run) -> None:
    sk4 = graph_to_graph6(fixtures.subdivided_k4())
    code, lines = run(["decompose", "--algorithm", "h", "--complete", "--emit-trace"], sk4)
    document = json.loads(lines[0])
    assert code == 0 and document["mode"] == "spanning_tree", "--complete turns the forest into a tree."
    assert [step["kind"] for step in document["trace"]] == ["single_cycle_base"]

    code, lines = run(["check", "--verify"], lines[0])
    assert json.loads(lines[0])["valid"]


def test_exit_codes(run: Run) -> None:
    k4 = graph_to_graph6(fixtures.complete_graph(4))
    code, lines = run(["check", "--class", "s13"], k4)
    assert code == 0 and json.loads(lines[0])["member"] is False, "Rejection is a report, not an error."

    code, _ = run(["decompose", "--algorithm", "h"], k4)
    assert code == 2, "K4 is not in class H."

    code, _ = run(["--max-edges", "10", "oracle"], graph_to_graph6(fixtures.petersen()))
    assert code == 4, "Petersen has 15 edges."

    with pytest.raises(SystemExit) as error:
        run(["decompose", "--algorithm", "unknown"], k4)
    assert error.value.code == 1, "Usage errors exit with 1."


def test_budget_from_environment(run: Run, monkeypatch: Any) -> None:
    monkeypatch.setenv("TWODECOMP_ORACLE_MAX_EDGES", "3")
    code, _ = run(["oracle"], PENTAGON_JSON)
    assert code == 4, "The environment lowers the oracle budget."
    code, lines = run(["--max-edges", "5", "oracle", "--count"], PENTAGON_JSON)
    assert code == 0 and json.loads(lines[0])["count"] == 5, "Flags win over the environment."


def write_settings(path: pathlib.Path, version: int, content: Any) -> None:
    with open(path, "w", encoding="utf-8") as file:
        json.dump({"version": version, "content": content}, file)


def test_budgets_from_settings_file(monkeypatch: Any, tmp_path: pathlib.Path) -> None:
    settings_file = tmp_path / "settings.json"
    monkeypatch.setattr(Settings, "settings_file", settings_file)
    write_settings(settings_file, 0, {"budgets": {"oracle_node_budget": 1234}})
    assert Budgets().oracle_node_budget == 1234, "Settings file value is used."
    monkeypatch.setenv("TWODECOMP_ORACLE_NODE_BUDGET", "99")
    assert Budgets().oracle_node_budget == 99, "Environment wins over the settings file."
    assert Budgets(oracle_node_budget=7).oracle_node_budget == 7, "Arguments win over everything."


def test_unusable_settings_file(monkeypatch: Any, tmp_path: pathlib.Path) -> None:
    settings_file = tmp_path / "settings.json"
    monkeypatch.setattr(Settings, "settings_file", settings_file)
    assert not Settings().load(), "A missing file is not loaded."

    write_settings(settings_file, 1, {"budgets": {"oracle_node_budget": 1234}})
    assert not Settings().load(), "Other versions are ignored."
    assert Budgets().oracle_node_budget != 1234

    settings_file.write_text("{not json", encoding="utf-8")
    assert not Settings().load(), "Unreadable files are ignored."
    assert Budgets().cycle_cap >= 1, "Defaults are used instead."


def test_check_classes(run: Run) -> None:
    graphs = "\n".join(graph_to_graph6(graph) for graph in (fixtures.cycle_graph(5), fixtures.claw()))
    code, lines = run(["check", "--class", "claw-free"], graphs)
    assert code == 0 and [json.loads(line)["member"] for line in lines] == [True, False], "One report per line."


def test_bcgraph(run: Run) -> None:
    code, lines = run(["bcgraph"], graph_to_graph6(fixtures.subdivided_k4()))
    content = json.loads(lines[0])
    assert code == 0 and content["bc_graph"] == {"nodes": [0], "edges": []}, "SK4 has a single basic cycle."

    code, lines = run(["bcgraph", "--dot"], graph_to_graph6(fixtures.subdivided_k4()))
    assert code == 0 and lines[0] == "graph BC {"


def test_gen_is_deterministic(run: Run) -> None:
    first = run(["gen", "h", "--seed", "3", "--count", "2"])
    second = run(["gen", "h", "--seed", "3", "--count", "2"])
    assert first == second and first[0] == 0 and len(first[1]) == 2, "Same seed, same bytes."

    code, lines = run(["gen", "enumerate", "--n-max", "4", "--format", "jsonl"])
    assert code == 0 and len(lines) == 10, "Ten connected subcubic graphs up to 4 vertices."

    code, _ = run(["gen", "h", "--params", '{"cycle_lengths": [5]}'])
    assert code == 2, "An odd number of 2-chord slots is infeasible."


def test_scan(run: Run, tmp_path: pathlib.Path) -> None:
    out = tmp_path / "results.jsonl"
    code, _ = run(["scan", "--n-max", "4", "--out", str(out)])
    records = [json.loads(line) for line in out.read_text(encoding="utf-8").splitlines()]
    assert code == 0 and len(records) == 11, "One record per graph and the summary last."
    summary = records[-1]["summary"]
    assert summary["graphs"] == 10 and summary["counterexamples"] == []
