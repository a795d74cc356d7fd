import json

import pytest

from diracham.cli import run_command
from diracham.generators import (
    complete_bipartite,
    complete_graph,
    cycle_graph,
    two_cliques_matching,
)
from diracham.graph import Graph, dump_graph_text, verify_hamilton_cycle


@pytest.fixture
def write_graph(tmp_path):
    def _write(G, name="g.txt"):
        p = tmp_path / name
        p.write_text(dump_graph_text(G))
        return str(p)

    return _write


def test_ham_c5(write_graph, capsys):
    path = write_graph(cycle_graph(5))
    rc = run_command(["ham", "--graph", path, "--seed", "1"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["found"] and verify_hamilton_cycle(cycle_graph(5), out["certificate"])


def test_ham_path_mode(write_graph, capsys):
    path = write_graph(complete_graph(5))
    rc = run_command(["ham", "--graph", path, "--seed", "1", "--path", "0", "3"])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["found"]
    assert out["certificate"][0] == 0 and out["certificate"][-1] == 3


def test_classify_k12_dense(write_graph, capsys):
    path = write_graph(complete_graph(12))
    rc = run_command(
        [
            "classify",
            "--graph",
            path,
            "--alpha",
            "0.003125",
            "--gamma",
            "0.1",
            "--mode",
            "exact",
            "--seed",
            "0",
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["case"] == "DenseCrossing"
    assert "diagnostics" in out


def test_sweep_csv_shape(write_graph, capsys):
    path = write_graph(complete_graph(12))
    rc = run_command(
        [
            "sweep",
            "--graph",
            path,
            "--pgrid",
            "1,2,4,8",
            "--pgrid-unit",
            "clogn",
            "--trials",
            "4",
            "--seed",
            "7",
            "--budget",
            "20000",
        ]
    )
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "p,trials,successes,phat,wilson95_lo,wilson95_hi,mean_steps"
    assert len(lines) == 5


def test_ham_bip_cli(write_graph, tmp_path, capsys):
    base = complete_bipartite(4, 3)
    G = Graph(7, list(base.edges()) + [(0, 1)])
    gpath = write_graph(G)
    part = tmp_path / "v1.txt"
    part.write_text("0 1 2 3\n")
    rc = run_command(
        [
            "ham-bip",
            "--graph",
            gpath,
            "--part",
            str(part),
            "--special",
            "0-1",
            "--seed",
            "2",
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["found"] and out["k"] == 1 and len(out["certificate"]) == 7


def test_expcheck_cli(write_graph, capsys):
    path = write_graph(complete_graph(10))
    rc = run_command(
        [
            "expcheck",
            "--graph",
            path,
            "--kind",
            "plain",
            "--eps",
            "0.25",
            "--r",
            "2",
            "--mode",
            "exact",
            "--seed",
            "0",
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["verdict"] == "holds"


def test_play_cli_transcript(write_graph, tmp_path, capsys):
    path = write_graph(complete_graph(8))
    out_file = tmp_path / "t.json"
    rc = run_command(
        [
            "play",
            "--graph",
            path,
            "--bias",
            "1:1",
            "--maker",
            "dirac",
            "--breaker",
            "greedy-block",
            "--seed",
            "5",
            "--transcript",
            str(out_file),
        ]
    )
    assert rc == 0
    obj = json.loads(out_file.read_text())
    assert obj["winner"] == "Maker"
    assert obj["moves"][0][0] == "Maker"


def test_oracle_cli(write_graph, capsys):
    from diracham.generators import petersen_graph

    path = write_graph(petersen_graph())
    rc = run_command(["oracle", "--graph", path])
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["hamiltonian"] is False


def test_usage_error_exit_2(capsys):
    assert run_command(["no-such-command"]) == 2


def test_domain_error_exit_1(write_graph, capsys):
    path = write_graph(complete_graph(13))
    rc = run_command(
        [
            "classify",
            "--graph",
            path,
            "--alpha",
            "0.003125",
            "--gamma",
            "0.1",
            "--mode",
            "exact",
            "--seed",
            "0",
        ]
    )
    assert rc == 1  # exact sparsest search beyond its budget


def test_replay_determinism(write_graph, capsys):
    path = write_graph(two_cliques_matching(10))
    outs = []
    for _ in range(2):
        rc = run_command(
            ["sweep", "--graph", path, "--pgrid", "2,6", "--trials", "5", "--seed", "9"]
        )
        assert rc == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    for _ in range(2):
        rc = run_command(["ham", "--graph", path, "--seed", "3"])
        assert rc == 0
        outs.append(capsys.readouterr().out)
    assert outs[2] == outs[3]


def test_classify_local_mode(write_graph, capsys):
    path = write_graph(complete_graph(16))
    rc = run_command(
        [
            "classify",
            "--graph",
            path,
            "--alpha",
            "0.001",
            "--gamma",
            "0.032",
            "--mode",
            "local",
            "--seed",
            "3",
        ]
    )
    assert rc == 0
    out = json.loads(capsys.readouterr().out)
    assert out["case"] == "DenseCrossing" and out["heuristic"] is True
