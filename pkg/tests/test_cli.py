"""Command-line interface: reports, determinism, exit codes."""

import json

import pytest

from toricgs.cli import EXIT_BUDGET, EXIT_ERROR, EXIT_OK, main
from toricgs.fixture_files import fixture_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, *argv)
    return code, json.loads(out)


def test_phi_star_dot(capsys):
    code, report = run_json(
        capsys, "phi", "--setup", fixture_path("plaquette4.json"), "--format", "dot"
    )
    assert code == EXIT_OK
    assert report["result"]["hadamard_qubits"] == [3]
    dot = report["result"]["dot"]
    assert '"0" -- "3";' in dot and "style=dashed" not in dot
    assert report["inputs"]["setup"]["sha256"]


def test_phi_nonlocal_edges_drawn_dashed(capsys):
    # a tree CSV that forces a long fundamental path: some pairs not vicinal
    code, report = run_json(
        capsys,
        "phi",
        "--setup",
        fixture_path("pentomino_plus.json"),
        "--format",
        "dot",
    )
    assert code == EXIT_OK
    assert "style=dashed" in report["result"]["dot"]


def test_phi_reports_are_byte_identical_across_workers(capsys):
    args = ("phi", "--setup", fixture_path("tetriamond.json"))
    _, first = run_cli(capsys, *args)
    _, second = run_cli(capsys, *args)
    _, third = run_cli(capsys, *args, "--workers", "4")
    assert first == second == third


def test_phi_explicit_tree(capsys):
    code, report = run_json(
        capsys,
        "phi",
        "--setup",
        fixture_path("plaquette4.json"),
        "--tree",
        "1,2,3",
    )
    assert code == EXIT_OK
    assert report["result"]["hadamard_qubits"] == [0]


def test_verify_thm1(capsys):
    code, report = run_json(
        capsys, "verify-thm1", "--setup", fixture_path("torus_2x2.json")
    )
    assert code == EXIT_OK
    assert report["result"]["verified"] is True
    assert report["result"]["degeneracy"] == 4


def test_lc_orbit_stats_and_dump(capsys, tmp_path):
    out = tmp_path / "orbit.txt"
    code, report = run_json(
        capsys,
        "lc-orbit",
        "--graph",
        fixture_path("star4.graph.json"),
        "--paths",
        "--out",
        str(out),
    )
    assert code == EXIT_OK
    assert report["result"]["status"] == "complete"
    lines = out.read_text().strip().splitlines()
    assert len(lines) == report["result"]["orbit_size"]
    assert all(" " in line or line for line in lines)


def test_lc_orbit_budget_exit_code(capsys):
    code, report = run_json(
        capsys,
        "lc-orbit",
        "--graph",
        fixture_path("complete5.graph.json"),
        "--budget",
        "2",
    )
    assert code == EXIT_BUDGET
    assert report["result"]["status"] == "budget-exceeded"


def test_lc_equiv_star_complete(capsys):
    code, report = run_json(
        capsys,
        "lc-equiv",
        "--g",
        fixture_path("star5.graph.json"),
        "--h",
        fixture_path("complete5.graph.json"),
    )
    assert code == EXIT_OK
    assert report["result"]["equivalent"] is True
    witness = report["result"]["witness"]
    assert set(witness) == {"a", "b", "c", "d"}


def test_lc_equiv_negative(capsys):
    code, report = run_json(
        capsys,
        "lc-equiv",
        "--g",
        fixture_path("path4.graph.json"),
        "--h",
        fixture_path("star4.graph.json"),
    )
    assert code == EXIT_OK
    assert report["result"]["equivalent"] is False
    assert "witness" not in report["result"]


def test_locality_local_instance(capsys):
    code, report = run_json(
        capsys, "locality", "--setup", fixture_path("plaquette4.json")
    )
    assert code == EXIT_OK
    assert report["result"]["verdict"] == "local"
    assert report["result"]["complementations"] == []


def test_locality_nonlocal_instance(capsys):
    code, report = run_json(
        capsys, "locality", "--setup", fixture_path("tetriamond.json")
    )
    assert code == EXIT_OK
    assert report["result"]["verdict"] == "nonlocal"
    assert report["result"]["orbit_size"] == 828


def test_locality_unknown_on_budget(capsys):
    code, report = run_json(
        capsys,
        "locality",
        "--setup",
        fixture_path("tetriamond.json"),
        "--budget",
        "5",
    )
    assert code == EXIT_BUDGET
    assert report["result"]["verdict"] == "unknown"


def test_reduce_chain(capsys, tmp_path):
    code, report = run_json(
        capsys,
        "reduce",
        "--chain",
        fixture_path("chain/pentomino_chain.json"),
        "--certs",
        str(tmp_path / "certs"),
    )
    assert code == EXIT_OK
    assert report["result"]["ok"] is True
    assert report["result"]["verdicts"]["s0"] == "nonlocal"
    assert (tmp_path / "certs").iterdir()


def test_enumerate_writes_fixtures(capsys, tmp_path):
    code, report = run_json(
        capsys,
        "enumerate",
        "--lattice",
        "square",
        "--n",
        "3",
        "--out",
        str(tmp_path),
    )
    assert code == EXIT_OK
    assert report["result"]["count"] == 2
    assert len(report["result"]["files"]) == 2
    assert (tmp_path / "square_3_0.json").exists()


def test_error_exit_code_on_missing_file(capsys):
    code, report = run_json(capsys, "phi", "--setup", "/nonexistent/file.json")
    assert code == EXIT_ERROR
    assert "error" in report


def test_workers_must_be_positive(capsys):
    with pytest.raises(SystemExit):
        main(["phi", "--setup", "x.json", "--workers", "0"])


def test_selftest_subset(capsys):
    code = main(["selftest", "--only", "1,2,9,10"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.count("[PASS]") == 4
    assert "4/4 criteria passed" in out


def test_console_script_entry_point(tmp_path):
    import subprocess, sys

    proc = subprocess.run(
        [sys.executable, "-m", "toricgs.cli", "selftest", "--only", "9"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "[PASS]" in proc.stdout


def test_reduce_failing_chain_exits_nonzero(capsys, tmp_path):
    import json as _json

    src = fixture_path("chain/pentomino_chain.json")
    spec = _json.load(open(src))
    spec["base"] = []  # no exhaustive base: nothing can be certified
    chain = tmp_path / "broken_chain.json"
    # keep file references resolvable
    import os, shutil

    for name in spec["systems"]:
        shutil.copy(
            os.path.join(os.path.dirname(src), spec["systems"][name]["file"]),
            tmp_path,
        )
    chain.write_text(_json.dumps(spec))
    code, report = run_json(capsys, "reduce", "--chain", str(chain))
    assert code == EXIT_ERROR
    assert report["result"]["ok"] is False
    assert report["result"]["verdicts"]["s0"] == "unverified"
