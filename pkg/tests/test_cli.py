"""CLI surface: reports, formats, exit codes, and schema validity."""

import json

import jsonschema
import pytest

from cayleycss import cli, formats
from cayleycss.cayley import GeneratorSet, adjacency_matrix

try:
    from importlib.resources import files as resource_files
except ImportError:  # pragma: no cover
    resource_files = None

SCHEMA = json.loads(
    resource_files("cayleycss.schemas")
    .joinpath("run_report.schema.json")
    .read_text()
)


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_report(capsys, *argv):
    code, out, err = run_cli(capsys, *argv)
    report = json.loads(out)
    jsonschema.validate(report, SCHEMA)
    return code, report


def test_params_repetition_n3(capsys):
    code, report = run_report(
        capsys, "params", "--n", "3", "--family", "repetition"
    )
    assert code == 0
    assert report["outputs"]["N"] == 8
    assert report["outputs"]["K"] == 4
    assert report["outputs"]["D"]["value"] == 2
    assert report["command"] == "params"
    assert "x_i" in report["indexing_convention"]


def test_params_bounded_regime(capsys):
    code, report = run_report(
        capsys, "params", "--n", "7", "--family", "repetition"
    )
    assert code == 0
    D = report["outputs"]["D"]
    assert D == {
        "method": "witness-upper",
        "upper": 8,
        "claimed": 8,
        "label": "paper-claimed, witness-upper-bound-verified",
    }


def test_params_trivial_hypercube(capsys):
    code, report = run_report(
        capsys, "params", "--m", "4", "--gens", "0001,0010,0100,1000"
    )
    assert code == 0
    assert report["outputs"]["K"] == 0
    assert report["outputs"]["D"]["trivial"] is True


def test_params_precondition_exit(capsys):
    code, out, err = run_cli(capsys, "params", "--m", "3", "--gens", "100")
    assert code == 2
    assert "self-orthogonal" in err


def test_size_guard_exit(capsys):
    code, out, err = run_cli(
        capsys, "params", "--n", "17", "--family", "repetition"
    )
    assert code == 4
    assert "guard" in err


def test_verify_scoreboard_sorted_and_green(capsys):
    code, report = run_report(
        capsys, "verify", "--suite", "dimension", "--n", "3..13"
    )
    assert code == 0
    names = [c["name"] for c in report["checks"]]
    assert names == sorted(names)
    assert report["outputs"]["failed"] == 0
    assert all(c["status"] == "pass" for c in report["checks"])


def test_verify_all_small_range(capsys):
    code, report = run_report(capsys, "verify", "--suite", "all",
                              "--n", "3..5")
    assert code == 0
    assert report["outputs"]["failed"] == 0


def test_verify_cover_suite(capsys):
    code, report = run_report(
        capsys, "verify", "--suite", "cover", "--m", "5", "--gens", "11111"
    )
    assert code == 0
    names = {c["name"] for c in report["checks"]}
    assert "cover/ball-isomorphism" in names
    assert "cover/non-liftable-word" in names


def test_cover_certificate_within_radius(capsys):
    code, report = run_report(capsys, "cover", "--m", "5",
                              "--gens", "11111")
    assert code == 0
    cert = report["outputs"]["certificate"]
    assert cert["status"] == "isomorphism"
    assert cert["radius"] == 2
    assert cert["centers_checked"] == 64


def test_cover_collision_exit(capsys):
    code, report = run_report(
        capsys, "cover", "--m", "5", "--gens", "11111", "--radius", "3"
    )
    assert code == 3
    cert = report["outputs"]["certificate"]
    assert cert["status"] == "collision"
    assert "counterexample" in cert


def test_witness_report(capsys):
    code, report = run_report(capsys, "witness", "--n", "3")
    assert code == 0
    out = report["outputs"]
    assert out["support"] == [2, 4]
    assert out["weight"] == 2
    assert out["classification"] == "logical"
    code5, report5 = run_report(capsys, "witness", "--n", "5")
    assert report5["outputs"]["weight"] == 4


def test_witness_even_n(capsys):
    code, out, err = run_cli(capsys, "witness", "--n", "4")
    assert code == 2


def test_build_alist_round_trip(capsys, tmp_path):
    path = str(tmp_path / "m.alist")
    code, out, err = run_cli(
        capsys, "build", "--n", "3", "--family", "repetition",
        "--format", "alist", "--out", path,
    )
    assert code == 0
    M = formats.read_matrix("alist", path)
    assert M == adjacency_matrix(3, GeneratorSet.named("S3'"))


def test_build_bin_matches_golden_bytes(capsys, tmp_path):
    path = str(tmp_path / "m.bin")
    code, _, _ = run_cli(
        capsys, "build", "--n", "3", "--family", "repetition",
        "--format", "bin", "--out", path,
    )
    assert code == 0
    blob = open(path, "rb").read()
    assert blob[:4] == b"CAYM"
    M = adjacency_matrix(3, GeneratorSet.named("S3'"))
    assert blob[16:] == b"".join(
        M.row(i).packed_bytes() for i in range(8)
    )


def test_build_torus(capsys, tmp_path):
    path = str(tmp_path / "t.mtx")
    code, _, _ = run_cli(
        capsys, "build", "--family", "z2n-torus", "--n", "2",
        "--format", "mtx", "--out", path,
    )
    assert code == 0
    M = formats.read_matrix("mtx", path)
    assert M.rows == M.cols == 16


def test_threads_env_and_flag(capsys, monkeypatch):
    monkeypatch.setenv("CAYLEY_CSS_THREADS", "3")
    code, report = run_report(capsys, "verify", "--suite", "recursion",
                              "--n", "4..6")
    assert report["threads"] == 3
    code, report = run_report(
        capsys, "verify", "--suite", "recursion", "--n", "4..6",
        "--threads", "2",
    )
    assert report["threads"] == 2


def test_report_to_file(capsys, tmp_path):
    path = str(tmp_path / "r.json")
    code, out, err = run_cli(capsys, "params", "--n", "3",
                             "--family", "repetition", "--out", path)
    assert code == 0 and out == ""
    report = json.loads(open(path).read())
    jsonschema.validate(report, SCHEMA)


def test_reports_are_reproducible_except_timings(capsys):
    _, r1 = run_report(capsys, "params", "--n", "5", "--family", "repetition")
    _, r2 = run_report(capsys, "params", "--n", "5", "--family", "repetition")
    r1.pop("timings")
    r2.pop("timings")
    assert r1 == r2
