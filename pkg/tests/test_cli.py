"""CLI: verbs, formats, exit codes, determinism, slice cache."""

import json
import subprocess
import sys

from khh.corpus import default_corpus_dir


def run_cli(*argv, env=None):
    import os

    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    proc = subprocess.run(
        [sys.executable, "-m", "khh.cli", *argv],
        capture_output=True, text=True, env=full_env,
    )
    return proc


def corpus_file(name, filename):
    return str(default_corpus_dir() / name / filename)


def test_hh_json_row():
    proc = run_cli(
        "hh", "--algebra", corpus_file("cusp", "algebra.alg"),
        "--n", "1", "--max-weight", "8", "--format", "json",
    )
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["cells"]["5"] == 2 and obj["cells"]["6"] == 1
    assert obj["metadata"]["convention"] == "standard"


def test_hh_free_algebra_all_zero():
    proc = run_cli(
        "hh", "--algebra", corpus_file("free1", "algebra.alg"),
        "--n", "2", "--max-weight", "8", "--format", "json",
    )
    obj = json.loads(proc.stdout)
    assert all(v == 0 for v in obj["cells"].values())


def test_hodge_free2_concentrates():
    proc = run_cli(
        "hodge", "--algebra", corpus_file("free2", "algebra.alg"),
        "--n", "2", "--max-weight", "4", "--format", "json",
    )
    obj = json.loads(proc.stdout)
    for key, value in obj["cells"].items():
        w, i = (int(p) for p in key.split(","))
        if i == 1:
            assert value == 0
        elif value:
            assert i == 2


def test_exit_code_parse_error(tmp_path):
    bad = tmp_path / "bad.alg"
    bad.write_text("algebra f\nvars x:1\nrel x + %\n")
    proc = run_cli("hh", "--algebra", str(bad), "--n", "1", "--max-weight", "2")
    assert proc.returncode == 2
    assert "line 3" in proc.stderr


def test_exit_code_precondition(tmp_path):
    proc = run_cli("hh", "--algebra", str(tmp_path / "missing.alg"),
                   "--n", "1", "--max-weight", "2")
    assert proc.returncode == 3


def test_exit_code_cutoff_inconsistency():
    proc = run_cli("hh", "--algebra", corpus_file("cusp", "algebra.alg"),
                   "--n", "1", "--max-weight", "-3")
    assert proc.returncode == 3


def test_exit_code_torsion():
    proc = run_cli(
        "cuspbundle", "--curve", corpus_file("curve32a", "curve.crv"),
        "--n-max", "2", "--m", "1", "--j-cutoff", "2",
    )
    assert proc.returncode == 4


def test_exit_code_sanity_on_corrupt_convention():
    proc = run_cli(
        "kunneth", "--algebra", corpus_file("cusp", "algebra.alg"),
        "--n-max", "1", "--max-weight", "4", "--t-cutoff", "1",
        "--convention", "corrupt-b-drop-wrap", "--jobs", "1", "--format", "json",
    )
    assert proc.returncode == 5
    assert "failing cells" in proc.stderr


def test_kunneth_pass_small():
    proc = run_cli(
        "kunneth", "--algebra", corpus_file("cusp", "algebra.alg"),
        "--n-max", "1", "--max-weight", "5", "--t-cutoff", "1",
        "--jobs", "1", "--format", "json",
    )
    assert proc.returncode == 0


def test_cycles_reports_finding():
    proc = run_cli("cycles", "--i-max", "2", "--format", "json")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["z_class_nonzero"] is True
    assert obj["convention_found"] == "NO_CONVENTION_FOUND"
    assert obj["fallback_classes"]["2"]["dim"] >= 1


def test_tk_with_crosschecks():
    proc = run_cli(
        "tk", "--square", corpus_file("cusp", "square.sq"),
        "--n-max", "2", "--max-weight", "8",
        "--formula-check", "--nk0", "--format", "json",
    )
    assert proc.returncode == 0
    tables = json.loads(proc.stdout)
    tk_cells = tables[0]["cells"]
    assert tk_cells["0,1"] == 1 and tk_cells["1,1"] == 1
    assert tk_cells["2,5"] == 1 and tk_cells["2,7"] == 1


def test_pic_and_cdh_omega():
    proc = run_cli(
        "pic", "--square", corpus_file("t2t5", "square.sq"),
        "--poly-vars", "1", "--degree-cutoff", "4", "--format", "json",
    )
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["cells"]["1"] == 2
    proc = run_cli(
        "cdh-omega", "--square", corpus_file("cusp", "square.sq"),
        "--p", "1", "--q", "0", "--max-weight", "4", "--format", "json",
    )
    assert proc.returncode == 0


def test_curve_command():
    proc = run_cli("curve", "--curve", corpus_file("curve37a", "curve.crv"),
                   "--format", "json")
    obj = json.loads(proc.stdout)
    assert obj["discriminant"] == "37"
    torsion = {row["point"]: row["torsion"] for row in obj["points"]}
    assert torsion["(0, 0)"] is False and torsion["O"] is True


def test_cuspbundle_command():
    proc = run_cli(
        "cuspbundle", "--curve", corpus_file("curve37a", "curve.crv"),
        "--n-min", "-1", "--n-max", "4", "--m", "1", "--j-cutoff", "3",
        "--format", "json",
    )
    assert proc.returncode == 0
    tables = json.loads(proc.stdout)
    assert tables[0]["metadata"]["verdict"] == "all-zero"
    assert tables[1]["metadata"]["k0_plus"] == 6
    assert "discrepancy" in tables[1]["metadata"]["findings"]


def test_smoothness_command():
    proc = run_cli("smoothness", "--format", "json")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["passed"] is True
    rows = {row["name"]: row for row in obj["rows"]}
    assert rows["cusp"]["witness"] == [0, 1]
    assert rows["free1"]["witness"] is None


def test_byte_identical_reruns():
    args = (
        "hh", "--algebra", corpus_file("cusp", "algebra.alg"),
        "--n", "2", "--max-weight", "9", "--format", "json",
    )
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.stdout == second.stdout


def test_cache_dir_round_trip(tmp_path):
    cache = tmp_path / "cache"
    args = (
        "hh", "--algebra", corpus_file("cusp", "algebra.alg"),
        "--n", "2", "--max-weight", "8", "--format", "json",
    )
    cold = run_cli(*args, env={"KHH_CACHE_DIR": str(cache)})
    assert cold.returncode == 0
    assert list(cache.glob("*.json"))
    warm = run_cli(*args, env={"KHH_CACHE_DIR": str(cache)})
    assert warm.stdout == cold.stdout
