import json
import subprocess
import sys

import pytest

from canpencil.cli import main, parse_field
from canpencil.fields import FieldSpec


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


# -- field flag ---------------------------------------------------------------


def test_parse_field():
    assert parse_field("qq") == FieldSpec.rationals()
    assert parse_field("fp:101") == FieldSpec.prime_field(101)
    from canpencil.cli import CliError

    with pytest.raises(CliError):
        parse_field("fp:4")
    with pytest.raises(CliError):
        parse_field("gf:9")


# -- invariants ----------------------------------------------------------------


def test_invariants_example(capsys):
    code, doc = run_cli(capsys, "invariants", "--pg", "5", "--theta", "1")
    assert code == 0
    assert doc["K2"] == 15 and doc["chi"] == 6


def test_invariants_horikawa(capsys):
    code, doc = run_cli(capsys, "invariants", "--pg", "2", "--theta", "0")
    assert code == 0
    assert doc["K2"] == 2 and doc["chi"] == 3


def test_invariants_bad_pg(capsys):
    code, doc = run_cli(capsys, "invariants", "--pg", "1", "--theta", "0")
    assert code != 0
    assert "p_g >= 2" in doc["error"]


# -- degrees --------------------------------------------------------------------


def test_degrees(capsys):
    code, doc = run_cli(capsys, "degrees", "--pg", "7", "--theta", "0")
    assert code == 0
    assert doc["q_x"] == 14
    assert all(name.startswith("G_") for name in doc["forced_zero"])


# -- generate / census round trip --------------------------------------------------


def test_generate_roundtrip(tmp_path, capsys):
    out = tmp_path / "member.json"
    code, doc = run_cli(
        capsys, "generate", "--pg", "2", "--theta", "0", "--field", "fp:101",
        "--seed", "9", "--out", str(out),
    )
    assert code == 0
    assert out.exists()
    from canpencil.family import SurfaceEquations

    member = SurfaceEquations.from_json_dict(doc)
    assert member.bundle.pg == 2


def test_generate_bit_reproducible(capsys):
    args = ["generate", "--pg", "3", "--theta", "1", "--field", "qq", "--seed", "123"]
    code1 = main(args)
    out1 = capsys.readouterr().out
    code2 = main(args)
    out2 = capsys.readouterr().out
    assert code1 == code2 == 0
    assert out1 == out2


def test_generate_requires_seed(capsys):
    with pytest.raises(SystemExit):
        main(["generate", "--pg", "2", "--theta", "0", "--field", "qq"])


def test_census_subcommand(tmp_path, capsys):
    out = tmp_path / "member.json"
    main(["generate", "--pg", "2", "--theta", "0", "--field", "fp:11",
          "--seed", "1", "--out", str(out)])
    capsys.readouterr()
    code, doc = run_cli(capsys, "census", "--in", str(out))
    assert code == 0
    assert doc["prime_nodes"] == 11  # member prime wins
    assert doc["cone_singularities"] == []


def test_census_skip_sweep(tmp_path, capsys):
    out = tmp_path / "member.json"
    main(["generate", "--pg", "2", "--theta", "0", "--field", "fp:101",
          "--seed", "20260808", "--split-qy", "--out", str(out)])
    capsys.readouterr()
    code, doc = run_cli(capsys, "census", "--in", str(out), "--skip-sweep")
    assert code == 0
    assert doc["sweep_skipped"] is True
    assert doc["node_count"] == 2


def test_census_prime_conflict(tmp_path, capsys):
    out = tmp_path / "member.json"
    main(["generate", "--pg", "2", "--theta", "0", "--field", "fp:11",
          "--seed", "1", "--out", str(out)])
    capsys.readouterr()
    code, doc = run_cli(capsys, "census", "--in", str(out), "--prime", "101")
    assert code != 0
    assert "characteristics" in doc["error"]


def test_census_missing_file(capsys):
    code, doc = run_cli(capsys, "census", "--in", "/nonexistent/member.json")
    assert code != 0
    assert "error" in doc


# -- verify ---------------------------------------------------------------------------


def test_verify_ledger(capsys):
    code, doc = run_cli(capsys, "verify", "--seed", "5", "--trials", "3")
    assert code == 0
    assert doc["all_passed"]
    names = [c["name"] for c in doc["checks"]]
    assert "eq.S3S2->S6/kernel" in names
    assert len(names) >= 10
    assert names == sorted(names)


def test_verify_single_target(capsys):
    code, doc = run_cli(capsys, "verify", "examples", "--seed", "5")
    assert code == 0
    assert all(c["name"].startswith("examples/") for c in doc["checks"])


def test_verify_zero_trials_is_config_error(capsys):
    code, doc = run_cli(capsys, "verify", "--seed", "5", "--trials", "0")
    assert code == 2
    assert "trials" in doc["error"]


def test_verify_bit_reproducible(capsys):
    args = ["verify", "sigma2", "--seed", "7", "--trials", "4"]
    main(args)
    out1 = capsys.readouterr().out
    main(args)
    out2 = capsys.readouterr().out
    assert out1 == out2


# -- bidouble / feasibility / example ---------------------------------------------------


def test_bidouble_subcommand(capsys):
    code, doc = run_cli(capsys, "bidouble", "--pg", "5", "--theta", "0")
    assert code == 0
    assert doc["base"] == "F2"
    assert doc["K2"] == 14 and doc["chi"] == 6
    assert doc["matches_intersection_theory"]


def test_feasibility_subcommand(capsys):
    code, doc = run_cli(capsys, "feasibility", "--k2", "112", "--chi", "30", "--q", "0")
    assert code == 0
    assert doc["feasible_genera"] == [2]


def test_example_subcommand(capsys):
    code, doc = run_cli(capsys, "example")
    assert code == 0
    assert doc["all_passed"] and len(doc["examples"]) == 3


def test_example_single(capsys):
    code, doc = run_cli(capsys, "example", "--which", "1", "2", "12", "4")
    assert code == 0
    assert doc["examples"][0]["p_g"] == 4


def test_example_unknown(capsys):
    code, doc = run_cli(capsys, "example", "--which", "9", "9", "9", "9")
    assert code != 0


# -- module entry point -------------------------------------------------------------------


def test_python_dash_m_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "canpencil", "invariants", "--pg", "2", "--theta", "0"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    doc = json.loads(proc.stdout)
    assert doc["K2"] == 2
