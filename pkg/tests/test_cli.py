import json
from pathlib import Path

import pytest

from covertwist.cli import main
from covertwist.multipoly import parse

SPECS = Path(__file__).resolve().parent.parent / "specs"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_ok(capsys):
    code, out, _ = run(capsys, "verify", "--spec", str(SPECS / "cyclic_n2_m3.json"))
    assert code == 0
    assert "overall: PASS" in out


def test_verify_layered_shows_discrepancy(capsys):
    code, out, _ = run(capsys, "verify", "--spec", str(SPECS / "layered_2_4.json"))
    assert code == 0
    assert "discrepancies with the closed-form exponents" in out
    assert "c = 3" in out


def test_verify_structured(capsys):
    code, out, _ = run(capsys, "verify", "--spec", str(SPECS / "dihedral_n3.json"), "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["overall"] == "pass"


def test_bad_chain_exit_2(capsys):
    code, _, err = run(capsys, "verify", "--spec", str(SPECS / "bad_chain.json"))
    assert code == 2
    assert "divisibility" in err


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, err = run(capsys, "build", "--spec", str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in err


def test_build_out_dir(capsys, tmp_path):
    code, out, _ = run(capsys, "build", "--spec", str(SPECS / "cyclic_n3_m2.json"), "--out", str(tmp_path / "o"))
    assert code == 0
    data = json.loads((tmp_path / "o" / "build.json").read_text())
    assert [parse(e) for e in data["twist"]["equations"]] == [parse("(x[1][1]^3 + 1)*Z[1]^3 - x^3 - 1")]
    assert (tmp_path / "o" / "build.txt").read_text().startswith("spec:")


def test_build_m1(capsys):
    code, out, _ = run(capsys, "build", "--spec", str(SPECS / "cyclic_n2_m3.json"), "--m", "1")
    assert code == 0 and "m = 1 gives no twist" in out


@pytest.mark.parametrize("name, m, expected", [("cyclic_n2_m3.json", None, 3), ("cm_elliptic_m5.json", None, 10),
                                               ("cm_elliptic_m5.json", 2, 4), ("dihedral_n3.json", None, 4)])
def test_rank(capsys, name, m, expected):
    argv = ["rank", "--spec", str(SPECS / name), "--format", "structured"]
    if m is not None:
        argv += ["--m", str(m)]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and json.loads(out)["rank"] == expected


def test_rank_lower_bound_text(capsys):
    code, out, _ = run(capsys, "rank", "--spec", str(SPECS / "dihedral_n3.json"))
    assert "lower bound" in out


def test_rank_needs_descriptor(capsys):
    code, _, err = run(capsys, "rank", "--spec", str(SPECS / "layered_2_4.json"))
    assert code == 2 and "descriptor" in err


def test_ffcheck(capsys):
    code, out, _ = run(capsys, "ffcheck", "--spec", str(SPECS / "cyclic_n3_m2.json"), "--primes", "7,13",
                       "--trials", "20")
    assert code == 0 and out.strip().endswith("pass")


def test_ffcheck_bad_prime(capsys):
    code, _, err = run(capsys, "ffcheck", "--spec", str(SPECS / "cyclic_n2_m3.json"), "--primes", "2")
    assert code == 2


def test_ffcheck_zero_trials(capsys):
    code, out, err = run(capsys, "ffcheck", "--spec", str(SPECS / "cyclic_n2_m3.json"), "--trials", "0")
    assert code == 0 and "no samples" in err
