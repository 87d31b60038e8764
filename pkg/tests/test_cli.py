import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from p2periods import cli
from p2periods.inversion import printed_tables
from p2periods.modular import QMPoly

from test_gw_potential import oracle_numbers

GOLDEN = Path(__file__).parent / "golden" / "invert_nmax3.json"
KEYS = {"command", "params", "data", "paper_anchors"}


def run(argv, capsys):
    code = cli.main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_json(argv, capsys):
    code, out, err = run(argv + ["--format", "json"], capsys)
    data = json.loads(out)
    assert set(data) == KEYS
    return code, data, err


def decode_qm(terms):
    return QMPoly({(2 * m["pi2"], m["E2"], m["E4"], m["E6"]):
                   Fraction(int(m["coeff"]["num"]), int(m["coeff"]["den"])) for m in terms}, "pi")


def test_gw(capsys):
    code, d, _ = run_json(["gw", "--dmax", "6"], capsys)
    assert code == 0
    assert d["data"]["N"] == ["1", "1", "12", "620", "87304", "26312976"]


def test_gw_trivial(capsys):
    assert run_json(["gw", "--dmax", "1"], capsys)[1]["data"]["N"] == ["1"]


def test_gw_against_oracle(capsys):
    d = run_json(["gw", "--dmax", "8"], capsys)[1]
    assert int(d["data"]["N"][-1]) == oracle_numbers(8)[-1]


def test_invert_nmax0(capsys):
    code, d, _ = run_json(["invert", "--nmax", "0"], capsys)
    assert code == 0
    lam0 = decode_qm(d["data"]["lambda"][0])
    Q0 = decode_qm(d["data"]["Q"][0])
    assert lam0 == QMPoly.mono(b=1).project_pi2()
    assert Q0 == (QMPoly.mono(b=3) - QMPoly.mono(c=2)).project_pi2()


def test_invert_nmax1_matches_display(capsys):
    d = run_json(["invert", "--nmax", "1"], capsys)[1]
    plam, pQ = printed_tables()
    assert decode_qm(d["data"]["lambda"][1]) == plam[1]
    assert decode_qm(d["data"]["Q"][1]) == pQ[1]


def test_invert_golden(capsys):
    code, d, _ = run_json(["invert", "--nmax", "3"], capsys)
    assert code == 0
    assert d == json.loads(GOLDEN.read_text())
    plam, pQ = printed_tables()
    assert decode_qm(d["data"]["Q"][3]) == pQ[3]


def test_invert_text_and_latex(capsys):
    code, out, _ = run(["invert", "--nmax", "1", "--format", "latex"], capsys)
    assert code == 0 and r"\lambda_{1} =" in out and r"\pi^{2}" in out
    code, out, _ = run(["invert", "--nmax", "1", "--format", "text"], capsys)
    assert code == 0 and "lambda_1 = " in out


def test_eisenstein(capsys):
    code, d, _ = run_json(["eisenstein", "--order", "4"], capsys)
    assert code == 0
    assert d["data"]["E4"] == ["1", "240", "2160", "6720"]
    assert d["data"]["Delta"][:2] == ["0", "1728"]


def test_taylor(capsys):
    code, d, _ = run_json(["taylor", "--nmax", "1"], capsys)
    assert code == 0
    assert d["data"]["Z3"][0] == {"x_exp": 1, "tau_terms": {"0": [
        {"coeff": {"num": "1", "den": "1"}, "iota": 0, "E2": 0, "E4": 0, "E6": 0}]}}
    assert d["data"]["Z3"][1]["x_exp"] == -1


@pytest.mark.parametrize("suite", ["wdvv", "monodromy", "thetas", "symsq", "connection"])
def test_verify_suites(suite, capsys):
    code, d, _ = run_json(["verify", "--suite", suite], capsys)
    assert code == 0
    (s,) = d["data"]["suites"]
    assert s["ok"] and all(c["status"] == "pass" for c in s["checks"])
    assert all(c["anchor"] for c in s["checks"])


def test_verify_roundtrip(capsys):
    code, d, _ = run_json(["verify", "--suite", "roundtrip", "--precision", "128"], capsys)
    assert code == 0


def test_verify_failure_names_check(capsys, monkeypatch):
    from p2periods import suites

    def failing(cfg):
        return suites.SuiteResult("wdvv", [suites.Check("first", True, "a"),
                                           suites.Check("broken", False, "b")])
    monkeypatch.setitem(suites.SUITES, "wdvv", failing)
    code, out, err = run(["verify", "--suite", "wdvv", "--format", "text"], capsys)
    assert code == 1
    assert "broken" in err


def test_roundtrip(capsys):
    code, d, _ = run_json(["roundtrip", "--tau", "2i"], capsys)
    assert code == 0 and d["data"]["ok"]
    code, _, err = run(["roundtrip", "--tau", "1i"], capsys)
    assert code == 1 and "hyp2f1" in err
    assert run(["roundtrip", "--tau", "1i", "--method", "hyp2f1"], capsys)[0] == 0


@pytest.mark.parametrize("argv", [
    ["gw", "--dmax", "0"],
    ["gw", "--dmax", "x"],
    ["roundtrip", "--precision", "32"],
    ["roundtrip", "--tau", "-1i"],
    ["verify", "--suite", "nope"],
    ["frobnicate"],
    [],
])
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "p2periods", "gw", "--dmax", "3", "--format", "text"],
                         capture_output=True, text=True, check=True).stdout
    assert out.split() == ["N_1", "=", "1", "N_2", "=", "1", "N_3", "=", "12"]
